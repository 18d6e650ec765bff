#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scottrank/error.hpp"
#include "scottrank/linorder.hpp"

namespace scottrank {

enum class RnMode { kTrivial, kGreedy };

inline std::string rn_mode_name(RnMode m) { return m == RnMode::kTrivial ? "trivial" : "greedy"; }

// The sets R_n and, in greedy mode, the sequences G(alpha), built lazily from
// the order's enumeration alpha_0, alpha_1, ...
class RnSystem {
 public:
  static constexpr std::uint64_t kDefaultBudget = 10000;

  static std::shared_ptr<const RnSystem> make(OrderPtr order, RnMode mode,
                                              std::uint64_t budget = kDefaultBudget) {
    return std::shared_ptr<const RnSystem>(new RnSystem(std::move(order), mode, budget));
  }

  RnSystem(const RnSystem&) = delete;
  RnSystem& operator=(const RnSystem&) = delete;

  RnMode mode() const { return mode_; }
  const OrderPtr& order() const { return order_; }
  std::uint64_t budget() const { return budget_; }

  bool member(std::uint64_t n, const OrderElem& a) const {
    if (n == 0) fail(ErrorCode::kPrecondition, "R_n is indexed from 1");
    order_->check(a);
    if (mode_ == RnMode::kTrivial) return true;
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return member_rec(n, order_->index_of(a));
  }

  // least n with a in R_n
  std::uint64_t level(const OrderElem& a) const {
    order_->check(a);
    if (mode_ == RnMode::kTrivial) return 1;
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return level_rec(order_->index_of(a));
  }

  // beta_n, the element added outright at stage n+1
  std::optional<OrderElem> beta(std::uint64_t n) const {
    if (n == 0) fail(ErrorCode::kPrecondition, "beta_n is indexed from 1");
    if (!order_->has_index(n - 1)) return std::nullopt;
    return order_->at(n - 1);
  }

  // least element of R_n strictly above a
  std::optional<OrderElem> least_above(std::uint64_t n, const OrderElem& a) const {
    if (n == 0) fail(ErrorCode::kPrecondition, "R_n is indexed from 1");
    order_->check(a);
    if (mode_ == RnMode::kTrivial) return order_->succ(a);
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return least_above_rec(n, order_->index_of(a));
  }

  // least element of R_n at or above a
  std::optional<OrderElem> least_at_least(std::uint64_t n, const OrderElem& a) const {
    if (member(n, a)) return a;
    return least_above(n, a);
  }

  std::vector<OrderElem> g_seq(const OrderElem& a, std::uint64_t k) const {
    require_greedy();
    order_->check(a);
    std::lock_guard<std::recursive_mutex> lock(mu_);
    const std::uint64_t i = order_->index_of(a);
    GSet& g = gset(i);
    while (!g.closed && g.picks.size() < k) extend_pick(i);
    std::vector<OrderElem> all;
    for (auto k : g.seeds) all.push_back(order_->at(k));
    all.insert(all.end(), g.picks.begin(), g.picks.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    if (all.size() > k) all.resize(k);
    return all;
  }

  bool g_contains(const OrderElem& alpha, const OrderElem& a) const {
    require_greedy();
    order_->check(alpha);
    order_->check(a);
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return g_contains_rec(order_->index_of(alpha), a);
  }

  // true when G(alpha) is known to be finite and fully listed by g_seq
  bool g_finite(const OrderElem& alpha) const {
    require_greedy();
    std::lock_guard<std::recursive_mutex> lock(mu_);
    const std::uint64_t i = order_->index_of(alpha);
    GSet& g = gset(i);
    if (!order_->is_limit(alpha)) {
      while (!g.closed) extend_pick(i);
    }
    return g.closed;
  }

 private:
  struct GSet {
    std::vector<std::uint64_t> seeds;  // enumeration indices, sorted by the order
    std::vector<OrderElem> picks;      // increasing
    bool closed = false;
    std::optional<OrderElem> lower;
    std::uint64_t scan = 0;
  };

  RnSystem(OrderPtr order, RnMode mode, std::uint64_t budget)
      : order_(std::move(order)), mode_(mode), budget_(budget) {}

  void require_greedy() const {
    if (mode_ != RnMode::kGreedy) fail(ErrorCode::kPrecondition, "G is only defined in greedy mode");
  }

  [[noreturn]] void timeout(const std::string& what) const {
    fail(ErrorCode::kR5Timeout, what + " exceeded search budget " + std::to_string(budget_));
  }

  // -- R_1 -------------------------------------------------------------------

  void extend_r1_to(std::uint64_t i) const {
    while (r1_flags_.size() <= i) {
      const std::uint64_t k = r1_flags_.size();
      const OrderElem x = order_->at(k);
      const bool pick = !r1_last_ || x > *r1_last_;
      r1_flags_.push_back(pick);
      if (pick) {
        r1_last_ = x;
        r1_picks_.push_back(k);
      }
    }
  }

  bool r1_member(std::uint64_t i) const {
    if (auto m = order_->max_elem()) return order_->at(i) == *m;
    extend_r1_to(i);
    return r1_flags_[i];
  }

  std::optional<OrderElem> r1_least_above(const OrderElem& a) const {
    if (auto m = order_->max_elem()) {
      if (a < *m) return m;
      return std::nullopt;
    }
    auto it = std::upper_bound(r1_picks_.begin(), r1_picks_.end(), a,
                               [&](const OrderElem& x, std::uint64_t k) { return x < order_->at(k); });
    if (it != r1_picks_.end()) return order_->at(*it);
    const std::uint64_t start = r1_flags_.size();
    while (r1_flags_.size() < start + budget_) {
      if (!order_->has_index(r1_flags_.size())) return std::nullopt;
      extend_r1_to(r1_flags_.size());
      if (r1_flags_.back() && *r1_last_ > a) return r1_last_;
    }
    timeout("R_1 search above " + a.to_string());
  }

  // -- G ---------------------------------------------------------------------

  GSet& gset(std::uint64_t j) const {
    while (g_.size() <= j) build(g_.size());
    return g_[j];
  }

  void cover(const OrderElem& x, const OrderElem& alpha) const {
    auto [it, fresh] = cover_.try_emplace(x, alpha);
    if (!fresh && it->second < alpha) it->second = alpha;
  }

  bool seed_of(const GSet& g, const OrderElem& a) const {
    return std::binary_search(g.seeds.begin(), g.seeds.end(), a, SeedLess{order_.get()});
  }

  struct SeedLess {
    const LinOrder* L;
    bool operator()(std::uint64_t x, std::uint64_t y) const { return L->at(x) < L->at(y); }
    bool operator()(std::uint64_t x, const OrderElem& y) const { return L->at(x) < y; }
    bool operator()(const OrderElem& x, std::uint64_t y) const { return x < L->at(y); }
  };

  // seeds of G(alpha_j): members below alpha_j of earlier G(gamma) with gamma > alpha_j
  void build(std::uint64_t j) const {
    const OrderElem alpha = order_->at(j);
    GSet g;
    if (order_->is_least(alpha)) {
      g.closed = true;
      g_.push_back(std::move(g));
      return;
    }
    for (auto it = open_.begin(); it != open_.end();) {
      GSet& h = g_[*it];
      if (order_->at(*it) > alpha) {
        while (!h.closed && (h.picks.empty() || h.picks.back() < alpha)) extend_pick(*it);
      }
      it = h.closed ? open_.erase(it) : std::next(it);
    }
    std::optional<OrderElem> below_max;
    for (std::uint64_t i = 0; i < j; ++i) {
      const OrderElem gamma = order_->at(i);
      if (gamma < alpha && (!below_max || gamma > *below_max)) below_max = gamma;
    }
    std::vector<std::uint64_t> seeds;
    for (auto it = cover_.begin(); it != cover_.end() && it->first < alpha; ++it) {
      if (alpha < it->second) seeds.push_back(order_->index_of(it->first));
    }
    const auto p = order_->pred(alpha);
    const bool p_seed = p && std::binary_search(seeds.begin(), seeds.end(), *p, SeedLess{order_.get()});
    if (p_seed) {
      g.closed = true;
    } else if (p && order_->index_of(*p) < j) {
      seeds.insert(std::upper_bound(seeds.begin(), seeds.end(), *p, SeedLess{order_.get()}),
                   order_->index_of(*p));
      g.closed = true;
    } else {
      g.lower = below_max;
      g.scan = j + 1;
    }
    g.seeds = std::move(seeds);
    for (auto k : g.seeds) cover(order_->at(k), alpha);
    if (!g.closed) open_.push_back(j);
    g_.push_back(std::move(g));
  }

  // one more greedy pick for G(alpha_j); sets closed when none remain
  void extend_pick(std::uint64_t j) const {
    const OrderElem alpha = order_->at(j);
    GSet& g = g_[j];
    if (g.closed) return;
    const std::uint64_t stop = g.scan + budget_;
    for (std::uint64_t k = g.scan; k < stop; ++k) {
      if (!order_->has_index(k)) {
        g.closed = true;
        g.scan = k;
        return;
      }
      const OrderElem x = order_->at(k);
      if (!(x < alpha)) continue;
      if (g.lower && x < *g.lower) continue;
      if (!g.picks.empty() && !(x > g.picks.back())) continue;
      g.picks.push_back(x);
      cover(x, alpha);
      g.scan = k + 1;
      if (order_->succ(x) == alpha) g.closed = true;
      return;
    }
    timeout("G(" + alpha.to_string() + ") pick");
  }

  bool g_contains_rec(std::uint64_t j, const OrderElem& a) const {
    GSet& g = gset(j);
    if (!(a < order_->at(j))) return false;
    if (seed_of(g, a)) return true;
    while (!g.closed && (g.picks.empty() || g.picks.back() < a)) extend_pick(j);
    return std::binary_search(g.picks.begin(), g.picks.end(), a);
  }

  // least element of G(alpha_j) strictly above a
  std::optional<OrderElem> g_least_above(std::uint64_t j, const OrderElem& a) const {
    GSet& g = gset(j);
    std::optional<OrderElem> best;
    auto s = std::upper_bound(g.seeds.begin(), g.seeds.end(), a, SeedLess{order_.get()});
    if (s != g.seeds.end()) best = order_->at(*s);
    while (!g.closed && (g.picks.empty() || !(g.picks.back() > a))) extend_pick(j);
    auto p = std::upper_bound(g.picks.begin(), g.picks.end(), a);
    if (p != g.picks.end() && (!best || *p < *best)) best = *p;
    return best;
  }

  // -- R_n -------------------------------------------------------------------

  struct ElemState {
    std::uint64_t level = 0;  // 0 until known
    std::vector<std::optional<OrderElem>> above;  // above[k] = least of R_{k+1} above
  };

  ElemState& state(std::uint64_t i) const { return elems_[i]; }

  // least of R_n above a, from the same for R_{n-1}
  std::optional<OrderElem> step_above(std::uint64_t n, const OrderElem& a,
                                      const std::optional<OrderElem>& prev) const {
    std::optional<OrderElem> best;
    if (auto b = beta(n - 1); b && *b > a) best = b;
    if (prev) {
      if (!best || *prev < *best) best = prev;
      if (auto g = g_least_above(order_->index_of(*prev), a)) {
        if (*g < *best) best = g;
      }
    }
    return best;
  }

  std::uint64_t level_rec(std::uint64_t i) const {
    ElemState& st = state(i);
    if (st.level) return st.level;
    if (r1_member(i)) return st.level = 1;
    const OrderElem a = order_->at(i);
    std::optional<OrderElem> c = r1_least_above(a);
    for (std::uint64_t n = 2;; ++n) {
      if (auto b = beta(n - 1); b && *b == a) return st.level = n;
      if (c && g_contains_rec(order_->index_of(*c), a)) return st.level = n;
      c = step_above(n, a, c);
    }
  }

  bool member_rec(std::uint64_t n, std::uint64_t i) const { return n >= level_rec(i); }

  std::optional<OrderElem> least_above_rec(std::uint64_t n, std::uint64_t i) const {
    const OrderElem a = order_->at(i);
    ElemState& st = state(i);
    if (st.above.empty()) st.above.push_back(r1_least_above(a));
    while (st.above.size() < n) {
      auto next = step_above(st.above.size() + 1, a, st.above.back());
      st.above.push_back(std::move(next));
    }
    return st.above[n - 1];
  }

  OrderPtr order_;
  RnMode mode_;
  std::uint64_t budget_;

  mutable std::recursive_mutex mu_;
  mutable std::vector<bool> r1_flags_;
  mutable std::vector<std::uint64_t> r1_picks_;
  mutable std::optional<OrderElem> r1_last_;
  mutable std::deque<GSet> g_;
  mutable std::map<std::uint64_t, ElemState> elems_;
  mutable std::map<OrderElem, OrderElem> cover_;  // x -> largest gamma with x in G(gamma)
  mutable std::vector<std::uint64_t> open_;       // G sets not yet closed
};

using RnPtr = std::shared_ptr<const RnSystem>;

}  // namespace scottrank
