#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scottrank/error.hpp"

namespace scottrank {

using Elems = std::vector<std::uint32_t>;

struct FinRelation {
  std::string name;
  std::size_t arity = 0;
  std::set<Elems> tuples;
};

// Finite relational structure with named constants.
class FinStruct {
 public:
  static constexpr std::size_t kMaxUniverse = 8;

  explicit FinStruct(std::size_t size) : size_(size) {
    if (size == 0 || size > kMaxUniverse) {
      fail(ErrorCode::kInvalidSpec, "universe size must be in 1.." + std::to_string(kMaxUniverse));
    }
  }

  std::size_t size() const { return size_; }
  const std::vector<FinRelation>& relations() const { return relations_; }
  const std::vector<std::pair<std::string, std::uint32_t>>& constants() const { return constants_; }

  FinStruct& add_relation(std::string name, std::size_t arity, const std::vector<Elems>& tuples) {
    if (arity == 0) fail(ErrorCode::kInvalidSpec, "relation " + name + " has arity 0");
    FinRelation r{std::move(name), arity, {}};
    for (const Elems& t : tuples) {
      if (t.size() != arity) fail(ErrorCode::kInvalidSpec, "tuple of wrong arity in " + r.name);
      for (std::uint32_t x : t) check_elem(x);
      r.tuples.insert(t);
    }
    relations_.push_back(std::move(r));
    return *this;
  }

  FinStruct& add_constant(std::string name, std::uint32_t x) {
    check_elem(x);
    constants_.emplace_back(std::move(name), x);
    return *this;
  }

  void check_elem(std::uint32_t x) const {
    if (x >= size_) fail(ErrorCode::kInvalidSpec, "element " + std::to_string(x) + " outside universe");
  }

  bool holds(std::size_t rel, const Elems& t) const { return relations_.at(rel).tuples.count(t) > 0; }

  // equality pattern, then every relation on every index tuple
  std::vector<bool> atomic_type(const Elems& t) const {
    std::vector<bool> out;
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (std::size_t j = i + 1; j < t.size(); ++j) out.push_back(t[i] == t[j]);
    }
    Elems args;
    for (std::size_t r = 0; r < relations_.size(); ++r) {
      const std::size_t ar = relations_[r].arity;
      std::vector<std::size_t> idx(ar, 0);
      if (t.empty()) continue;
      args.assign(ar, 0);
      while (true) {
        for (std::size_t i = 0; i < ar; ++i) args[i] = t[idx[i]];
        out.push_back(holds(r, args));
        std::size_t p = 0;
        while (p < ar && ++idx[p] == t.size()) idx[p++] = 0;
        if (p == ar) break;
      }
    }
    return out;
  }

  Elems constant_elems() const {
    Elems out;
    for (const auto& [name, x] : constants_) out.push_back(x);
    return out;
  }

  // elements not named by a constant
  Elems free_elems() const {
    std::vector<bool> named(size_, false);
    for (const auto& [name, x] : constants_) named[x] = true;
    Elems out;
    for (std::uint32_t x = 0; x < size_; ++x) {
      if (!named[x]) out.push_back(x);
    }
    return out;
  }

  std::vector<Elems> automorphisms() const {
    std::vector<Elems> out;
    Elems p(size_);
    std::iota(p.begin(), p.end(), 0);
    do {
      bool ok = true;
      for (const auto& [name, x] : constants_) ok = ok && p[x] == x;
      for (std::size_t r = 0; ok && r < relations_.size(); ++r) {
        for (const Elems& t : relations_[r].tuples) {
          Elems m(t.size());
          for (std::size_t i = 0; i < t.size(); ++i) m[i] = p[t[i]];
          if (!holds(r, m)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }

  bool same_orbit(const Elems& xs, const Elems& ys) const {
    if (xs.size() != ys.size()) return false;
    for (const Elems& p : automorphisms()) {
      bool ok = true;
      for (std::size_t i = 0; ok && i < xs.size(); ++i) ok = p[xs[i]] == ys[i];
      if (ok) return true;
    }
    return false;
  }

 private:
  std::size_t size_;
  std::vector<FinRelation> relations_;
  std::vector<std::pair<std::string, std::uint32_t>> constants_;
};

// Back-and-forth relations on one finite structure, memoized per instance.
// Tuples are prefixed by the constants and reduced to their injective core;
// extensions add fresh elements.
class BackForth {
 public:
  explicit BackForth(const FinStruct& a) : a_(a) {}

  const FinStruct& structure() const { return a_; }

  // ys d <=_beta xs c style recursion with xs <=_0 ys as atomic type equality
  bool leq(const Elems& xs, const Elems& ys, std::uint32_t alpha) {
    if (xs.size() != ys.size()) return false;
    Elems a = with_constants(xs), b = with_constants(ys);
    if (a_.atomic_type(a) != a_.atomic_type(b)) return false;
    return leq_core(core(a), core(b), alpha);
  }

  bool sym(const Elems& xs, const Elems& ys, std::uint32_t alpha) {
    return leq(xs, ys, alpha) && leq(ys, xs, alpha);
  }

  bool sym_direct(const Elems& xs, const Elems& ys, std::uint32_t alpha) {
    if (xs.size() != ys.size()) return false;
    Elems a = with_constants(xs), b = with_constants(ys);
    if (a_.atomic_type(a) != a_.atomic_type(b)) return false;
    a = core(a);
    b = core(b);
    return sym_core(a, b, alpha);
  }

  // some extension b of xs has, for beta < alpha, a', b' with
  // xs b <=_beta a' b' and a' not <=_alpha xs
  bool free(const Elems& xs, std::uint32_t alpha) {
    Elems a = core(with_constants(xs));
    const std::size_t base = a_.constants().empty() ? 0 : core(a_.constant_elems()).size();
    const Elems prefix(a.begin(), a.begin() + static_cast<long>(base));
    const std::size_t k = a.size();
    const Elems rest = complement(a);
    bool all_b = true;
    for_each_perm(rest, rest.size(), [&](const Elems& bext) {
      Elems ab = a;
      ab.insert(ab.end(), bext.begin(), bext.end());
      bool found = false;
      const Elems pool = complement(prefix);
      for_each_perm(pool, pool.size(), [&](const Elems& t) {
        Elems a2 = prefix, ab2 = prefix;
        a2.insert(a2.end(), t.begin(), t.begin() + static_cast<long>(k - base));
        ab2.insert(ab2.end(), t.begin(), t.end());
        if (alpha > 0 && !leq_core(ab, ab2, alpha - 1)) return true;
        if (!leq_core(a2, a, alpha)) {
          found = true;
          return false;
        }
        return true;
      });
      if (!found) all_b = false;
      return found;
    });
    return all_b;
  }

  // all injective tuples of non-constant elements
  std::vector<Elems> tuples() const {
    std::vector<Elems> out;
    const Elems pool = a_.free_elems();
    for (std::size_t len = 0; len <= pool.size(); ++len) {
      for_each_perm(pool, len, [&](const Elems& t) {
        out.push_back(t);
        return true;
      });
    }
    return out;
  }

  std::uint32_t scott_rank() {
    const auto ts = tuples();
    const std::uint32_t cap = static_cast<std::uint32_t>(a_.size() + 3);
    for (std::uint32_t alpha = 0; alpha < cap; ++alpha) {
      bool any = false;
      for (const Elems& t : ts) {
        if (free(t, alpha)) {
          any = true;
          break;
        }
      }
      if (!any) return alpha;
    }
    fail(ErrorCode::kBudgetExceeded, "rank search did not stabilize");
  }

  // visits the injective length-len tuples over pool; f returns false to stop
  template <typename F>
  static bool for_each_perm(const Elems& pool, std::size_t len, F&& f) {
    Elems cur;
    std::vector<bool> used(pool.size(), false);
    return perm_rec(pool, len, cur, used, f);
  }

 private:
  template <typename F>
  static bool perm_rec(const Elems& pool, std::size_t len, Elems& cur, std::vector<bool>& used, F& f) {
    if (cur.size() == len) return f(static_cast<const Elems&>(cur));
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      cur.push_back(pool[i]);
      const bool go = perm_rec(pool, len, cur, used, f);
      cur.pop_back();
      used[i] = false;
      if (!go) return false;
    }
    return true;
  }

  Elems with_constants(const Elems& xs) const {
    for (std::uint32_t x : xs) a_.check_elem(x);
    Elems out = a_.constant_elems();
    out.insert(out.end(), xs.begin(), xs.end());
    return out;
  }

  static Elems core(const Elems& t) {
    Elems out;
    for (std::uint32_t x : t) {
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
    return out;
  }

  Elems complement(const Elems& t) const {
    Elems out;
    for (std::uint32_t x = 0; x < a_.size(); ++x) {
      if (std::find(t.begin(), t.end(), x) == t.end()) out.push_back(x);
    }
    return out;
  }

  static std::uint64_t encode(const Elems& t) {
    std::uint64_t k = 0;
    for (std::uint32_t x : t) k = (k << 4) | (x + 1);
    return k;
  }

  const std::vector<bool>& type_of(const Elems& t) {
    auto [it, fresh] = types_.try_emplace(encode(t));
    if (fresh) it->second = a_.atomic_type(t);
    return it->second;
  }

  // injective a, b; full extensions suffice by closure under subtuples
  bool leq_core(const Elems& a, const Elems& b, std::uint32_t alpha) {
    if (a.size() != b.size()) return false;
    if (type_of(a) != type_of(b)) return false;
    if (alpha == 0 || a.size() == a_.size()) return true;
    const std::uint64_t key = (encode(a) << 32) | encode(b);
    if (leq_memo_.size() <= alpha) leq_memo_.resize(alpha + 1);
    if (auto it = leq_memo_[alpha].find(key); it != leq_memo_[alpha].end()) return it->second;
    const Elems ra = complement(a), rb = complement(b);
    bool ok = true;
    for (std::uint32_t beta = 0; ok && beta < alpha; ++beta) {
      for_each_perm(rb, rb.size(), [&](const Elems& d) {
        Elems bd = b;
        bd.insert(bd.end(), d.begin(), d.end());
        bool found = false;
        for_each_perm(ra, ra.size(), [&](const Elems& c) {
          Elems ac = a;
          ac.insert(ac.end(), c.begin(), c.end());
          found = leq_core(bd, ac, beta);
          return !found;
        });
        ok = found;
        return ok;
      });
    }
    leq_memo_[alpha][key] = ok;
    return ok;
  }

  bool sym_core(const Elems& a, const Elems& b, std::uint32_t alpha) {
    if (type_of(a) != type_of(b)) return false;
    if (alpha == 0 || a.size() == a_.size()) return true;
    const Elems ra = complement(a), rb = complement(b);
    for (std::uint32_t beta = 0; beta < alpha; ++beta) {
      for (int side = 0; side < 2; ++side) {
        const Elems& x = side == 0 ? a : b;
        const Elems& y = side == 0 ? b : a;
        const Elems& rx = side == 0 ? ra : rb;
        const Elems& ry = side == 0 ? rb : ra;
        bool ok = true;
        for_each_perm(rx, rx.size(), [&](const Elems& d) {
          Elems xd = x;
          xd.insert(xd.end(), d.begin(), d.end());
          bool found = false;
          for_each_perm(ry, ry.size(), [&](const Elems& c) {
            Elems yc = y;
            yc.insert(yc.end(), c.begin(), c.end());
            found = sym_core(xd, yc, beta);
            return !found;
          });
          ok = found;
          return ok;
        });
        if (!ok) return false;
      }
    }
    return true;
  }

  const FinStruct& a_;
  std::unordered_map<std::uint64_t, std::vector<bool>> types_;
  std::vector<std::unordered_map<std::uint64_t, bool>> leq_memo_;
};

inline bool leq_alpha(const FinStruct& a, const Elems& xs, const Elems& ys, std::uint32_t alpha) {
  return BackForth(a).leq(xs, ys, alpha);
}

inline bool sym_alpha(const FinStruct& a, const Elems& xs, const Elems& ys, std::uint32_t alpha) {
  return BackForth(a).sym_direct(xs, ys, alpha);
}

inline bool alpha_free(const FinStruct& a, const Elems& xs, std::uint32_t alpha) {
  return BackForth(a).free(xs, alpha);
}

inline std::uint32_t scott_rank_finite(const FinStruct& a, std::size_t budget = 6) {
  if (a.size() > budget) {
    fail(ErrorCode::kBudgetExceeded,
         "universe of size " + std::to_string(a.size()) + " over budget " + std::to_string(budget));
  }
  return BackForth(a).scott_rank();
}

}  // namespace scottrank
