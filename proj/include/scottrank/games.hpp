#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "scottrank/amalgam.hpp"
#include "scottrank/error.hpp"
#include "scottrank/kstruct.hpp"
#include "scottrank/limitgen.hpp"

namespace scottrank {

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

// x ~_alpha y iff E(x,y) >= min((rho(x),0), (alpha,0))
inline bool sim_alpha(const KStruct& s, NodeId x, NodeId y, const OrderElem& alpha) {
  s.order().check(alpha);
  if (!s.contains(x) || !s.contains(y)) fail(ErrorCode::kUnknownNode, "node outside structure");
  if (x == y) return true;
  if (s.is_root(x) || s.is_root(y) || !s.between(x, y)) return false;
  return s.e(x, y).level() >= emin(EVal::pair(s.rho(x), 0), EVal::pair(alpha, 0));
}

inline bool sim_alpha(const Approx& a, NodeId x, NodeId y, const OrderElem& alpha) {
  return sim_alpha(a.base, x, y, alpha);
}

// closes under P, then atomic equivalence with colors and pointwise ~_alpha
inline bool sim_tuple(const Approx& a, const Tuple& xs, const Tuple& ys, const OrderElem& alpha) {
  if (xs.size() != ys.size()) return false;
  auto c = close_paired(a.base, xs, ys);
  if (!c || !atomic_equiv(a.base, c->xs, c->ys, &a.colors)) return false;
  for (std::size_t i = 0; i < c->xs.size(); ++i) {
    if (!sim_alpha(a.base, c->xs[i], c->ys[i], alpha)) return false;
  }
  return true;
}

enum class Outcome : std::uint8_t { kDefenderSurvived = 0, kChallengerWon = 1 };

struct GameRound {
  int side = 0;
  NodeId challenge = kNoNode;
  NodeId response = kNoNode;
  EVal level;
  std::uint32_t depth = 0;
  std::string note;
};

struct GameTranscript {
  std::vector<GameRound> rounds;
  Outcome outcome = Outcome::kDefenderSurvived;
  std::uint32_t won_at = 0;
  Tuple xs;
  Tuple ys;
};

struct GameResult {
  Approx a;
  GameTranscript t;
};

namespace detail {

inline std::uint64_t max_eps(const KStruct& s, const Tuple& xs) {
  std::uint64_t m = 0;
  for (NodeId x : xs) {
    for (NodeId y : s.path(x)) m = std::max(m, s.eps(y));
  }
  return m;
}

// a random node to challenge with: existing, a fresh isolated child, or a
// fresh sibling with a random E value
inline std::pair<Approx, NodeId> pick_challenge(Approx a, const Tuple& side, std::mt19937_64& rng) {
  auto uniform = [&](std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng); };
  const KStruct& s = a.base;
  const auto kind = uniform(3);
  if (kind == 0 && s.size() > 1) return {std::move(a), static_cast<NodeId>(1 + uniform(s.size() - 1))};
  std::vector<NodeId> anchors{kRoot};
  for (NodeId x : side) anchors.push_back(x);
  const NodeId parent = anchors[uniform(anchors.size())];
  std::vector<OrderElem> labels;
  for (const auto& l : a.order().prefix(6)) {
    if (s.is_root(parent) || l < s.rho(parent)) labels.push_back(l);
  }
  if (kind == 2 && !s.is_root(parent)) {
    const OrderElem& rho = s.rho(parent);
    std::vector<OrderElem> below;
    for (const auto& l : a.order().prefix(6)) {
      if (l < rho && a.rn().member(s.depth(parent), l)) below.push_back(l);
    }
    if (!below.empty()) {
      const EVal t = EVal::pair(below[uniform(below.size())], uniform(4));
      try {
        auto r = realize_sibling(a, parent, t);
        return {std::move(r.a), r.node};
      } catch (const Error&) {
      }
    }
  }
  if (labels.empty()) return {std::move(a), s.size() > 1 ? static_cast<NodeId>(1 + uniform(s.size() - 1)) : kRoot};
  auto r = realize_isolated(a, parent, labels[uniform(labels.size())], uniform(3));
  return {std::move(r.a), r.node};
}

}  // namespace detail

// Seeded challenger against the tuple-extension defender, one round per level.
inline GameResult defender_game(Approx a, const Tuple& xs, const Tuple& ys, const std::vector<OrderElem>& levels,
                                std::uint64_t seed) {
  const LinOrder& L = a.order();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    L.check(levels[i]);
    if (!L.in_wf_part(levels[i])) fail(ErrorCode::kBetaIllFounded, "level " + levels[i].to_string());
    if (i > 0 && !(levels[i] < levels[i - 1])) fail(ErrorCode::kPrecondition, "levels must strictly decrease");
  }
  auto closed = close_paired(a.base, xs, ys);
  if (!closed) fail(ErrorCode::kPrecondition, "tuples have different depth patterns");
  if (!levels.empty()) {
    auto up = L.succ(levels.front());
    if (!up || !sim_tuple(a, xs, ys, *up)) {
      fail(ErrorCode::kPrecondition, "tuples are not similar above level " + levels.front().to_string());
    }
  }
  GameTranscript t;
  Tuple cx = closed->xs, cy = closed->ys;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const OrderElem& beta = levels[i];
    const int side = static_cast<int>(rng() % 2);
    auto [next, v] = detail::pick_challenge(std::move(a), side == 0 ? cx : cy, rng);
    a = std::move(next);
    GameRound round{side, v, kNoNode, EVal::pair(beta, 0), static_cast<std::uint32_t>(i + 1), ""};
    if (v == kRoot) {
      round.response = kRoot;
      round.note = "root";
    } else if (cx == cy) {
      for (NodeId p : a.base.path(v)) {
        if (std::find(cx.begin(), cx.end(), p) != cx.end()) continue;
        cx.push_back(p);
        cy.push_back(p);
      }
      round.response = v;
      round.note = "copy";
    } else {
      Tuple& us = side == 0 ? cx : cy;
      Tuple& us2 = side == 0 ? cy : cx;
      Tuple mentioned = us;
      mentioned.insert(mentioned.end(), us2.begin(), us2.end());
      mentioned.push_back(v);
      const std::uint64_t m = 1 + detail::max_eps(a.base, mentioned);
      ExtendedTuples e = extend_along_path(a.base, us, us2, v, beta, m);
      a = adopt(std::move(a), std::move(e.s), Origin::kRealized, "defend");
      us = std::move(e.us);
      us2 = std::move(e.us2);
      round.response = e.node;
      round.note = "m=" + std::to_string(m);
    }
    if (!sim_tuple(a, cx, cy, beta)) {
      fail(ErrorCode::kUncertified, "defender lost similarity at round " + std::to_string(i + 1));
    }
    t.rounds.push_back(std::move(round));
  }
  t.xs = std::move(cx);
  t.ys = std::move(cy);
  return GameResult{std::move(a), std::move(t)};
}

namespace detail {

struct Distinguisher {
  Approx a;
  GameTranscript t;
  std::uint64_t budget;

  std::optional<NodeId> witness_child(NodeId x, const OrderElem& beta, std::uint64_t ell) const {
    for (NodeId y : a.base.children(x)) {
      if (a.base.rho(y) == beta && a.base.eps(y) >= ell) return y;
    }
    return std::nullopt;
  }

  void record(GameRound r) {
    if (t.rounds.size() >= budget) fail(ErrorCode::kBudgetExceeded, "challenger transcript over budget");
    t.won_at = std::max(t.won_at, r.depth);
    t.rounds.push_back(std::move(r));
  }

  // wins on every branch or throws
  void play(const Tuple& xs, const Tuple& ys, OrderElem alpha, std::uint32_t depth) {
    const KStruct& s0 = a.base;
    auto c = close_paired(s0, xs, ys);
    if (!c || !atomic_equiv(s0, c->xs, c->ys, &a.colors)) {
      record({0, kNoNode, kNoNode, EVal::pair(alpha, 0), depth, "atomic"});
      return;
    }
    std::optional<std::size_t> idx;
    for (std::size_t i = 0; i < c->xs.size(); ++i) {
      if (!sim_alpha(s0, c->xs[i], c->ys[i], alpha)) {
        idx = i;
        break;
      }
    }
    if (!idx) fail(ErrorCode::kUncertified, "tuples are similar at level " + alpha.to_string());
    const NodeId x = c->xs[*idx];
    const NodeId x2 = c->ys[*idx];
    if (s0.rho(x) < alpha) {
      record({0, kNoNode, kNoNode, EVal::pair(s0.rho(x), 0), depth, "drop"});
      play(c->xs, c->ys, s0.rho(x), depth);
      return;
    }
    const EVal exx = s0.e(x, x2);
    const OrderElem beta = exx.l();
    const std::uint64_t ell = exx.n();
    NodeId y;
    if (auto w = witness_child(x, beta, ell)) {
      y = *w;
    } else {
      auto r = realize_isolated(a, x, beta, ell);
      a = std::move(r.a);
      y = r.node;
    }
    Tuple nx = c->xs, ny = c->ys;
    nx.push_back(y);
    ny.push_back(kRoot);
    std::vector<NodeId> alive;
    for (NodeId y2 = 0; y2 < a.base.size(); ++y2) {
      ny.back() = y2;
      if (sim_tuple(a, nx, ny, beta)) {
        fail(ErrorCode::kUncertified, "reply " + std::to_string(y2) + " survives at level " + beta.to_string());
      }
      auto cc = close_paired(a.base, nx, ny);
      if (cc && atomic_equiv(a.base, cc->xs, cc->ys, &a.colors)) alive.push_back(y2);
    }
    record({0, y, kNoNode, EVal::pair(beta, 0), depth + 1,
            std::to_string(a.base.size()) + " replies fail, " + std::to_string(alive.size()) + " atomic"});
    for (NodeId y2 : alive) {
      ny.back() = y2;
      record({1, y, y2, EVal::pair(beta, 0), depth + 1, "reply"});
      play(nx, ny, beta, depth + 1);
    }
  }
};

}  // namespace detail

inline GameResult challenger_distinguish(Approx a, NodeId x, NodeId y, const OrderElem& alpha,
                                         std::uint64_t budget = 100000) {
  a.order().check(alpha);
  if (!a.order().in_wf_part(alpha)) fail(ErrorCode::kBetaIllFounded, "alpha " + alpha.to_string());
  if (sim_tuple(a, {x}, {y}, alpha)) fail(ErrorCode::kPrecondition, "nodes are similar at " + alpha.to_string());
  detail::Distinguisher d{std::move(a), {}, budget};
  d.play({x}, {y}, alpha, 0);
  d.t.outcome = Outcome::kChallengerWon;
  d.t.xs = {x};
  d.t.ys = {y};
  return GameResult{std::move(d.a), std::move(d.t)};
}

struct FreeEvidence {
  Approx a;
  Report report;
};

// For each enumerated beta < alpha: sample a context of `depth` nodes, take
// x' with (alpha,0) > E(x,x') > (beta,m), transport the context at (beta,m)
// and let the challenger separate x from x' at alpha. The enumeration window
// defaults to the stage count.
inline FreeEvidence free_witness_evidence(Approx a, const OrderElem& alpha, std::uint32_t depth,
                                          std::uint64_t budget, std::uint64_t seed = 1, std::uint64_t window = 0) {
  const LinOrder& L = a.order();
  L.check(alpha);
  if (window == 0) window = std::max<std::uint64_t>(a.stage, 1);
  if (L.is_least(alpha)) fail(ErrorCode::kPrecondition, "alpha must be above the least element");
  if (!L.in_wf_part(alpha)) fail(ErrorCode::kBetaIllFounded, "alpha " + alpha.to_string());
  if (L.index_of(alpha) >= window) fail(ErrorCode::kPrecondition, "alpha " + alpha.to_string() + " not enumerated yet");
  auto x = find_child(a.base, kRoot, alpha, 0);
  if (!x) {
    auto r = realize_isolated(a, kRoot, alpha, 0);
    a = std::move(r.a);
    x = r.node;
  }
  Report report;
  std::mt19937_64 rng(seed);
  for (const OrderElem& beta : L.prefix(window)) {
    if (!(beta < alpha)) continue;
    const std::string tag = "free " + alpha.to_string() + " beta " + beta.to_string();
    std::vector<NodeId> pool;
    for (NodeId y = 1; y < a.base.size(); ++y) {
      if (1 + detail::max_eps(a.base, {y}) <= budget) pool.push_back(y);
    }
    Tuple ctx;
    for (std::uint32_t i = 0; i < depth && !pool.empty(); ++i) ctx.push_back(pool[rng() % pool.size()]);
    Tuple mentioned = ctx;
    mentioned.push_back(*x);
    const std::uint64_t m = 1 + detail::max_eps(a.base, mentioned);
    if (m > budget || ctx.size() < depth) {
      report.results.push_back(detail::failed(tag, ctx, "m = " + std::to_string(m) + " over budget"));
      continue;
    }
    const EVal lo = EVal::pair(beta, m), hi = EVal::pair(alpha, 0);
    std::optional<NodeId> x2;
    for (NodeId y : a.base.class_members(a.base.class_of(*x))) {
      if (y != *x && lo < a.base.e(*x, y) && a.base.e(*x, y) < hi) {
        x2 = y;
        break;
      }
    }
    if (!x2) {
      std::optional<OrderElem> gamma;
      if (a.rn().member(1, beta)) {
        gamma = beta;
      } else {
        gamma = a.rn().least_above(1, beta);
      }
      if (!gamma || !(*gamma < alpha)) {
        report.results.push_back(detail::failed(tag, {*x}, "no level of R_1 in [beta, alpha)"));
        continue;
      }
      try {
        auto r = realize_sibling(a, *x, EVal::pair(*gamma, m + 1));
        a = std::move(r.a);
        x2 = r.node;
      } catch (const Error& e) {
        report.results.push_back(detail::failed(tag, {*x}, e.what()));
        continue;
      }
    }
    Tuple us{*x}, us2{*x2};
    for (NodeId y : ctx) {
      ExtendedTuples e = extend_along_path(a.base, us, us2, y, beta, m);
      a = adopt(std::move(a), std::move(e.s), Origin::kRealized, "transport");
      us = std::move(e.us);
      us2 = std::move(e.us2);
    }
    if (!sim_tuple(a, us, us2, beta)) {
      report.results.push_back(detail::failed(tag, us, "transported context not similar at beta"));
      continue;
    }
    if (sim_alpha(a, *x, *x2, alpha)) {
      report.results.push_back(detail::failed(tag, {*x, *x2}, "witness similar at alpha"));
      continue;
    }
    GameResult g = challenger_distinguish(a, *x, *x2, alpha);
    a = std::move(g.a);
    report.results.push_back({tag, true, {*x, *x2},
                              "E = " + a.base.e(*x, *x2).to_string() + ", challenger won in " +
                                  std::to_string(g.t.won_at) + " rounds"});
  }
  if (report.results.empty()) report.results.push_back(detail::failed("free", {}, "no enumerated beta below alpha"));
  return FreeEvidence{std::move(a), std::move(report)};
}

}  // namespace scottrank
