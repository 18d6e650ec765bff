#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "scottrank/finstruct.hpp"
#include "scottrank/games.hpp"
#include "scottrank/json_io.hpp"
#include "scottrank/limitgen.hpp"
#include "scottrank/rn_system.hpp"

namespace scottrank {

namespace detail {

inline AxiomResult passed(std::string label, std::string detail) { return {std::move(label), true, {}, std::move(detail)}; }

// caps the failure entries at `keep`, plus one summary line
class SuiteLog {
 public:
  SuiteLog(std::string label, std::size_t keep = 20) : label_(std::move(label)), keep_(keep) {}

  void fail(std::vector<NodeId> witness, std::string detail) {
    if (failures_++ < keep_) report_.results.push_back(failed(label_, std::move(witness), std::move(detail)));
  }

  std::size_t failures() const { return failures_; }

  Report finish(const std::string& summary) {
    AxiomResult r{label_, failures_ == 0, {}, summary + ", " + std::to_string(failures_) + " failures"};
    report_.results.insert(report_.results.begin(), std::move(r));
    return std::move(report_);
  }

 private:
  std::string label_;
  std::size_t keep_;
  std::size_t failures_ = 0;
  Report report_;
};

inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t i) {
  std::seed_seq seq{seed, i, std::uint64_t{0x5c077}};
  return std::mt19937_64(seq);
}

inline std::vector<OrderElem> wf_window(const LinOrder& L, std::uint64_t window) {
  std::vector<OrderElem> out;
  for (const auto& a : L.prefix(window)) {
    if (L.in_wf_part(a)) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// -- R_n prefix checks ---------------------------------------------------------

// R1-R5, the O4b recurrence and coherence on the first `count` elements, for
// levels 1..levels.
inline Report rn_prefix_report(const RnSystem& R, std::uint64_t count, std::uint64_t levels = 3) {
  const LinOrder& L = *R.order();
  const auto xs = L.prefix(count);
  detail::SuiteLog log("Rn");
  std::uint64_t checks = 0;
  for (const auto& a : xs) {
    ++checks;
    const auto n = R.level(a);  // R3
    if (n == 0) log.fail({}, "no level for " + a.to_string());
    for (std::uint64_t k = 1; k <= levels; ++k) {
      if (R.member(k, a) && !R.member(k + 1, a)) log.fail({}, "R2 at " + a.to_string());  // R2
      if (!R.least_at_least(k, a)) log.fail({}, "R5 at " + a.to_string());               // R5, R1
      if (!R.member(k, a) || L.is_least(a)) continue;
      if (auto p = L.pred(a)) {  // R4, successor case
        if (!R.member(k + 1, *p)) log.fail({}, "R4 pred of " + a.to_string());
      }
    }
  }
  // R4 at limits: R_{k+1} is cofinal below every member, probed from the head
  const std::size_t head = std::min<std::size_t>(xs.size(), 400);
  for (const auto& a : xs) {
    if (!L.is_limit(a)) continue;
    for (std::uint64_t k = 1; k <= levels; ++k) {
      if (!R.member(k, a)) continue;
      for (std::size_t h = 0; h < head; ++h) {
        const auto& g = xs[h];
        if (!(g < a)) continue;
        auto c = R.least_at_least(k + 1, g);
        ++checks;
        if (!c || !(*c < a)) log.fail({}, "R4 limit " + a.to_string() + " above " + g.to_string());
      }
    }
  }
  // O4b: {beta_k} u R_k u G(c) for prefix members c of R_k, unfolded from the
  // G sequences, lies inside R_{k+1} and covers it on the head of the prefix
  if (R.mode() == RnMode::kGreedy) {
    for (std::uint64_t k = 1; k <= levels; ++k) {
      std::set<std::uint64_t> rhs;
      if (auto b = R.beta(k)) rhs.insert(L.index_of(*b));
      for (const auto& c : xs) {
        if (!R.member(k, c)) continue;
        rhs.insert(L.index_of(c));
        for (const auto& g : R.g_seq(c, 64)) rhs.insert(L.index_of(g));
      }
      for (std::uint64_t i : rhs) {
        ++checks;
        if (!R.member(k + 1, L.at(i))) log.fail({}, "O4b: " + L.at(i).to_string() + " missing from R_" + std::to_string(k + 1));
      }
      for (std::size_t i = 0; i < head; ++i) {
        ++checks;
        if (R.member(k + 1, xs[i]) && !rhs.count(L.index_of(xs[i]))) {
          log.fail({}, "O4b: " + xs[i].to_string() + " in R_" + std::to_string(k + 1) + " unexplained");
        }
      }
    }
    for (const auto& b : xs) {
      for (const auto& g : R.g_seq(b, 6)) {
        for (std::size_t i = 0; i < head; ++i) {
          const auto& a = xs[i];
          if (g < a && a < b) {
            ++checks;
            if (!R.g_contains(a, g)) log.fail({}, "coherence " + g.to_string() + " " + a.to_string() + " " + b.to_string());
          }
        }
      }
    }
    // boundedness: the least ill-founded member of R_k is already found early
    for (std::uint64_t k = 1; k <= levels; ++k) {
      std::optional<std::int64_t> early, late;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!xs[i].is_zeta() || !R.member(k, xs[i])) continue;
        const auto z = xs[i].zeta_offset();
        if (i < xs.size() / 4) early = early ? std::min(*early, z) : z;
        late = late ? std::min(*late, z) : z;
      }
      ++checks;
      if (early != late) log.fail({}, "R_" + std::to_string(k) + " not bounded below in the ill-founded part");
    }
  }
  return log.finish(std::to_string(xs.size()) + " elements, " + std::to_string(checks) + " checks");
}

// -- game suites -------------------------------------------------------------

// defender games from sampled similar positions; the level list has length
// min(depth, what the order allows below the position)
inline Report games_suite(const Approx& a, std::size_t samples, std::uint32_t depth, std::uint64_t seed,
                          std::uint64_t window = 8) {
  const LinOrder& L = a.order();
  detail::SuiteLog log("games");
  const auto wf = detail::wf_window(L, window);
  std::size_t played = 0, nontrivial = 0;
  std::vector<std::size_t> by_depth(depth + 1, 0);
  for (std::size_t i = 0; played < samples && i < samples * 20; ++i) {
    auto rng = detail::sample_rng(seed, i);
    if (a.size() < 2) break;
    Approx g = a;
    const NodeId x = static_cast<NodeId>(1 + rng() % (g.size() - 1));
    NodeId y = x;
    const auto kind = rng() % 3;
    if (kind == 1) {
      const auto mates = g.base.class_members(g.base.class_of(x));
      y = mates[rng() % mates.size()];
    } else if (kind == 2) {
      std::vector<OrderElem> lv;
      for (const auto& l : L.prefix(window)) {
        if (!(g.base.rho(x) < l) && g.rn().member(g.base.depth(x), l)) lv.push_back(l);
      }
      if (!lv.empty()) {
        const OrderElem l = lv[rng() % lv.size()];
        const std::uint64_t k = l == g.base.rho(x) ? 0 : rng() % 4;
        try {
          auto r = realize_sibling(g, x, EVal::pair(l, k));
          g = std::move(r.a);
          y = r.node;
        } catch (const Error&) {
        }
      }
    }
    // highest admissible first level, then random strictly decreasing levels
    std::vector<OrderElem> tops;
    for (const auto& l : wf) {
      auto up = L.succ(l);
      if (up && sim_tuple(g, {x}, {y}, *up)) tops.push_back(l);
    }
    if (tops.empty()) continue;
    const OrderElem top = tops[rng() % tops.size()];
    std::vector<OrderElem> below;
    for (const auto& l : wf) {
      if (l < top) below.push_back(l);
    }
    const std::size_t d = std::min<std::size_t>(depth, below.size() + 1);
    std::vector<OrderElem> levels{top};
    std::shuffle(below.begin(), below.end(), rng);
    below.resize(d - 1);
    std::sort(below.begin(), below.end(), [](const auto& u, const auto& v) { return v < u; });
    levels.insert(levels.end(), below.begin(), below.end());
    try {
      auto res = defender_game(std::move(g), {x}, {y}, levels, rng());
      if (res.t.outcome != Outcome::kDefenderSurvived) log.fail({x, y}, "defender lost");
    } catch (const Error& e) {
      log.fail({x, y}, e.what());
    }
    ++played;
    nontrivial += x != y;
    ++by_depth[d];
  }
  std::string hist;
  for (std::size_t d = 1; d <= depth; ++d) hist += " d" + std::to_string(d) + "=" + std::to_string(by_depth[d]);
  if (played < samples) log.fail({}, "only " + std::to_string(played) + " positions found");
  return log.finish(std::to_string(played) + " games (" + std::to_string(nontrivial) + " nontrivial," + hist + ")");
}

// challenger wins on sampled non-similar pairs, re-checked after `regrow`
// further stages
inline Report distinguish_suite(const Approx& a0, std::size_t samples, std::uint64_t seed, std::uint64_t regrow = 2,
                                std::uint64_t window = 8) {
  const LinOrder& L = a0.order();
  detail::SuiteLog log("distinguish");
  const auto wf = detail::wf_window(L, window);
  Approx a = a0;
  struct Case {
    NodeId x, y;
    OrderElem alpha;
  };
  std::vector<Case> cases;
  for (std::size_t i = 0; cases.size() < samples && i < samples * 20 && a.size() > 1; ++i) {
    auto rng = detail::sample_rng(seed, i);
    const NodeId x = static_cast<NodeId>(1 + rng() % (a.size() - 1));
    NodeId y;
    if (rng() % 4 == 0) {
      y = static_cast<NodeId>(1 + rng() % (a.size() - 1));
    } else {
      const auto mates = a.base.class_members(a.base.class_of(x));
      y = mates[rng() % mates.size()];
    }
    std::vector<OrderElem> alphas;
    for (const auto& l : wf) {
      if (!sim_tuple(a, {x}, {y}, l)) alphas.push_back(l);
    }
    if (alphas.empty()) continue;
    const OrderElem alpha = alphas[rng() % alphas.size()];
    try {
      auto g = challenger_distinguish(std::move(a), x, y, alpha);
      a = std::move(g.a);
    } catch (const Error& e) {
      log.fail({x, y}, std::string("first run: ") + e.what());
      a = a0;
      continue;
    }
    cases.push_back({x, y, alpha});
  }
  a = grow(std::move(a), regrow);
  for (const auto& c : cases) {
    try {
      auto g = challenger_distinguish(a, c.x, c.y, c.alpha);
      if (g.t.outcome != Outcome::kChallengerWon) log.fail({c.x, c.y}, "challenger lost after growth");
    } catch (const Error& e) {
      log.fail({c.x, c.y}, std::string("after growth: ") + e.what());
    }
  }
  if (cases.size() < samples) log.fail({}, "only " + std::to_string(cases.size()) + " non-similar pairs found");
  return log.finish(std::to_string(cases.size()) + " pairs, regrown " + std::to_string(regrow) + " stages to " +
                    std::to_string(a.size()) + " nodes");
}

// free_witness_evidence for the first `alphas` enumerated well-founded
// elements above the least one
inline Report freeness_suite(const Approx& a, std::size_t alphas, std::uint32_t depth, std::uint64_t budget,
                             std::uint64_t seed) {
  const LinOrder& L = a.order();
  Report out;
  std::size_t done = 0;
  for (std::uint64_t i = 0; done < alphas && L.has_index(i); ++i) {
    const OrderElem alpha = L.at(i);
    if (!L.in_wf_part(alpha) || L.is_least(alpha)) continue;
    ++done;
    const std::uint64_t window = std::max<std::uint64_t>(a.stage, i + 1);
    try {
      auto ev = free_witness_evidence(a, alpha, depth, budget, seed + i, window);
      out.merge(ev.report);
    } catch (const Error& e) {
      out.results.push_back(detail::failed("free " + alpha.to_string(), {}, e.what()));
    }
  }
  const auto bad = std::count_if(out.results.begin(), out.results.end(), [](const auto& r) { return !r.pass; });
  out.results.insert(out.results.begin(),
                     AxiomResult{"freeness", bad == 0, {},
                                 std::to_string(done) + " alphas, " + std::to_string(out.results.size()) +
                                     " cases, " + std::to_string(bad) + " failures"});
  return out;
}

// ranks against a golden list, plus orbit separation at the rank and minimality
inline Report finite_rank_suite(const Json& golden) {
  detail::SuiteLog log("finite-rank");
  std::size_t n = 0;
  for (const auto& entry : golden) {
    FinStruct s = finstruct_from_json(entry.at("structure"));
    const auto want = entry.at("rank").get<std::uint32_t>();
    const std::string name = entry.value("name", std::string("?"));
    BackForth bf(s);
    const auto got = bf.scott_rank();
    ++n;
    if (got != want) {
      log.fail({}, name + ": rank " + std::to_string(got) + " expected " + std::to_string(want));
      continue;
    }
    const auto ts = bf.tuples();
    for (const auto& x : ts) {
      for (const auto& y : ts) {
        if (x.size() == y.size() && bf.sym_direct(x, y, got) && !s.same_orbit(x, y)) {
          log.fail({}, name + ": similar tuples in different orbits");
        }
      }
    }
    if (got > 0 && std::none_of(ts.begin(), ts.end(), [&](const auto& t) { return bf.free(t, got - 1); })) {
      log.fail({}, name + ": no tuple free below the rank");
    }
  }
  return log.finish(std::to_string(n) + " structures");
}

}  // namespace scottrank
