#include <gtest/gtest.h>

#include <random>

#include "scottrank/games.hpp"
#include "support/random_kstruct.hpp"

namespace scottrank {
namespace {

Approx fresh(const OrderSpec& spec, RnMode mode = RnMode::kTrivial) {
  auto L = LinOrder::make(spec);
  return new_approx(L, RnSystem::make(L, mode), 3);
}

// root child x with rho = top and a sibling at E = t
struct Pair {
  Approx a;
  NodeId x, x2;
};

Pair sibling_pair(std::uint64_t n, std::uint64_t rho, std::uint64_t level, std::uint64_t k) {
  Approx a = grow(fresh(OrderSpec::finite(n)), n);
  auto x = find_child(a.base, kRoot, a.order().fin(rho), 0);
  EXPECT_TRUE(x.has_value());
  auto r = realize_sibling(a, *x, EVal::pair(a.order().fin(level), k));
  return {std::move(r.a), *x, r.node};
}

TEST(GamesTest, SimAlpha) {
  Pair p = sibling_pair(4, 3, 1, 2);
  const auto& F = p.a.order();
  EXPECT_TRUE(sim_alpha(p.a, p.x, p.x, F.fin(3)));
  EXPECT_FALSE(sim_alpha(p.a, p.x, p.x2, F.fin(2)));
  EXPECT_FALSE(sim_alpha(p.a, p.x, p.x2, F.fin(3)));
  EXPECT_TRUE(sim_alpha(p.a, p.x, p.x2, F.fin(1)));
  EXPECT_TRUE(sim_alpha(p.a, p.x, p.x2, F.fin(0)));
  EXPECT_TRUE(sim_tuple(p.a, {p.x}, {p.x2}, F.fin(1)));
  EXPECT_FALSE(sim_tuple(p.a, {p.x}, {p.x2}, F.fin(2)));
  EXPECT_FALSE(sim_alpha(p.a, kRoot, p.x, F.fin(0)));
}

TEST(GamesTest, DefenderCopies) {
  Approx a = grow(fresh(OrderSpec::finite(4)), 3);
  const auto& L = a.order();
  auto g = defender_game(a, {1, 2}, {1, 2}, {L.fin(2), L.fin(1), L.fin(0)}, 11);
  EXPECT_EQ(g.t.outcome, Outcome::kDefenderSurvived);
  ASSERT_EQ(g.t.rounds.size(), 3u);
  for (const auto& r : g.t.rounds) EXPECT_EQ(r.challenge, r.response);
}

TEST(GamesTest, DefenderSingleRound) {
  Pair p = sibling_pair(4, 3, 2, 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = defender_game(p.a, {p.x}, {p.x2}, {p.a.order().fin(1)}, seed);
    EXPECT_EQ(g.t.outcome, Outcome::kDefenderSurvived);
    EXPECT_TRUE(sim_tuple(g.a, g.t.xs, g.t.ys, g.a.order().fin(1)));
    EXPECT_TRUE(check_approx(g.a).ok());
  }
}

TEST(GamesTest, DefenderPreconditions) {
  Pair p = sibling_pair(4, 3, 1, 1);
  const auto& F = p.a.order();
  EXPECT_THROW(defender_game(p.a, {p.x}, {p.x}, {F.fin(1), F.fin(1)}, 0), Error);
  EXPECT_THROW(defender_game(p.a, {p.x}, {p.x}, {F.fin(0), F.fin(1)}, 0), Error);
  // similar at 1 but not above it
  EXPECT_THROW(defender_game(p.a, {p.x}, {p.x2}, {F.fin(1)}, 0), Error);
  EXPECT_NO_THROW(defender_game(p.a, {p.x}, {p.x2}, {F.fin(0)}, 0));
  auto Z = LinOrder::make(OrderSpec::limit_plus_zeta(OrdCNF::omega()));
  Approx z = grow(new_approx(Z, RnSystem::make(Z, RnMode::kTrivial), 1), 2);
  EXPECT_THROW(defender_game(z, {}, {}, {Z->zeta(0)}, 0), Error);
}

TEST(GamesTest, DefenderSampled) {
  for (auto spec : {OrderSpec::finite(4), OrderSpec::limit_plus_zeta(OrdCNF::omega())}) {
    for (auto mode : {RnMode::kTrivial, RnMode::kGreedy}) {
      Approx a = grow(fresh(spec, mode), 4);
      const auto& L = a.order();
      std::mt19937_64 rng(21);
      int played = 0;
      for (int trial = 0; trial < 200 && played < 40; ++trial) {
        const NodeId x = static_cast<NodeId>(1 + rng() % (a.size() - 1));
        const auto mates = a.base.class_members(a.base.class_of(x));
        const NodeId y = mates[rng() % mates.size()];
        std::vector<OrderElem> levels;
        for (const auto& l : L.prefix(4)) {
          if (L.in_wf_part(l) && L.succ(l) && sim_tuple(a, {x}, {y}, *L.succ(l))) levels.push_back(l);
        }
        if (levels.empty()) continue;
        std::sort(levels.begin(), levels.end(), [](const auto& u, const auto& v) { return v < u; });
        levels.resize(std::min<std::size_t>(levels.size(), 3));
        auto g = defender_game(a, {x}, {y}, levels, trial);
        EXPECT_EQ(g.t.outcome, Outcome::kDefenderSurvived);
        ++played;
      }
      EXPECT_GT(played, 10) << spec.to_string();
    }
  }
}

TEST(GamesTest, ChallengerAtomic) {
  Approx a = grow(fresh(OrderSpec::finite(3)), 2);
  auto r1 = realize_isolated(a, kRoot, a.order().fin(2), 0);
  auto r2 = realize_isolated(r1.a, kRoot, a.order().fin(2), 0);
  auto g = challenger_distinguish(r2.a, r1.node, r2.node, a.order().fin(1));
  EXPECT_EQ(g.t.outcome, Outcome::kChallengerWon);
  EXPECT_EQ(g.t.won_at, 0u);
  EXPECT_EQ(g.t.rounds.front().note, "atomic");
}

TEST(GamesTest, ChallengerCaseThree) {
  Pair p = sibling_pair(4, 3, 1, 2);
  auto g = challenger_distinguish(p.a, p.x, p.x2, p.a.order().fin(3));
  EXPECT_EQ(g.t.outcome, Outcome::kChallengerWon);
  ASSERT_FALSE(g.t.rounds.empty());
  const NodeId y = g.t.rounds.front().challenge;
  EXPECT_EQ(g.a.base.parent(y), p.x);
  EXPECT_EQ(g.a.base.rho(y), g.a.order().fin(1));
  EXPECT_GE(g.a.base.eps(y), 2u);
  EXPECT_LE(g.t.won_at, 3u);
  EXPECT_THROW(challenger_distinguish(p.a, p.x, p.x2, p.a.order().fin(1)), Error);
}

TEST(GamesTest, ChallengerPersistsAfterGrowth) {
  auto L = LinOrder::make(OrderSpec::limit_plus_zeta(OrdCNF::omega()));
  Approx a = grow(new_approx(L, RnSystem::make(L, RnMode::kTrivial), 1), 4);
  std::mt19937_64 rng(2);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  const NodeId n = static_cast<NodeId>(a.size());
  for (int trial = 0; trial < 400 && pairs.size() < 40; ++trial) {
    const NodeId x = static_cast<NodeId>(1 + rng() % (n - 1));
    const auto mates = a.base.class_members(a.base.class_of(x));
    const NodeId y = mates[rng() % mates.size()];
    const OrderElem alpha = a.base.rho(x);
    if (!L->in_wf_part(alpha) || sim_tuple(a, {x}, {y}, alpha)) continue;
    auto g = challenger_distinguish(std::move(a), x, y, alpha);
    EXPECT_EQ(g.t.outcome, Outcome::kChallengerWon);
    a = std::move(g.a);
    pairs.emplace_back(x, y);
  }
  EXPECT_GT(pairs.size(), 10u);
  a = grow(std::move(a), 2);
  for (const auto& [x, y] : pairs) {
    auto h = challenger_distinguish(a, x, y, a.base.rho(x));
    EXPECT_EQ(h.t.outcome, Outcome::kChallengerWon);
  }
}

TEST(GamesTest, FreeWitnessFinite) {
  Approx a = grow(fresh(OrderSpec::finite(3)), 6);
  const auto& L = a.order();
  auto ev = free_witness_evidence(a, L.fin(2), 0, 8);
  ASSERT_TRUE(ev.report.ok()) << ev.report.summary();
  const auto* r = ev.report.find("free 2 beta 1");
  ASSERT_NE(r, nullptr);
  const EVal e = ev.a.base.e(r->witness[0], r->witness[1]);
  EXPECT_EQ(e.l(), L.fin(1));
  EXPECT_GE(e.n(), 2u);
  auto ctx = free_witness_evidence(a, L.fin(2), 3, 8, 5);
  EXPECT_TRUE(ctx.report.ok()) << ctx.report.summary();
  EXPECT_TRUE(check_approx(ctx.a).ok());
}

TEST(GamesTest, FreeWitnessLeastPositive) {
  Approx a = grow(fresh(OrderSpec::finite(3)), 3);
  auto ev = free_witness_evidence(a, a.order().fin(1), 2, 8);
  ASSERT_TRUE(ev.report.ok()) << ev.report.summary();
  const auto* r = ev.report.find("free 1 beta 0");
  ASSERT_NE(r, nullptr);
  auto g = challenger_distinguish(ev.a, r->witness[0], r->witness[1], a.order().fin(1));
  EXPECT_NE(g.t.rounds.back().note.find(" 0 atomic"), std::string::npos);
}

TEST(GamesTest, FreeWitnessErrors) {
  Approx a = grow(fresh(OrderSpec::finite(4)), 1);
  EXPECT_THROW(free_witness_evidence(a, a.order().fin(3), 1, 8), Error);
  EXPECT_NO_THROW(free_witness_evidence(a, a.order().fin(3), 1, 8, 1, 4));
  EXPECT_THROW(free_witness_evidence(a, a.order().fin(0), 1, 8), Error);
}

TEST(GamesTest, FreeWitnessGreedyReports) {
  Approx a = grow(fresh(OrderSpec::finite(3), RnMode::kGreedy), 4);
  auto ev = free_witness_evidence(a, a.order().fin(2), 1, 8);
  EXPECT_FALSE(ev.report.results.empty());
}

}  // namespace
}  // namespace scottrank
