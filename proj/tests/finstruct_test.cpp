#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "json.hpp"
#include "scottrank/finstruct.hpp"

namespace scottrank {
namespace {

FinStruct chain(std::size_t n) {
  std::vector<Elems> lt;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) lt.push_back({i, j});
  }
  FinStruct a(n);
  a.add_relation("R", 2, lt);
  return a;
}

FinStruct random_binary(std::mt19937_64& rng, std::size_t n) {
  std::vector<Elems> ts;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (rng() % 2) ts.push_back({i, j});
    }
  }
  FinStruct a(n);
  a.add_relation("R", 2, ts);
  return a;
}

TEST(FinStructTest, Examples) {
  FinStruct one(1);
  EXPECT_EQ(scott_rank_finite(one), 0u);
  FinStruct two(2);
  EXPECT_EQ(scott_rank_finite(two), 0u);
  FinStruct c2 = chain(2);
  EXPECT_EQ(scott_rank_finite(c2), 1u);
  EXPECT_FALSE(leq_alpha(c2, {0}, {1}, 1));
  EXPECT_FALSE(alpha_free(c2, {0}, 0));
  EXPECT_FALSE(alpha_free(one, {}, 1));
  EXPECT_FALSE(alpha_free(one, {0}, 1));
}

TEST(FinStructTest, Reflexive) {
  FinStruct c3 = chain(3);
  BackForth bf(c3);
  for (const Elems& t : bf.tuples()) {
    for (std::uint32_t alpha = 0; alpha < 4; ++alpha) EXPECT_TRUE(bf.leq(t, t, alpha));
  }
}

TEST(FinStructTest, RejectsBadInput) {
  EXPECT_THROW(FinStruct(0), Error);
  FinStruct a(2);
  EXPECT_THROW(a.add_relation("R", 2, {{0, 2}}), Error);
  EXPECT_THROW(a.add_relation("R", 2, {{0}}), Error);
  EXPECT_THROW(leq_alpha(a, {3}, {0}, 0), Error);
  FinStruct big(7);
  EXPECT_THROW(scott_rank_finite(big), Error);
}

TEST(FinStructTest, RepeatedEntries) {
  FinStruct c3 = chain(3);
  EXPECT_TRUE(sym_alpha(c3, {0, 0}, {0, 0}, 2));
  EXPECT_FALSE(sym_alpha(c3, {0, 0}, {0, 1}, 0));
  EXPECT_FALSE(sym_alpha(c3, {0, 0}, {1, 1}, 1));
}

TEST(FinStructTest, Constants) {
  FinStruct two(2);
  two.add_constant("c", 0);
  EXPECT_FALSE(sym_alpha(two, {0}, {1}, 0));
  EXPECT_EQ(two.automorphisms().size(), 1u);
  EXPECT_EQ(scott_rank_finite(two), 0u);
  FinStruct c3 = chain(3);
  c3.add_constant("mid", 1);
  // 0 and 2 sit on opposite sides of the constant
  EXPECT_FALSE(sym_alpha(c3, {0}, {2}, 0));
  EXPECT_TRUE(sym_alpha(c3, {0}, {0}, 3));
}

TEST(FinStructTest, MonotoneAndSymmetric) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 30; ++round) {
    FinStruct a = random_binary(rng, 3);
    BackForth bf(a);
    const auto ts = bf.tuples();
    for (const Elems& x : ts) {
      for (const Elems& y : ts) {
        if (x.size() != y.size()) continue;
        for (std::uint32_t alpha = 0; alpha < 3; ++alpha) {
          if (bf.leq(x, y, alpha + 1)) {
            EXPECT_TRUE(bf.leq(x, y, alpha));
          }
          if (bf.sym_direct(x, y, alpha + 1)) {
            EXPECT_TRUE(bf.sym_direct(x, y, alpha));
          }
          EXPECT_EQ(bf.sym_direct(x, y, alpha), bf.sym_direct(y, x, alpha));
        }
      }
    }
  }
}

// all structures on <= 3 points plus a few on 4
TEST(FinStructTest, SymIsTwoSidedLeq) {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 40; ++round) {
    FinStruct a = random_binary(rng, 2 + round % 3);
    BackForth bf(a);
    const auto ts = bf.tuples();
    for (const Elems& x : ts) {
      for (const Elems& y : ts) {
        if (x.size() != y.size()) continue;
        for (std::uint32_t alpha = 1; alpha < 4; ++alpha) {
          EXPECT_EQ(bf.sym_direct(x, y, alpha), bf.sym(x, y, alpha));
        }
      }
    }
  }
}

TEST(FinStructTest, Stabilizes) {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 20; ++round) {
    FinStruct a = random_binary(rng, 3);
    BackForth bf(a);
    const auto ts = bf.tuples();
    for (const Elems& x : ts) {
      for (const Elems& y : ts) {
        if (x.size() != y.size()) continue;
        EXPECT_EQ(bf.sym_direct(x, y, 3), bf.sym_direct(x, y, 4));
      }
    }
  }
}

FinStruct from_json(const nlohmann::json& j) {
  FinStruct a(j.at("size").get<std::size_t>());
  for (const auto& r : j.at("relations")) {
    a.add_relation(r.at("name").get<std::string>(), r.at("arity").get<std::size_t>(),
                   r.at("tuples").get<std::vector<Elems>>());
  }
  return a;
}

nlohmann::json golden() {
  std::ifstream in(std::string(SCOTTRANK_GOLDEN_DIR) + "/finite_ranks.json");
  EXPECT_TRUE(in.good());
  return nlohmann::json::parse(in);
}

TEST(FinStructTest, GoldenRanks) {
  const auto g = golden();
  ASSERT_GE(g.size(), 500u);
  for (const auto& entry : g) {
    FinStruct a = from_json(entry.at("structure"));
    EXPECT_EQ(scott_rank_finite(a), entry.at("rank").get<std::uint32_t>())
        << entry.at("name") << " " << entry.at("structure").dump();
  }
}

TEST(FinStructTest, RankSeparatesOrbits) {
  const auto g = golden();
  for (std::size_t i = 0; i < g.size(); i += 7) {
    FinStruct a = from_json(g[i].at("structure"));
    BackForth bf(a);
    const std::uint32_t r = bf.scott_rank();
    const auto ts = bf.tuples();
    for (const Elems& x : ts) {
      for (const Elems& y : ts) {
        if (x.size() != y.size() || !bf.sym_direct(x, y, r)) continue;
        EXPECT_TRUE(a.same_orbit(x, y)) << g[i].at("structure").dump();
      }
    }
    if (r > 0) {
      bool some = false;
      for (const Elems& t : ts) some = some || bf.free(t, r - 1);
      EXPECT_TRUE(some) << g[i].at("structure").dump();
    }
  }
}

}  // namespace
}  // namespace scottrank
