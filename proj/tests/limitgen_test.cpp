#include <gtest/gtest.h>

#include <functional>

#include "scottrank/limitgen.hpp"

namespace scottrank {
namespace {

Approx fresh(const OrderSpec& spec, RnMode mode = RnMode::kTrivial) {
  auto L = LinOrder::make(spec);
  return new_approx(L, RnSystem::make(L, mode), 17);
}

TEST(LimitGenTest, NewApprox) {
  Approx a = fresh(OrderSpec::finite(3));
  EXPECT_EQ(a.size(), 1u);
  EXPECT_TRUE(check_approx(a).ok());
  EXPECT_EQ(a.colors, Colors{0});
  EXPECT_EQ(color_of(a, kRoot), 0u);
  EXPECT_EQ(a.stage, 0u);
  EXPECT_TRUE(a.log.empty());
  EXPECT_THROW(color_of(a, 5), Error);
}

TEST(LimitGenTest, FirstStage) {
  Approx a = grow(fresh(OrderSpec::finite(3)), 1);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a.base.parent(1), kRoot);
  EXPECT_EQ(a.base.rho(1), a.order().fin(0));
  EXPECT_EQ(a.base.eps(1), 0u);
  EXPECT_TRUE(check_approx(a).ok());
}

TEST(LimitGenTest, ZeroStagesIsIdentity) {
  Approx a = grow(fresh(OrderSpec::finite(3)), 2);
  Approx b = grow(a, 0);
  EXPECT_TRUE(a.base == b.base);
  EXPECT_EQ(a.colors, b.colors);
  EXPECT_EQ(a.stage, b.stage);
}

TEST(LimitGenTest, SiblingVarietyReachesTarget) {
  Approx a = grow(fresh(OrderSpec::finite(3)), 6);
  auto r = check_approx(a);
  ASSERT_TRUE(r.ok()) << r.summary();
  const auto& s = a.base;
  bool found = false;
  for (NodeId x : s.children(kRoot)) {
    if (s.rho(x) != a.order().fin(2)) continue;
    for (NodeId y : s.class_members(s.class_of(x))) {
      found = found || s.e(x, y) == EVal::pair(a.order().fin(1), 4);
    }
  }
  EXPECT_TRUE(found);
}

TEST(LimitGenTest, ColorsStableUnderGrowth) {
  for (auto mode : {RnMode::kTrivial, RnMode::kGreedy}) {
    Approx a = fresh(OrderSpec::limit_plus_zeta(OrdCNF::omega()), mode);
    Colors prev;
    for (int i = 0; i < 4; ++i) {
      a = grow(a, 1);
      auto r = check_approx(a);
      ASSERT_TRUE(r.ok()) << r.summary();
      for (std::size_t x = 0; x < prev.size(); ++x) EXPECT_EQ(a.colors[x], prev[x]);
      prev = a.colors;
    }
  }
}

TEST(LimitGenTest, RealizeIsolatedMatchesIsolateEmbed) {
  Approx a = grow(fresh(OrderSpec::finite(4)), 2);
  auto r = realize_isolated(a, kRoot, a.order().fin(3), 1);
  auto e = isolate_embed(a.base, kRoot, a.order().fin(3), 1);
  EXPECT_TRUE(r.a.base == e.s);
  EXPECT_EQ(r.node, e.node);
  EXPECT_EQ(color_of(r.a, r.node), a.next_color);
}

TEST(LimitGenTest, RealizeDuplicateSharesColor) {
  Approx a = grow(fresh(OrderSpec::finite(4)), 2);
  const NodeId x = 1;
  // request: path to x plus a copy of x at full E
  SubStructure sub = induced(a.base, {x});
  KStruct req = sub.sub;
  NodeId xs = static_cast<NodeId>(sub.sub.size() - 1);
  const NodeId c = req.add_node(req.parent(xs), req.rho(xs), req.eps(xs));
  req.set_e(xs, c, EVal::pair(req.rho(xs), 0));
  auto r = realize(a, sub.to_parent, sub.sub, req, c);
  EXPECT_EQ(color_of(r.a, r.node), color_of(r.a, x));
  EXPECT_TRUE(check_approx(r.a).ok());
  // and one with -inf everywhere
  KStruct req2 = sub.sub;
  const NodeId c2 = req2.add_node(req2.parent(xs), req2.rho(xs), req2.eps(xs));
  auto r2 = realize(a, sub.to_parent, sub.sub, req2, c2);
  EXPECT_EQ(color_of(r2.a, r2.node), a.next_color);
}

TEST(LimitGenTest, RealizeRejectsBadEmbedding) {
  Approx a = grow(fresh(OrderSpec::finite(4)), 2);
  KStruct sub(a.base.order_ptr(), a.base.rn_ptr());
  sub.add_node(kRoot, a.order().fin(3), 3);
  KStruct req = sub;
  const NodeId c = req.add_node(kRoot, a.order().fin(2), 0);
  EXPECT_THROW(realize(a, {kRoot, 1}, sub, req, c), Error);
}

// every decreasing label pattern inside the stage budget is realized; a node
// at depth k with labels (alpha_i, c) appears at the first stage s with
// s >= max(i, c) + k after its parent's stage
void check_patterns(const OrderSpec& spec, std::uint64_t stages) {
  Approx a = grow(fresh(spec), stages);
  const auto& L = a.order();
  std::size_t seen = 0;
  std::function<void(NodeId, std::uint32_t, std::uint64_t)> walk = [&](NodeId x, std::uint32_t depth,
                                                                       std::uint64_t born) {
    for (const auto& alpha : L.prefix(stages)) {
      if (!a.base.is_root(x) && !(alpha < a.base.rho(x))) continue;
      for (std::uint64_t c = 0; c < stages; ++c) {
        const std::uint64_t s = std::max(born + 1, std::max(L.index_of(alpha), c) + depth + 1);
        if (s > stages) continue;
        auto y = find_child(a.base, x, alpha, c);
        ASSERT_TRUE(y.has_value()) << spec.to_string() << " depth " << depth + 1;
        ++seen;
        walk(*y, depth + 1, s);
      }
    }
  };
  walk(kRoot, 0, 0);
  EXPECT_GT(seen, 10u);
}

TEST(LimitGenTest, PatternsRealized) {
  check_patterns(OrderSpec::finite(4), 4);
  check_patterns(OrderSpec::limit_plus_zeta(OrdCNF::omega()), 4);
}

}  // namespace
}  // namespace scottrank
