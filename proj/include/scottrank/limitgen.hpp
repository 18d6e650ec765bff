#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scottrank/amalgam.hpp"
#include "scottrank/error.hpp"
#include "scottrank/kstruct.hpp"

namespace scottrank {

enum class Origin : std::uint8_t { kPrimary = 0, kClone = 1, kRealized = 2 };

inline const char* origin_name(Origin o) {
  switch (o) {
    case Origin::kPrimary: return "primary";
    case Origin::kClone: return "clone";
    case Origin::kRealized: return "realized";
  }
  return "?";
}

struct RealizationRecord {
  std::string kind;
  std::uint64_t stage = 0;
  NodeId node = kRoot;
  std::string detail;

  friend bool operator==(const RealizationRecord&, const RealizationRecord&) = default;
};

// Finite approximation of the limit model, with the A_i coloring.
struct Approx {
  KStruct base;
  Colors colors;
  std::uint64_t next_color = 1;
  std::uint64_t stage = 0;
  std::uint64_t seed = 0;
  std::vector<Origin> origin;
  std::vector<RealizationRecord> log;

  const LinOrder& order() const { return base.order(); }
  const RnSystem& rn() const { return base.rn(); }
  std::size_t size() const { return base.size(); }
};

inline Approx new_approx(OrderPtr order, RnPtr rn, std::uint64_t seed) {
  Approx a{KStruct(std::move(order), std::move(rn)), {0}, 1, 0, seed, {Origin::kPrimary}, {}};
  return a;
}

inline std::uint64_t color_of(const Approx& a, NodeId x) {
  if (!a.base.contains(x)) fail(ErrorCode::kUnknownNode, "node " + std::to_string(x));
  return a.colors[x];
}

namespace detail {

// colors the nodes of a.base beyond a.colors.size(), in id order
inline void color_new_nodes(Approx& a, Origin origin, const std::string& kind, const std::string& info) {
  for (NodeId x = static_cast<NodeId>(a.colors.size()); x < a.base.size(); ++x) {
    std::uint64_t c = a.next_color;
    for (NodeId y : a.base.class_members(a.base.class_of(x))) {
      if (y < x && !a.base.e(x, y).is_neg_inf()) {
        c = a.colors[y];
        break;
      }
    }
    if (c == a.next_color) ++a.next_color;
    a.colors.push_back(c);
    a.origin.push_back(origin);
    a.log.push_back(RealizationRecord{kind, a.stage, x, info});
  }
}

}  // namespace detail

// Takes over a structure extending a.base; new nodes receive colors.
inline Approx adopt(Approx a, KStruct extended, Origin origin = Origin::kRealized,
                    const std::string& kind = "realize", const std::string& info = "") {
  require_same_base(a.base, extended);
  if (extended.size() < a.base.size()) fail(ErrorCode::kPrecondition, "structure does not extend the approximation");
  for (NodeId x = 1; x < a.base.size(); ++x) {
    if (extended.parent(x) != a.base.parent(x) || extended.rho(x) != a.base.rho(x) ||
        extended.eps(x) != a.base.eps(x)) {
      fail(ErrorCode::kPrecondition, "structure does not extend the approximation");
    }
  }
  a.base = std::move(extended);
  detail::color_new_nodes(a, origin, kind, info);
  return a;
}

inline AxiomResult check_colors(const Approx& a) {
  if (a.colors.size() != a.base.size() || a.origin.size() != a.base.size()) {
    return detail::failed("A2", {}, "color table size differs from structure size");
  }
  for (NodeId x = 1; x < a.base.size(); ++x) {
    if (a.colors[x] == a.colors[kRoot]) return detail::failed("A1", {kRoot, x}, "root color shared");
    if (a.colors[x] >= a.next_color) return detail::failed("A2", {x}, "color beyond counter");
    for (NodeId y = 1; y < x; ++y) {
      const bool same = a.colors[x] == a.colors[y];
      const bool linked = !a.base.e_total(x, y).is_neg_inf();
      if (same != linked) return detail::failed("A1", {y, x}, "color classes differ from E > -inf");
    }
  }
  return {"A1-A2", true, {}, {}};
}

inline Report check_approx(const Approx& a) {
  Report r = check_axioms(a.base);
  r.results.push_back(check_colors(a));
  return r;
}

struct Realized {
  Approx a;
  NodeId node;
};

// Amalgamates the one-point extension req = A + c into a, given A -> a.base.
inline Realized realize(const Approx& a, const std::vector<NodeId>& a_to_base, const KStruct& a_sub,
                        const KStruct& req, NodeId c) {
  Embedding emb = Embedding::make(a_sub, a.base, a_to_base);
  KStruct d = amalgamate_point(emb, req, c, true);
  Approx out = adopt(a, std::move(d));
  return Realized{std::move(out), static_cast<NodeId>(a.base.size())};
}

inline Realized realize_isolated(const Approx& a, NodeId parent, const OrderElem& rho, std::uint64_t eps) {
  Extended e = isolate_embed(a.base, parent, rho, eps);
  Approx out = adopt(a, std::move(e.s), Origin::kRealized, "isolate");
  return Realized{std::move(out), e.node};
}

// Adds a sibling x' of x with E(x,x') = t over the shared ancestor path.
inline Realized realize_sibling(const Approx& a, NodeId x, const EVal& t, Origin origin = Origin::kRealized) {
  const KStruct& s = a.base;
  SubStructure sub = induced(s, {x});
  NodeId xs = kRoot;
  for (NodeId i = 0; i < sub.to_parent.size(); ++i) {
    if (sub.to_parent[i] == x) xs = i;
  }
  KStruct c = sub.sub;
  const NodeId xp = c.add_node(c.parent(xs), c.rho(xs), c.eps(xs));
  c.set_e(xs, xp, t);
  if (auto r = check_axioms(c); !r.ok()) {
    fail(ErrorCode::kPrecondition, "sibling target " + t.to_string() + " leaves the class: " +
                                       r.first_failure()->label);
  }
  Embedding emb{sub.sub, s, sub.to_parent};
  KStruct d = amalgamate_point(emb, c, xp, false);
  Approx out = adopt(a, std::move(d), origin, origin == Origin::kClone ? "variety" : "sibling",
                     std::to_string(x) + " " + t.to_string());
  return Realized{std::move(out), static_cast<NodeId>(s.size())};
}

inline std::optional<NodeId> find_child(const KStruct& s, NodeId x, const OrderElem& rho, std::uint64_t eps) {
  for (NodeId y : s.children(x)) {
    if (s.rho(y) == rho && s.eps(y) == eps) return y;
  }
  return std::nullopt;
}

// Stage s: every primary node x with budget b = s - |x| > 0 gets
//   children (alpha, c) for alpha among the first b elements below rho(x),
//   c < b; and, off the root, siblings x' with E(x,x') = (gamma, n) for
//   gamma in R_|x| among the first b elements below rho(x), n < b.
inline Approx grow(Approx a, std::uint64_t stages) {
  for (std::uint64_t step = 0; step < stages; ++step) {
    const std::uint64_t s = ++a.stage;
    const NodeId existing = static_cast<NodeId>(a.base.size());
    std::vector<NodeId> primaries;
    for (NodeId x = 0; x < existing; ++x) {
      if (a.origin[x] == Origin::kPrimary && a.base.depth(x) < s) primaries.push_back(x);
    }
    for (NodeId x : primaries) {
      const std::uint64_t b = s - a.base.depth(x);
      for (const OrderElem& alpha : a.order().prefix(b)) {
        if (!a.base.is_root(x) && !(alpha < a.base.rho(x))) continue;
        for (std::uint64_t c = 0; c < b; ++c) {
          if (find_child(a.base, x, alpha, c)) continue;
          a.base.add_node(x, alpha, c);
          detail::color_new_nodes(a, Origin::kPrimary, "breadth", "");
        }
      }
    }
    for (NodeId x : primaries) {
      if (a.base.is_root(x)) continue;
      const std::uint64_t b = s - a.base.depth(x);
      const std::uint32_t n = a.base.depth(x);
      for (const OrderElem& gamma : a.order().prefix(b)) {
        if (!(gamma < a.base.rho(x)) || !a.rn().member(n, gamma)) continue;
        for (std::uint64_t k = 0; k < b; ++k) {
          const EVal t = EVal::pair(gamma, k);
          bool present = false;
          for (NodeId y : a.base.class_members(a.base.class_of(x))) {
            if (a.base.e(x, y) == t) {
              present = true;
              break;
            }
          }
          if (present) continue;
          a = std::move(realize_sibling(a, x, t, Origin::kClone).a);
        }
      }
    }
  }
  return a;
}

}  // namespace scottrank
