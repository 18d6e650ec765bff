#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "scottrank/error.hpp"
#include "scottrank/eval.hpp"
#include "scottrank/linorder.hpp"
#include "scottrank/rn_system.hpp"

namespace scottrank {

using NodeId = std::uint32_t;
inline constexpr NodeId kRoot = 0;

// Finite tree with labels rho, eps and the function E on between-pairs.
class KStruct {
 public:
  KStruct(OrderPtr order, RnPtr rn) : order_(std::move(order)), rn_(std::move(rn)) {
    if (!order_ || !rn_ || rn_->order() != order_) {
      fail(ErrorCode::kOrderMismatch, "R_n system built over a different order");
    }
    nodes_.push_back(Node{});
    classes_.push_back(Class{});
    classes_[0].members.push_back(kRoot);
    classes_[0].rows.push_back({EVal::top()});
  }

  const OrderPtr& order_ptr() const { return order_; }
  const RnPtr& rn_ptr() const { return rn_; }
  const LinOrder& order() const { return *order_; }
  const RnSystem& rn() const { return *rn_; }

  std::size_t size() const { return nodes_.size(); }
  bool contains(NodeId x) const { return x < nodes_.size(); }
  bool is_root(NodeId x) const { return check(x) == kRoot; }

  NodeId parent(NodeId x) const {
    if (is_root(x)) fail(ErrorCode::kPrecondition, "the root has no parent");
    return nodes_[x].parent;
  }
  const OrderElem& rho(NodeId x) const {
    if (is_root(x)) fail(ErrorCode::kPrecondition, "rho is undefined at the root");
    return nodes_[x].rho;
  }
  std::uint64_t eps(NodeId x) const {
    if (is_root(x)) fail(ErrorCode::kPrecondition, "eps is undefined at the root");
    return nodes_[x].eps;
  }
  std::uint32_t depth(NodeId x) const { return nodes_[check(x)].depth; }
  const std::vector<NodeId>& children(NodeId x) const { return nodes_[check(x)].children; }

  // x, P(x), ..., down to depth 1; root excluded
  std::vector<NodeId> path(NodeId x) const {
    std::vector<NodeId> out;
    for (NodeId y = check(x); y != kRoot; y = nodes_[y].parent) out.push_back(y);
    std::reverse(out.begin(), out.end());
    return out;
  }

  bool precedes_eq(NodeId x, NodeId y) const {
    check(x);
    for (NodeId z = check(y);; z = nodes_[z].parent) {
      if (z == x) return true;
      if (z == kRoot) return false;
    }
  }

  std::uint32_t class_of(NodeId x) const { return nodes_[check(x)].cls; }
  std::size_t class_count() const { return classes_.size(); }
  const std::vector<NodeId>& class_members(std::uint32_t c) const { return classes_.at(c).members; }

  bool between(NodeId x, NodeId y) const {
    if (is_root(x) || is_root(y)) fail(ErrorCode::kPrecondition, "between is undefined at the root");
    return nodes_[x].cls == nodes_[y].cls;
  }

  EVal e(NodeId x, NodeId y) const {
    if (is_root(x) && is_root(y)) return EVal::top();
    if (!between(x, y)) fail(ErrorCode::kPrecondition, "E is undefined off between-pairs");
    return cell(x, y);
  }

  // E with non-between pairs read as -inf
  EVal e_total(NodeId x, NodeId y) const {
    if (is_root(x) || is_root(y)) return x == y ? EVal::top() : EVal::neg_inf();
    if (nodes_[x].cls != nodes_[y].cls) return EVal::neg_inf();
    return cell(x, y);
  }

  // New leaf with E(x,x) = (rho,0) and -inf to its between-mates. No axiom is
  // checked here.
  NodeId add_node(NodeId parent, const OrderElem& rho, std::uint64_t eps) {
    check(parent);
    order_->check(rho);
    const NodeId x = static_cast<NodeId>(nodes_.size());
    Node n;
    n.parent = parent;
    n.rho = rho;
    n.eps = eps;
    n.depth = nodes_[parent].depth + 1;
    const auto key = std::make_tuple(nodes_[parent].cls, rho, eps);
    auto it = class_index_.find(key);
    if (it == class_index_.end()) {
      it = class_index_.emplace(key, static_cast<std::uint32_t>(classes_.size())).first;
      classes_.push_back(Class{});
    }
    n.cls = it->second;
    Class& c = classes_[n.cls];
    n.pos = static_cast<std::uint32_t>(c.members.size());
    c.members.push_back(x);
    std::vector<EVal> row(c.members.size(), EVal::neg_inf());
    row.back() = EVal::pair(rho, 0);
    c.rows.push_back(std::move(row));
    nodes_.push_back(std::move(n));
    nodes_[parent].children.push_back(x);
    return x;
  }

  void set_e(NodeId x, NodeId y, const EVal& v) {
    if (!between(x, y)) fail(ErrorCode::kPrecondition, "E is undefined off between-pairs");
    if (v.is_pair()) order_->check(v.l());
    mutable_cell(x, y) = v;
  }

  friend bool operator==(const KStruct& a, const KStruct& b) {
    if (a.order_->spec() != b.order_->spec() || a.rn_->mode() != b.rn_->mode()) return false;
    if (a.size() != b.size()) return false;
    for (NodeId x = 1; x < a.size(); ++x) {
      const Node& p = a.nodes_[x];
      const Node& q = b.nodes_[x];
      if (p.parent != q.parent || p.rho != q.rho || p.eps != q.eps) return false;
    }
    for (NodeId x = 1; x < a.size(); ++x) {
      for (NodeId y = 1; y <= x; ++y) {
        if (a.e_total(x, y) != b.e_total(x, y)) return false;
      }
    }
    return true;
  }

 private:
  struct Node {
    NodeId parent = kRoot;
    OrderElem rho;
    std::uint64_t eps = 0;
    std::uint32_t depth = 0;
    std::uint32_t cls = 0;
    std::uint32_t pos = 0;
    std::vector<NodeId> children;
  };

  // lower-triangular E matrix over the members of one between-class
  struct Class {
    std::vector<NodeId> members;
    std::vector<std::vector<EVal>> rows;
  };

  NodeId check(NodeId x) const {
    if (x >= nodes_.size()) fail(ErrorCode::kUnknownNode, "node " + std::to_string(x));
    return x;
  }

  const EVal& cell(NodeId x, NodeId y) const {
    const auto& c = classes_[nodes_[x].cls];
    const auto i = nodes_[x].pos;
    const auto j = nodes_[y].pos;
    return i >= j ? c.rows[i][j] : c.rows[j][i];
  }

  EVal& mutable_cell(NodeId x, NodeId y) {
    return const_cast<EVal&>(static_cast<const KStruct*>(this)->cell(x, y));
  }

  OrderPtr order_;
  RnPtr rn_;
  std::vector<Node> nodes_;
  std::vector<Class> classes_;
  std::map<std::tuple<std::uint32_t, OrderElem, std::uint64_t>, std::uint32_t> class_index_;
};

// -- reports -----------------------------------------------------------------

struct AxiomResult {
  std::string label;
  bool pass = true;
  std::vector<NodeId> witness;
  std::string detail;
};

struct Report {
  std::vector<AxiomResult> results;

  bool ok() const {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  }

  const AxiomResult* find(const std::string& label) const {
    for (const auto& r : results) {
      if (r.label == label) return &r;
    }
    return nullptr;
  }

  const AxiomResult* first_failure() const {
    for (const auto& r : results) {
      if (!r.pass) return &r;
    }
    return nullptr;
  }

  void merge(const Report& other) {
    results.insert(results.end(), other.results.begin(), other.results.end());
  }

  std::string summary() const {
    std::string out;
    for (const auto& r : results) {
      out += r.label + (r.pass ? " ok" : " FAIL");
      if (!r.pass) {
        out += " [";
        for (std::size_t i = 0; i < r.witness.size(); ++i) {
          if (i) out += ",";
          out += std::to_string(r.witness[i]);
        }
        out += "] " + r.detail;
      }
      out += "\n";
    }
    return out;
  }
};

namespace detail {

inline AxiomResult failed(std::string label, std::vector<NodeId> witness, std::string detail) {
  return AxiomResult{std::move(label), false, std::move(witness), std::move(detail)};
}

inline std::vector<NodeId> non_root(const KStruct& s) {
  std::vector<NodeId> out;
  for (NodeId x = 1; x < s.size(); ++x) out.push_back(x);
  return out;
}

inline AxiomResult check_tree(const KStruct& s) {
  for (NodeId x = 1; x < s.size(); ++x) {
    const NodeId p = s.parent(x);
    if (p >= x) return failed("P1-P4", {x}, "parent created after child");
    if (s.depth(x) != s.depth(p) + 1) return failed("P1-P4", {x}, "depth mismatch");
  }
  return {"P1-P4", true, {}, {}};
}

inline AxiomResult check_labels(const KStruct& s) {
  for (NodeId x = 1; x < s.size(); ++x) {
    if (!s.order().contains(s.rho(x))) return failed("P5", {x}, "rho outside the order");
  }
  return {"P5", true, {}, {}};
}

inline AxiomResult check_p6(const KStruct& s) {
  for (NodeId y = 1; y < s.size(); ++y) {
    const NodeId x = s.parent(y);
    if (x == kRoot) continue;
    if (!(s.rho(x) > s.rho(y))) {
      return failed("P6", {x, y}, "rho " + s.rho(y).to_string() + " not below parent rho " +
                                      s.rho(x).to_string());
    }
  }
  return {"P6", true, {}, {}};
}

// between-classes must be exactly the (depth, rho-bar, eps-bar) classes
inline AxiomResult check_domain(const KStruct& s) {
  for (NodeId x = 1; x < s.size(); ++x) {
    for (NodeId y = 1; y < x; ++y) {
      bool same = s.depth(x) == s.depth(y);
      for (NodeId a = x, b = y; same && a != kRoot; a = s.parent(a), b = s.parent(b)) {
        same = s.rho(a) == s.rho(b) && s.eps(a) == s.eps(b);
      }
      if (same != s.between(x, y)) return failed("Dom", {y, x}, "domain of E is not the between relation");
    }
  }
  return {"Dom", true, {}, {}};
}

template <typename F>
AxiomResult per_class(const KStruct& s, const std::string& label, F&& f) {
  for (std::uint32_t c = 1; c < s.class_count(); ++c) {
    if (auto r = f(s.class_members(c)); !r.pass) return r;
  }
  return {label, true, {}, {}};
}

inline AxiomResult check_q0(const KStruct& s) {
  return per_class(s, "Q0", [&](const std::vector<NodeId>& m) {
    for (NodeId x : m) {
      if (s.e(x, x) != EVal::pair(s.rho(x), 0)) return failed("Q0", {x}, "E(x,x) = " + s.e(x, x).to_string());
    }
    return AxiomResult{"Q0", true, {}, {}};
  });
}

inline AxiomResult check_q1(const KStruct& s) {
  return per_class(s, "Q1", [&](const std::vector<NodeId>& m) {
    for (NodeId x : m) {
      for (NodeId y : m) {
        if (s.e(x, y) != s.e(y, x)) return failed("Q1", {x, y}, "asymmetric");
      }
    }
    return AxiomResult{"Q1", true, {}, {}};
  });
}

inline AxiomResult check_q2(const KStruct& s) {
  return per_class(s, "Q2", [&](const std::vector<NodeId>& m) {
    for (NodeId x : m) {
      for (NodeId y : m) {
        const EVal xy = s.e(x, y);
        if (xy.is_neg_inf()) continue;
        for (NodeId z : m) {
          if (s.e(x, z) < emin(xy, s.e(y, z))) return failed("Q2", {x, y, z}, "ultrametric inequality");
        }
      }
    }
    return AxiomResult{"Q2", true, {}, {}};
  });
}

inline AxiomResult check_q3(const KStruct& s) {
  return per_class(s, "Q3", [&](const std::vector<NodeId>& m) {
    for (NodeId x : m) {
      for (NodeId y : m) {
        if (s.e(x, y) > EVal::pair(s.rho(x), 0)) return failed("Q3", {x, y}, "E above (rho,0)");
      }
    }
    return AxiomResult{"Q3", true, {}, {}};
  });
}

inline AxiomResult check_q4_q5(const KStruct& s, bool q4) {
  const std::string label = q4 ? "Q4" : "Q5";
  return per_class(s, label, [&](const std::vector<NodeId>& m) {
    for (NodeId x : m) {
      for (NodeId y : m) {
        const EVal xy = s.e(x, y);
        if (q4 && xy.is_neg_inf()) continue;
        for (NodeId x2 : s.children(x)) {
          if (q4 && s.eps(x2) < xy.omega_part()) continue;
          for (NodeId y2 : s.children(y)) {
            if (!s.between(x2, y2)) continue;
            const EVal low = s.e(x2, y2).level();
            if (q4 && low == xy.level()) {
              return failed(label, {x, y, x2, y2}, "child pair keeps level " + low.to_string());
            }
            if (!q4 && low > xy.level()) {
              return failed(label, {x, y, x2, y2}, "child level " + low.to_string() + " above parent level");
            }
          }
        }
      }
    }
    return AxiomResult{label, true, {}, {}};
  });
}

inline AxiomResult check_q6(const KStruct& s) {
  return per_class(s, "Q6", [&](const std::vector<NodeId>& m) {
    for (NodeId x : m) {
      for (NodeId y : m) {
        const EVal v = s.e(x, y);
        if (v.is_neg_inf() || v.l() == s.rho(x)) continue;
        if (!s.rn().member(s.depth(x), v.l())) {
          return failed("Q6", {x, y}, v.l().to_string() + " not in R_" + std::to_string(s.depth(x)));
        }
      }
    }
    return AxiomResult{"Q6", true, {}, {}};
  });
}

}  // namespace detail

inline Report check_axioms(const KStruct& s) {
  Report r;
  r.results.push_back(detail::check_tree(s));
  r.results.push_back(detail::check_labels(s));
  r.results.push_back(detail::check_p6(s));
  r.results.push_back(detail::check_domain(s));
  r.results.push_back(detail::check_q0(s));
  r.results.push_back(detail::check_q1(s));
  r.results.push_back(detail::check_q2(s));
  r.results.push_back(detail::check_q3(s));
  r.results.push_back(detail::check_q4_q5(s, true));
  r.results.push_back(detail::check_q4_q5(s, false));
  r.results.push_back(detail::check_q6(s));
  return r;
}

inline bool certified(const KStruct& s) { return check_axioms(s).ok(); }

// -- tuples ------------------------------------------------------------------

using Tuple = std::vector<NodeId>;
using Colors = std::vector<std::uint64_t>;

// Atomic equivalence of the partial map xs[i] -> ys[i] (root to root), with
// exact E values between tuple members.
inline bool atomic_equiv(const KStruct& s, const Tuple& xs, const Tuple& ys,
                         const Colors* colors = nullptr) {
  if (xs.size() != ys.size()) fail(ErrorCode::kPrecondition, "tuple lengths differ");
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId x = xs[i];
    const NodeId y = ys[i];
    if (s.is_root(x) != s.is_root(y)) return false;
    if (colors && colors->at(x) != colors->at(y)) return false;
    if (s.is_root(x)) continue;
    if (s.rho(x) != s.rho(y) || s.eps(x) != s.eps(y)) return false;
    if ((s.parent(x) == kRoot) != (s.parent(y) == kRoot)) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const NodeId a = xs[i], b = xs[j], c = ys[i], d = ys[j];
      if ((a == b) != (c == d)) return false;
      if (s.precedes_eq(a, b) != s.precedes_eq(c, d)) return false;
      if (!s.is_root(a) && !s.is_root(c)) {
        if ((s.parent(a) == b) != (s.parent(c) == d)) return false;
      }
      if (j < i || s.is_root(a) || s.is_root(b)) continue;
      if (s.e_total(a, b) != s.e_total(c, d)) return false;
      if (s.between(a, b) != s.between(c, d)) return false;
    }
  }
  return true;
}

struct PairedTuples {
  Tuple xs;
  Tuple ys;
};

// Closes a paired tuple under P: missing ancestor pairs are inserted right
// before their first descendant. nullopt when depths differ.
inline std::optional<PairedTuples> close_paired(const KStruct& s, const Tuple& xs, const Tuple& ys) {
  if (xs.size() != ys.size()) fail(ErrorCode::kPrecondition, "tuple lengths differ");
  PairedTuples out;
  std::vector<std::pair<NodeId, NodeId>> seen;
  auto present = [&](NodeId a, NodeId b) {
    return std::find(seen.begin(), seen.end(), std::make_pair(a, b)) != seen.end();
  };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const NodeId x = xs[i];
    const NodeId y = ys[i];
    if (s.depth(x) != s.depth(y)) return std::nullopt;
    auto px = s.path(x);
    auto py = s.path(y);
    for (std::size_t k = 0; k + 1 < px.size(); ++k) {
      if (present(px[k], py[k])) continue;
      seen.emplace_back(px[k], py[k]);
      out.xs.push_back(px[k]);
      out.ys.push_back(py[k]);
    }
    seen.emplace_back(x, y);
    out.xs.push_back(x);
    out.ys.push_back(y);
  }
  return out;
}

inline bool closed_under_parent(const KStruct& s, const Tuple& xs) {
  for (NodeId x : xs) {
    if (s.is_root(x) || s.parent(x) == kRoot) continue;
    if (std::find(xs.begin(), xs.end(), s.parent(x)) == xs.end()) return false;
  }
  return true;
}

}  // namespace scottrank
