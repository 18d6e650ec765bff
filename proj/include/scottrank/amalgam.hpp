#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scottrank/error.hpp"
#include "scottrank/kstruct.hpp"

namespace scottrank {

inline void require_same_base(const KStruct& a, const KStruct& b) {
  if (a.order_ptr() != b.order_ptr() || a.rn_ptr() != b.rn_ptr()) {
    fail(ErrorCode::kOrderMismatch, "structures over different orders or R_n systems");
  }
}

inline void require_certified(const KStruct& s, const char* what) {
  auto r = check_axioms(s);
  if (!r.ok()) fail(ErrorCode::kUncertified, std::string(what) + ": " + r.first_failure()->label);
}

// Injective map src -> dst preserving root, P, rho, eps and E.
struct Embedding {
  KStruct src;
  KStruct dst;
  std::vector<NodeId> map;

  static Embedding make(KStruct src, KStruct dst, std::vector<NodeId> map) {
    require_same_base(src, dst);
    if (map.size() != src.size()) fail(ErrorCode::kInvalidEmbedding, "map size differs from source");
    if (map[kRoot] != kRoot) fail(ErrorCode::kInvalidEmbedding, "root not preserved");
    std::vector<bool> used(dst.size(), false);
    for (NodeId x = 0; x < src.size(); ++x) {
      const NodeId y = map[x];
      if (!dst.contains(y) || used[y]) fail(ErrorCode::kInvalidEmbedding, "map not injective");
      used[y] = true;
      if (x == kRoot) continue;
      if (dst.is_root(y) || map[src.parent(x)] != dst.parent(y) || src.rho(x) != dst.rho(y) ||
          src.eps(x) != dst.eps(y)) {
        fail(ErrorCode::kInvalidEmbedding, "labels or parent not preserved at " + std::to_string(x));
      }
    }
    for (NodeId x = 1; x < src.size(); ++x) {
      for (NodeId z = 1; z <= x; ++z) {
        if (src.e_total(x, z) != dst.e_total(map[x], map[z])) {
          fail(ErrorCode::kInvalidEmbedding, "E not preserved at " + std::to_string(x) + "," +
                                                 std::to_string(z));
        }
      }
    }
    return Embedding{std::move(src), std::move(dst), std::move(map)};
  }

  static Embedding identity(const KStruct& s) {
    std::vector<NodeId> m(s.size());
    for (NodeId x = 0; x < s.size(); ++x) m[x] = x;
    return Embedding{s, s, std::move(m)};
  }
};

struct SubStructure {
  KStruct sub;
  std::vector<NodeId> to_parent;  // sub id -> id in the original
};

// Substructure on nodes and their ancestors, renumbered in id order.
inline SubStructure induced(const KStruct& s, const std::vector<NodeId>& nodes) {
  std::vector<bool> keep(s.size(), false);
  keep[kRoot] = true;
  for (NodeId x : nodes) {
    for (NodeId y : s.path(x)) keep[y] = true;
  }
  SubStructure out{KStruct(s.order_ptr(), s.rn_ptr()), {kRoot}};
  std::vector<NodeId> to_sub(s.size(), kRoot);
  for (NodeId x = 1; x < s.size(); ++x) {
    if (!keep[x]) continue;
    to_sub[x] = out.sub.add_node(to_sub[s.parent(x)], s.rho(x), s.eps(x));
    out.to_parent.push_back(x);
  }
  for (NodeId i = 1; i < out.sub.size(); ++i) {
    for (NodeId j = 1; j < i; ++j) {
      if (out.sub.between(i, j)) out.sub.set_e(i, j, s.e(out.to_parent[i], out.to_parent[j]));
    }
  }
  return out;
}

namespace detail {

// Adds C's node c to d. phi maps the already placed C nodes into d; E(b,c) is
// the max over placed a between c of min(E(b,phi a), E(a,c)), else -inf.
inline NodeId place_point(KStruct& d, const KStruct& c_struct,
                          const std::vector<std::optional<NodeId>>& phi, NodeId c) {
  const auto& p = phi.at(c_struct.parent(c));
  if (!p) fail(ErrorCode::kPrecondition, "parent of the new point is not placed");
  const NodeId cs = d.add_node(*p, c_struct.rho(c), c_struct.eps(c));
  std::vector<std::pair<NodeId, EVal>> witnesses;
  for (NodeId a = 1; a < c_struct.size(); ++a) {
    if (a == c || !phi[a] || !c_struct.between(a, c)) continue;
    witnesses.emplace_back(*phi[a], c_struct.e(a, c));
  }
  for (NodeId b : std::vector<NodeId>(d.class_members(d.class_of(cs)))) {
    if (b == cs) continue;
    EVal best = EVal::neg_inf();
    for (const auto& [pa, eac] : witnesses) best = emax(best, emin(d.e(b, pa), eac));
    d.set_e(b, cs, best);
  }
  return cs;
}

}  // namespace detail

// B amalgamated with A + c over A.
inline KStruct amalgamate_point(const Embedding& a_in_b, const KStruct& a_plus_c, NodeId c,
                                bool check_inputs = true) {
  const KStruct& a = a_in_b.src;
  require_same_base(a, a_plus_c);
  require_same_base(a, a_in_b.dst);
  if (!a_plus_c.contains(c) || c < a.size()) {
    fail(ErrorCode::kPrecondition, "new point lies inside A");
  }
  if (a_plus_c.size() != a.size() + 1) fail(ErrorCode::kPrecondition, "A + c must add exactly one node");
  for (NodeId x = 1; x < a.size(); ++x) {
    if (a_plus_c.parent(x) != a.parent(x) || a_plus_c.rho(x) != a.rho(x) || a_plus_c.eps(x) != a.eps(x)) {
      fail(ErrorCode::kPrecondition, "A + c does not extend A");
    }
    for (NodeId z = 1; z <= x; ++z) {
      if (a_plus_c.e_total(x, z) != a.e_total(x, z)) fail(ErrorCode::kPrecondition, "A + c changes E on A");
    }
  }
  if (check_inputs) {
    require_certified(a_in_b.dst, "B");
    require_certified(a_plus_c, "A + c");
  }
  KStruct d = a_in_b.dst;
  std::vector<std::optional<NodeId>> phi(a_plus_c.size());
  for (NodeId x = 0; x < a.size(); ++x) phi[x] = a_in_b.map[x];
  detail::place_point(d, a_plus_c, phi, c);
  return d;
}

struct Amalgam {
  KStruct d;
  Embedding b_in_d;
  Embedding c_in_d;
};

inline Amalgam amalgamate(const Embedding& a_in_b, const Embedding& a_in_c, bool check_inputs = true) {
  require_same_base(a_in_b.src, a_in_c.src);
  if (!(a_in_b.src == a_in_c.src)) fail(ErrorCode::kPrecondition, "embeddings do not share A");
  if (check_inputs) {
    require_certified(a_in_b.dst, "B");
    require_certified(a_in_c.dst, "C");
  }
  const KStruct& c = a_in_c.dst;
  KStruct d = a_in_b.dst;
  std::vector<std::optional<NodeId>> phi(c.size());
  for (NodeId x = 0; x < a_in_c.src.size(); ++x) phi[a_in_c.map[x]] = a_in_b.map[x];
  for (NodeId x = 1; x < c.size(); ++x) {
    if (phi[x]) continue;
    phi[x] = detail::place_point(d, c, phi, x);
  }
  std::vector<NodeId> bmap(a_in_b.dst.size());
  for (NodeId x = 0; x < bmap.size(); ++x) bmap[x] = x;
  std::vector<NodeId> cmap(c.size());
  for (NodeId x = 0; x < c.size(); ++x) cmap[x] = *phi[x];
  Embedding b_in_d{a_in_b.dst, d, std::move(bmap)};
  Embedding c_in_d{c, d, std::move(cmap)};
  return Amalgam{std::move(d), std::move(b_in_d), std::move(c_in_d)};
}

struct Extended {
  KStruct s;
  NodeId node;
};

// Fresh leaf with E = -inf to everything else.
inline Extended isolate_embed(const KStruct& s, NodeId parent, const OrderElem& rho, std::uint64_t eps) {
  if (!s.is_root(parent) && !(rho < s.rho(parent))) {
    fail(ErrorCode::kPrecondition, "P6: rho " + rho.to_string() + " not below parent rho");
  }
  KStruct out = s;
  const NodeId x = out.add_node(parent, rho, eps);
  return Extended{std::move(out), x};
}

// -- tuple extension ---------------------------------------------------------

inline EVal margin(const KStruct& s, NodeId x, const OrderElem& beta, std::uint64_t m) {
  return emin(EVal::pair(s.rho(x), 0), EVal::pair(beta, m));
}

inline void check_extension_hypotheses(const KStruct& s, const Tuple& us, const Tuple& us2, NodeId v,
                                       const OrderElem& beta, std::uint64_t m) {
  if (us.size() != us2.size()) fail(ErrorCode::kPrecondition, "tuple lengths differ");
  if (!closed_under_parent(s, us) || !closed_under_parent(s, us2)) {
    fail(ErrorCode::kNotClosed, "tuples must be closed under P");
  }
  if (!atomic_equiv(s, us, us2)) fail(ErrorCode::kNotAtomicEquiv, "tuples are not atomically equivalent");
  s.order().check(beta);
  if (!s.order().in_wf_part(beta)) fail(ErrorCode::kBetaIllFounded, "beta " + beta.to_string());
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (s.is_root(us[i])) continue;
    if (s.e_total(us[i], us2[i]) < margin(s, us[i], beta, m)) {
      fail(ErrorCode::kMarginTooSmall, "E(u,u') below margin at position " + std::to_string(i));
    }
  }
  auto eps_ok = [&](NodeId x) {
    for (NodeId y : s.path(x)) {
      if (s.eps(y) >= m) return false;
    }
    return true;
  };
  for (NodeId x : us) {
    if (!eps_ok(x)) fail(ErrorCode::kEpsilonBound, "eps >= m on node " + std::to_string(x));
  }
  for (NodeId x : us2) {
    if (!eps_ok(x)) fail(ErrorCode::kEpsilonBound, "eps >= m on node " + std::to_string(x));
  }
  if (!eps_ok(v)) fail(ErrorCode::kEpsilonBound, "eps >= m on node " + std::to_string(v));
}

// Given us ~ us2 at margin (beta, m) and v with P(v) in us, adds v' so that
// us+v and us2+v' keep both hypotheses.
inline Extended extend_tuple(const KStruct& s, const Tuple& us, const Tuple& us2, NodeId v,
                             const OrderElem& beta, std::uint64_t m) {
  if (s.is_root(v)) fail(ErrorCode::kPrecondition, "v must not be the root");
  check_extension_hypotheses(s, us, us2, v, beta, m);
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (us[i] == v) return Extended{s, us2[i]};
  }
  const NodeId u = s.parent(v);
  NodeId u2 = kRoot;
  if (u != kRoot) {
    auto it = std::find(us.begin(), us.end(), u);
    if (it == us.end()) fail(ErrorCode::kParentMissing, "P(v) is not among the tuple");
    u2 = us2[static_cast<std::size_t>(it - us.begin())];
  }

  std::vector<NodeId> domain(us.begin(), us.end());
  domain.insert(domain.end(), us2.begin(), us2.end());
  domain.push_back(v);
  SubStructure a = induced(s, domain);
  std::vector<NodeId> to_sub(s.size(), kRoot);
  for (NodeId i = 0; i < a.to_parent.size(); ++i) to_sub[a.to_parent[i]] = i;

  // mates of v among the tuple, paired as (y_i, y_i')
  std::vector<std::pair<NodeId, NodeId>> mates;
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (s.is_root(us[i]) || !s.between(us[i], v)) continue;
    mates.emplace_back(us[i], us2[i]);
  }

  KStruct c = a.sub;
  const NodeId vp = c.add_node(to_sub[u2], s.rho(v), s.eps(v));
  std::vector<std::optional<EVal>> ev(s.size());
  for (const auto& [y, y2] : mates) ev[y2] = s.e(v, y);  // item 2
  auto via_primes = [&](NodeId w) {
    EVal best = EVal::neg_inf();
    for (const auto& [y, y2] : mates) best = emax(best, emin(*ev[y2], s.e(y2, w)));
    return best;
  };
  for (const auto& [y, y2] : mates) {
    if (!ev[y]) ev[y] = via_primes(y);  // item 3
  }
  if (!ev[v]) {
    EVal bound;
    const auto n = s.depth(v);
    if (s.rn().member(n, beta)) {
      bound = margin(s, v, beta, m);
    } else if (auto gamma = s.rn().least_above(n, beta)) {
      bound = emin(EVal::pair(s.rho(v), 0), EVal::pair(*gamma, 0));
    } else {
      bound = EVal::pair(s.rho(v), 0);
    }
    ev[v] = emax(via_primes(v), bound);  // item 4
  }
  for (NodeId w = 0; w < s.size(); ++w) {
    if (ev[w]) c.set_e(to_sub[w], vp, *ev[w]);
  }
  if (auto r = check_axioms(c); !r.ok()) {
    fail(ErrorCode::kPrecondition, "extension candidate left the class: " + r.first_failure()->label);
  }
  Embedding emb{a.sub, s, a.to_parent};
  KStruct d = amalgamate_point(emb, c, vp, false);
  return Extended{std::move(d), static_cast<NodeId>(s.size())};
}

struct ExtendedTuples {
  KStruct s;
  Tuple us;
  Tuple us2;
  NodeId node;
};

// extend_tuple along the ancestors of v not yet in us, then v itself
inline ExtendedTuples extend_along_path(const KStruct& s, Tuple us, Tuple us2, NodeId v,
                                        const OrderElem& beta, std::uint64_t m) {
  KStruct cur = s;
  NodeId last = kRoot;
  for (NodeId a : s.path(v)) {
    auto it = std::find(us.begin(), us.end(), a);
    if (it != us.end()) {
      last = us2[static_cast<std::size_t>(it - us.begin())];
      continue;
    }
    Extended e = extend_tuple(cur, us, us2, a, beta, m);
    cur = std::move(e.s);
    us.push_back(a);
    us2.push_back(e.node);
    last = e.node;
  }
  return ExtendedTuples{std::move(cur), std::move(us), std::move(us2), last};
}

}  // namespace scottrank
