#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "scottrank/error.hpp"
#include "scottrank/finstruct.hpp"
#include "scottrank/games.hpp"
#include "scottrank/kstruct.hpp"
#include "scottrank/limitgen.hpp"
#include "scottrank/linorder.hpp"
#include "scottrank/ordinal.hpp"
#include "scottrank/spectra.hpp"

namespace scottrank {

using Json = nlohmann::json;

namespace detail {

template <typename F>
auto parsing(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    fail(ErrorCode::kParse, std::string(what) + ": " + e.what());
  }
}

}  // namespace detail

// -- ordinals and orders -----------------------------------------------------

inline Json to_json(const OrdCNF& a) {
  Json out = Json::array();
  for (const auto& t : a.terms()) out.push_back({t.exponent, t.coefficient});
  return out;
}

inline OrdCNF cnf_from_json(const Json& j) {
  return detail::parsing("cnf", [&] {
    if (!j.is_array()) fail(ErrorCode::kParse, "cnf must be a list of [exponent, coefficient]");
    std::vector<CnfTerm> terms;
    for (const auto& t : j) {
      if (!t.is_array() || t.size() != 2) fail(ErrorCode::kParse, "cnf term must be [exponent, coefficient]");
      terms.push_back(CnfTerm{t[0].get<std::uint32_t>(), t[1].get<std::uint64_t>()});
    }
    return OrdCNF::from_terms(std::move(terms));
  });
}

inline Json to_json(const OrderSpec& s) {
  switch (s.kind) {
    case OrderKind::kFinite: return {{"kind", "finite"}, {"n", s.n}};
    case OrderKind::kOrdinal: return {{"kind", "ordinal"}, {"cnf", to_json(s.lambda)}};
    case OrderKind::kLimitPlusZeta: return {{"kind", "limit_plus_zeta"}, {"cnf", to_json(s.lambda)}};
  }
  return nullptr;
}

inline OrderSpec spec_from_json(const Json& j) {
  return detail::parsing("order spec", [&] {
    const std::string kind = j.at("kind").get<std::string>();
    OrderSpec s;
    if (kind == "finite") {
      s = OrderSpec::finite(j.at("n").get<std::uint64_t>());
    } else if (kind == "ordinal") {
      s = OrderSpec::ordinal(cnf_from_json(j.at("cnf")));
    } else if (kind == "limit_plus_zeta") {
      s = OrderSpec::limit_plus_zeta(cnf_from_json(j.at("cnf")));
    } else {
      fail(ErrorCode::kParse, "unknown order kind " + kind);
    }
    LinOrder::make(s);
    return s;
  });
}

inline Json to_json(const OrderElem& a) {
  switch (a.tag()) {
    case ElemTag::kFin: return {"fin", a.fin_index()};
    case ElemTag::kOrd: return {"ord", to_json(a.ord_value())};
    case ElemTag::kZeta: return {"zeta", a.zeta_offset()};
  }
  return nullptr;
}

inline OrderElem elem_from_json(const LinOrder& L, const Json& j) {
  return detail::parsing("order element", [&] {
    if (!j.is_array() || j.size() != 2) fail(ErrorCode::kParse, "element must be [tag, value]");
    const std::string tag = j[0].get<std::string>();
    if (tag == "fin") return L.fin(j[1].get<std::uint64_t>());
    if (tag == "ord") return L.ord(cnf_from_json(j[1]));
    if (tag == "zeta") return L.zeta(j[1].get<std::int64_t>());
    fail(ErrorCode::kParse, "unknown element tag " + tag);
  });
}

inline Json to_json(const EVal& v) {
  if (v.is_neg_inf()) return "neginf";
  if (v.is_top()) return "top";
  return {to_json(v.l()), v.n()};
}

inline EVal eval_from_json(const LinOrder& L, const Json& j) {
  return detail::parsing("E value", [&] {
    if (j.is_string()) {
      if (j == "neginf") return EVal::neg_inf();
      if (j == "top") return EVal::top();
      fail(ErrorCode::kParse, "unknown E value " + j.get<std::string>());
    }
    if (!j.is_array() || j.size() != 2) fail(ErrorCode::kParse, "E value must be [element, n]");
    return EVal::pair(elem_from_json(L, j[0]), j[1].get<std::uint64_t>());
  });
}

// -- structures --------------------------------------------------------------

inline Json to_json(const KStruct& s) {
  Json nodes = Json::array();
  nodes.push_back({{"id", 0}, {"parent", nullptr}});
  for (NodeId x = 1; x < s.size(); ++x) {
    nodes.push_back({{"id", x}, {"parent", s.parent(x)}, {"rho", to_json(s.rho(x))}, {"eps", s.eps(x)}});
  }
  Json evals = Json::array();
  for (NodeId x = 1; x < s.size(); ++x) {
    for (NodeId y = 1; y < x; ++y) {
      if (!s.between(x, y)) continue;
      const EVal v = s.e(y, x);
      if (!v.is_neg_inf()) evals.push_back({y, x, to_json(v)});
    }
  }
  return {{"order", to_json(s.order().spec())},
          {"rn", rn_mode_name(s.rn().mode())},
          {"rn_budget", s.rn().budget()},
          {"nodes", std::move(nodes)},
          {"evals", std::move(evals)}};
}

inline RnMode rn_mode_from_string(const std::string& m) {
  if (m == "trivial") return RnMode::kTrivial;
  if (m == "greedy") return RnMode::kGreedy;
  fail(ErrorCode::kParse, "unknown rn mode " + m);
}

inline KStruct kstruct_from_json(const Json& j) {
  return detail::parsing("structure", [&] {
    auto L = LinOrder::make(spec_from_json(j.at("order")));
    auto R = RnSystem::make(L, rn_mode_from_string(j.at("rn").get<std::string>()),
                            j.value("rn_budget", RnSystem::kDefaultBudget));
    KStruct s(L, R);
    const Json& nodes = j.at("nodes");
    if (!nodes.is_array() || nodes.empty() || nodes[0].at("id") != 0) fail(ErrorCode::kParse, "node list must start at the root");
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      const Json& n = nodes[i];
      if (n.at("id").get<std::size_t>() != i) fail(ErrorCode::kParse, "node ids must be 0, 1, 2, ...");
      const NodeId parent = n.at("parent").get<NodeId>();
      if (parent >= i) fail(ErrorCode::kParse, "parent must precede its child");
      s.add_node(parent, elem_from_json(*L, n.at("rho")), n.at("eps").get<std::uint64_t>());
    }
    for (const Json& e : j.at("evals")) {
      if (!e.is_array() || e.size() != 3) fail(ErrorCode::kParse, "eval entry must be [a, b, value]");
      s.set_e(e[0].get<NodeId>(), e[1].get<NodeId>(), eval_from_json(*L, e[2]));
    }
    return s;
  });
}

inline Json to_json(const Approx& a) {
  Json origin = Json::array(), log = Json::array();
  for (Origin o : a.origin) origin.push_back(origin_name(o));
  for (const auto& r : a.log) {
    log.push_back({{"kind", r.kind}, {"stage", r.stage}, {"node", r.node}, {"detail", r.detail}});
  }
  return {{"format", "scottrank-snapshot"},
          {"version", 1},
          {"structure", to_json(a.base)},
          {"colors", a.colors},
          {"next_color", a.next_color},
          {"stage", a.stage},
          {"seed", a.seed},
          {"origin", std::move(origin)},
          {"log", std::move(log)}};
}

inline Origin origin_from_string(const std::string& s) {
  if (s == "primary") return Origin::kPrimary;
  if (s == "clone") return Origin::kClone;
  if (s == "realized") return Origin::kRealized;
  fail(ErrorCode::kParse, "unknown origin " + s);
}

// re-verifies the axioms and the coloring
inline Approx approx_from_json(const Json& j) {
  Approx a = detail::parsing("snapshot", [&] {
    if (j.at("format") != "scottrank-snapshot") fail(ErrorCode::kParse, "not a snapshot");
    KStruct s = kstruct_from_json(j.at("structure"));
    Approx out{std::move(s), j.at("colors").get<Colors>(), j.at("next_color").get<std::uint64_t>(),
               j.at("stage").get<std::uint64_t>(), j.at("seed").get<std::uint64_t>(), {}, {}};
    for (const auto& o : j.at("origin")) out.origin.push_back(origin_from_string(o.get<std::string>()));
    for (const auto& r : j.at("log")) {
      out.log.push_back(RealizationRecord{r.at("kind").get<std::string>(), r.at("stage").get<std::uint64_t>(),
                                          r.at("node").get<NodeId>(), r.at("detail").get<std::string>()});
    }
    return out;
  });
  if (auto r = check_approx(a); !r.ok()) fail(ErrorCode::kUncertified, "snapshot fails " + r.summary());
  return a;
}

// -- reports -----------------------------------------------------------------

inline Json to_json(const AxiomResult& r) {
  return {{"label", r.label}, {"pass", r.pass}, {"witness", r.witness}, {"detail", r.detail}};
}

inline Json to_json(const Report& r) {
  Json results = Json::array();
  for (const auto& x : r.results) results.push_back(to_json(x));
  return {{"ok", r.ok()}, {"results", std::move(results)}};
}

inline Json to_json(const GameTranscript& t) {
  Json rounds = Json::array();
  auto node = [](NodeId x) { return x == kNoNode ? Json(nullptr) : Json(x); };
  for (const auto& r : t.rounds) {
    rounds.push_back({{"side", r.side},
                      {"challenge", node(r.challenge)},
                      {"response", node(r.response)},
                      {"level", to_json(r.level)},
                      {"depth", r.depth},
                      {"note", r.note}});
  }
  return {{"outcome", t.outcome == Outcome::kDefenderSurvived ? "defender_survived" : "challenger_won"},
          {"won_at", t.won_at},
          {"xs", t.xs},
          {"ys", t.ys},
          {"rounds", std::move(rounds)}};
}

inline Json to_json(const SpectrumDescriptor& d) {
  Json entries = Json::array();
  for (const auto& [r, prov] : d.entries) {
    Json p = Json::array();
    for (const auto& x : prov) p.push_back({{"order", to_json(x.spec)}, {"mode", spectrum_mode_name(x.mode)}});
    entries.push_back({{"rank", to_json(r)}, {"text", r.to_string()}, {"provenance", std::move(p)}});
  }
  return {{"entries", std::move(entries)}};
}

inline Json to_json(const FinStruct& a) {
  Json rels = Json::array();
  for (const auto& r : a.relations()) {
    rels.push_back({{"name", r.name}, {"arity", r.arity}, {"tuples", std::vector<Elems>(r.tuples.begin(), r.tuples.end())}});
  }
  Json out = {{"size", a.size()}, {"relations", std::move(rels)}};
  if (!a.constants().empty()) {
    Json cs = Json::array();
    for (const auto& [name, x] : a.constants()) cs.push_back({{"name", name}, {"elem", x}});
    out["constants"] = std::move(cs);
  }
  return out;
}

inline FinStruct finstruct_from_json(const Json& j) {
  return detail::parsing("finite structure", [&] {
    FinStruct a(j.at("size").get<std::size_t>());
    for (const auto& r : j.at("relations")) {
      a.add_relation(r.at("name").get<std::string>(), r.at("arity").get<std::size_t>(),
                     r.at("tuples").get<std::vector<Elems>>());
    }
    if (j.contains("constants")) {
      for (const auto& c : j.at("constants")) a.add_constant(c.at("name").get<std::string>(), c.at("elem").get<std::uint32_t>());
    }
    return a;
  });
}

}  // namespace scottrank
