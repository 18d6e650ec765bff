// scottrank: build and check approximations of the limit structure.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scottrank/scottrank.hpp"

namespace scottrank {
namespace {

enum Exit { kOk = 0, kSuiteFailed = 1, kInput = 2, kBudget = 3 };

struct Options {
  std::vector<std::string> orders;
  std::string mode = "wfc";
  std::string rn = "trivial";
  std::uint64_t seed = 1;
  std::uint64_t stages = 3;
  std::uint32_t depth = 3;
  std::size_t samples = 100;
  std::uint64_t count = 16;
  std::uint64_t budget = RnSystem::kDefaultBudget;
  std::string out;
  std::string snapshot;
  std::string suite = "axioms";
  std::string golden = std::string(SCOTTRANK_GOLDEN_DIR) + "/finite_ranks.json";
  bool json = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kParse, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const char* what) {
  return detail::parsing(what, [&] { return Json::parse(text); });
}

// inline JSON or a path to a JSON file
OrderSpec order_arg(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\n");
  const bool inline_json = first != std::string::npos && s[first] == '{';
  return spec_from_json(parse_json(inline_json ? s : slurp(s), "order spec"));
}

void write_out(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kParse, "cannot write " + path);
  out << text;
}

void print_report(const Report& r, bool json) {
  if (json) {
    std::cout << to_json(r).dump(2) << "\n";
  } else {
    std::cout << r.summary();
  }
}

int order_info(const Options& o) {
  if (o.orders.size() != 1) fail(ErrorCode::kParse, "order-info takes one --order");
  auto L = LinOrder::make(order_arg(o.orders[0]));
  auto R = RnSystem::make(L, rn_mode_from_string(o.rn), o.budget);
  Json rn = Json::array();
  for (std::uint64_t n = 1; n <= 3; ++n) {
    Json members = Json::array();
    for (const auto& a : L->prefix(o.count)) {
      if (R->member(n, a)) members.push_back(a.to_string());
    }
    rn.push_back({{"n", n}, {"members", std::move(members)}});
  }
  Json prefix = Json::array();
  for (const auto& a : L->prefix(o.count)) prefix.push_back(a.to_string());
  Json out = {{"order", to_json(L->spec())},
              {"type", L->spec().to_string()},
              {"well_founded", L->is_well_founded()},
              {"wf", L->wf().to_string()},
              {"wfc", L->wfc().to_string()},
              {"rn", rn_mode_name(R->mode())},
              {"prefix", std::move(prefix)},
              {"rn_prefix", std::move(rn)}};
  if (o.json) {
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  std::cout << "order " << L->spec().to_string() << "\nwf " << L->wf().to_string() << "\nwfc "
            << L->wfc().to_string() << "\n";
  for (const auto& r : out["rn_prefix"]) {
    std::cout << "R_" << r["n"].get<int>() << ":";
    for (const auto& m : r["members"]) std::cout << " " << m.get<std::string>();
    std::cout << "\n";
  }
  return kOk;
}

int model(const Options& o) {
  if (o.orders.size() != 1) fail(ErrorCode::kParse, "model takes one --order");
  if (o.out.empty()) fail(ErrorCode::kParse, "model needs --out");
  auto L = LinOrder::make(order_arg(o.orders[0]));
  auto R = RnSystem::make(L, rn_mode_from_string(o.rn), o.budget);
  Approx a = grow(new_approx(L, R, o.seed), o.stages);
  Report r = check_approx(a);
  if (!r.ok()) {
    print_report(r, o.json);
    return kSuiteFailed;
  }
  write_out(o.out, to_json(a).dump(1) + "\n");
  if (o.json) {
    std::cout << Json{{"out", o.out}, {"nodes", a.size()}, {"stage", a.stage}}.dump(2) << "\n";
  } else {
    std::cout << "wrote " << o.out << ": " << a.size() << " nodes, stage " << a.stage << "\n";
  }
  return kOk;
}

int verify(const Options& o) {
  Report r;
  if (o.suite == "finite-rank") {
    r = finite_rank_suite(parse_json(slurp(o.golden), "golden file"));
  } else {
    if (o.snapshot.empty()) fail(ErrorCode::kParse, "verify needs --snapshot");
    Approx a = approx_from_json(parse_json(slurp(o.snapshot), "snapshot"));
    if (o.suite == "axioms") {
      r = check_approx(a);
    } else if (o.suite == "games") {
      r = games_suite(a, o.samples, o.depth, o.seed);
    } else if (o.suite == "distinguish") {
      r = distinguish_suite(a, o.samples, o.seed);
    } else if (o.suite == "freeness") {
      r = freeness_suite(a, o.samples, o.depth, 3, o.seed);
    } else {
      fail(ErrorCode::kParse, "unknown suite " + o.suite);
    }
  }
  print_report(r, o.json);
  return r.ok() ? kOk : kSuiteFailed;
}

int spectrum(const Options& o) {
  if (o.orders.empty()) fail(ErrorCode::kParse, "spectrum needs at least one --order");
  std::vector<OrderSpec> specs;
  for (const auto& s : o.orders) specs.push_back(order_arg(s));
  SpectrumMode mode;
  if (o.mode == "wfc") {
    mode = SpectrumMode::kWfc;
  } else if (o.mode == "wf") {
    mode = SpectrumMode::kWf;
  } else {
    fail(ErrorCode::kParse, "mode must be wfc or wf");
  }
  auto d = predicted_spectrum(specs, mode);
  if (o.json) {
    std::cout << to_json(d).dump(2) << "\n";
  } else {
    std::cout << d.to_string() << "\n";
  }
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Scott rank spectra via limit structures"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c) { c->add_flag("--json", o.json, "JSON on stdout"); };
  auto rn_opts = [&](CLI::App* c) {
    c->add_option("--rn", o.rn, "trivial or greedy")->check(CLI::IsMember({"trivial", "greedy"}));
    c->add_option("--rn-budget", o.budget, "R_n search budget")->check(CLI::PositiveNumber);
  };

  auto* info = app.add_subcommand("order-info", "wf, wfc and the first R_n members");
  info->add_option("--order", o.orders, "order spec JSON or file")->required();
  info->add_option("--count", o.count, "prefix length")->check(CLI::PositiveNumber);
  rn_opts(info);
  common(info);

  auto* mdl = app.add_subcommand("model", "grow an approximation and write a snapshot");
  mdl->add_option("--order", o.orders, "order spec JSON or file")->required();
  mdl->add_option("--seed", o.seed);
  mdl->add_option("--stages", o.stages);
  mdl->add_option("--out", o.out, "snapshot path")->required();
  rn_opts(mdl);
  common(mdl);

  auto* ver = app.add_subcommand("verify", "run a check suite");
  ver->add_option("--snapshot", o.snapshot);
  ver->add_option("--suite", o.suite)->check(CLI::IsMember({"axioms", "games", "distinguish", "freeness", "finite-rank"}));
  ver->add_option("--seed", o.seed);
  ver->add_option("--depth", o.depth)->check(CLI::PositiveNumber);
  ver->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
  ver->add_option("--golden", o.golden, "golden ranks for finite-rank");
  common(ver);

  auto* spc = app.add_subcommand("spectrum", "predicted Scott spectrum");
  spc->add_option("--order", o.orders, "order spec JSON or file, repeatable")->required();
  spc->add_option("--mode", o.mode)->check(CLI::IsMember({"wfc", "wf"}));
  common(spc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  try {
    if (*info) return order_info(o);
    if (*mdl) return model(o);
    if (*ver) return verify(o);
    return spectrum(o);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.is_budget() ? kBudget : kInput;
  }
}

}  // namespace
}  // namespace scottrank

int main(int argc, char** argv) { return scottrank::run(argc, argv); }
