#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "quantum3/complex3.hpp"
#include "quantum3/error.hpp"
#include "quantum3/hempel.hpp"
#include "quantum3/seifert.hpp"
#include "quantum3/statesum.hpp"
#include "verify.hpp"

#ifndef QUANTUM3_DEFAULT_ASSET_DIR
#define QUANTUM3_DEFAULT_ASSET_DIR "assets"
#endif

namespace quantum3::tools {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Globals {
  double tol = 1e-8;
  int jobs = 1;
};

struct StatesumArgs {
  std::string file;
  int r = 0;
  long s = 1;
  bool refined = false;
  bool use_float = false;
};

struct SeifertArgs {
  std::string symbol;
  int r = 0;
  long s = 1;
  std::string mode = "hansen";
  bool refined = false;
};

struct HempelArgs {
  std::string symbol;
  long k = 1;
  int r_max = 3;
  std::string csv;
};

struct VerifyArgs {
  std::string suite;
  int r = 5;
  std::string file;
  bool use_float = false;
};

struct DedekindArgs {
  long b = 0;
  long a = 1;
};

std::string resolve(const std::string& path) {
  if (fs::exists(path)) return path;
  const fs::path in_assets = fs::path(asset_dir()) / fs::path(path).filename();
  if (fs::exists(in_assets)) return in_assets.string();
  return path;
}

json symbol_json(const seifert::SeifertSymbol& sym) { return seifert::to_string(sym); }

int cmd_statesum(const StatesumArgs& a, const Globals& g, std::ostream& out) {
  const auto t = complex3::load_triangulation_file(resolve(a.file));
  statesum::Options opts;
  opts.arithmetic = a.use_float ? statesum::Arithmetic::kFloat : statesum::Arithmetic::kExact;
  opts.jobs = g.jobs;
  const auto res = a.refined ? statesum::tv_prime(t, a.r, a.s, opts) : statesum::tv(t, a.r, a.s, opts);
  json j{{"file", a.file},
         {"r", res.r},
         {"s", res.s},
         {"refined", res.refined},
         {"arithmetic", a.use_float ? "float" : "exact"},
         {"value", res.value},
         {"colorings", res.coloring_count}};
  out << j.dump() << '\n';
  return 0;
}

int cmd_seifert(const SeifertArgs& a, std::ostream& out) {
  const auto sym = seifert::parse_symbol(a.symbol);
  json j{{"symbol", symbol_json(sym)},
         {"euler_number", seifert::euler_number(sym).get_str()},
         {"mode", a.mode},
         {"r", a.r},
         {"s", a.s},
         {"refined", a.refined}};
  if (a.mode == "closed_form") {
    const long order = seifert::check_uniform_hypotheses(sym);
    if (a.r % order != 0) {
      fail(ErrorKind::kHypothesis, "closed forms need r divisible by the cone order " + std::to_string(order));
    }
    const auto cert = seifert::check_unit_criterion(sym);
    if (!cert) {
      j["value"] = 0.0;
      j["vanishing"] = true;
    } else {
      if (a.r != order) {
        fail(ErrorKind::kOutOfScope, "with a unit certificate the closed form covers r = " + std::to_string(order) + " only");
      }
      const auto cf = seifert::tv_closed_form(sym, a.s, a.refined);
      j["value"] = cf.value;
      j["vanishing"] = false;
      j["b_star"] = cert->b_star;
    }
  } else {
    if (a.refined) {
      j["value"] = seifert::tv_prime_seifert(sym, a.r, a.s);
    } else {
      if (a.s != 1) fail(ErrorKind::kOutOfScope, "the hansen mode computes TV_{r,1} only; use --mode closed_form");
      const auto ratio = seifert::hansen_ratio(sym, a.r);
      j["value"] = std::norm(ratio);
      j["tau_ratio"] = {ratio.real(), ratio.imag()};
    }
    j["note"] = "Hansen's formula gives TV_{r,1}; other s need the closed forms";
  }
  out << j.dump() << '\n';
  return 0;
}

int cmd_hempel(const HempelArgs& a, const Globals& g, std::ostream& out) {
  const auto sym = seifert::parse_symbol(a.symbol);
  const auto pc = hempel::periodic_class(sym);
  const auto rep = hempel::report(sym, a.k, a.r_max, g.tol);
  const std::string csv = hempel::to_csv(rep);
  if (a.csv == "-") {
    out << csv;
    return 0;
  }
  if (!a.csv.empty()) {
    std::ofstream f(a.csv);
    if (!f) fail(ErrorKind::kPrecondition, "cannot write " + a.csv);
    f << csv;
  }
  json rows = json::array();
  for (const auto& row : rep.rows) {
    json x{{"r", row.r}, {"s", row.s}, {"refined", row.refined}, {"status", row.status}, {"route", row.route}};
    if (row.value_a) x["value_A"] = *row.value_a;
    if (row.value_b) x["value_B"] = *row.value_b;
    if (row.status == "ok") x["equal"] = row.equal;
    if (row.int_a) x["int_A"] = *row.int_a;
    if (row.int_b) x["int_B"] = *row.int_b;
    rows.push_back(std::move(x));
  }
  json j{{"symbol_A", symbol_json(rep.symbol_a)},
         {"symbol_B", symbol_json(rep.symbol_b)},
         {"k", rep.k},
         {"k_star", rep.k_star},
         {"order_d", pc.order_d},
         {"surface_genus", pc.surface_genus},
         {"trivial", hempel::is_trivial_pair(sym, a.k)},
         {"verdict", hempel::to_string(rep.verdict, rep.r_max)},
         {"rows", rows}};
  out << j.dump() << '\n';
  return 0;
}

int cmd_verify(const VerifyArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const auto arithmetic = a.use_float ? statesum::Arithmetic::kFloat : statesum::Arithmetic::kExact;
  const std::string file = resolve(a.file.empty() ? "s3_boundary4simplex.json" : a.file);
  std::vector<SuiteResult> parts;
  if (a.suite == "splitting") {
    parts.push_back(verify_splitting(complex3::load_triangulation_file(file), a.file.empty() ? file : a.file, a.r,
                                     arithmetic, g.tol, g.jobs));
  } else if (a.suite == "hansen-vs-statesum") {
    parts.push_back(verify_hansen_anchors(asset_dir(), a.r, g.tol, g.jobs));
    parts.push_back(verify_hansen_closed_form(g.tol));
  } else if (a.suite == "vanishing") {
    parts.push_back(verify_vanishing());
  } else if (a.suite == "sign-change") {
    parts.push_back(verify_sign_change(complex3::load_triangulation_file(file), a.r, 1e-10));
  } else if (a.suite == "dedekind") {
    parts.push_back(verify_dedekind(200, 5000, 20261016, 1e-9));
  } else if (a.suite == "hempel-examples") {
    parts.push_back(verify_hempel_distinguishable(g.tol));
    parts.push_back(verify_hempel_indistinguishable(g.tol));
  } else {
    fail(ErrorKind::kPrecondition, "unknown suite " + a.suite);
  }
  json checks = json::array();
  bool passed = true;
  for (const auto& part : parts) {
    for (const auto& c : part.checks) {
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
      if (!c.pass) {
        passed = false;
        err << "failed: " << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << '\n';
      }
    }
  }
  out << json{{"suite", a.suite}, {"passed", passed}, {"checks", checks}}.dump() << '\n';
  return passed ? 0 : 2;
}

int cmd_dedekind(const DedekindArgs& a, std::ostream& out) {
  const mpq_class v = seifert::dedekind_sum(a.b, a.a);
  out << json{{"b", a.b}, {"a", a.a}, {"value", v.get_str()}, {"approx", v.get_d()}}.dump() << '\n';
  return 0;
}

}  // namespace

std::string asset_dir() {
  if (const char* env = std::getenv("QUANTUM3_ASSETS"); env && *env) return env;
  return QUANTUM3_DEFAULT_ASSET_DIR;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Turaev-Viro invariants of triangulations and Seifert fiber spaces", "quantum3"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol", g.tol, "Relative tolerance for comparisons")->check(CLI::PositiveNumber);
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1, 1024));

  StatesumArgs st;
  auto* statesum_cmd = app.add_subcommand("statesum", "TV_{r,s} of a triangulation file");
  statesum_cmd->add_option("file", st.file, "Triangulation JSON")->required();
  statesum_cmd->add_option("--r", st.r, "Level")->required();
  statesum_cmd->add_option("--s", st.s, "Root index, coprime to r");
  statesum_cmd->add_flag("--refined", st.refined, "TV' (odd r, even s)");
  statesum_cmd->add_flag("--float", st.use_float, "Double precision weights");

  SeifertArgs se;
  auto* seifert_cmd = app.add_subcommand("seifert", "TV of a Seifert fiber space");
  seifert_cmd->add_option("symbol", se.symbol, "\"g; a1/b1, a2/b2, ...\"")->required();
  seifert_cmd->add_option("--r", se.r, "Level")->required();
  seifert_cmd->add_option("--s", se.s, "Root index");
  seifert_cmd->add_option("--mode", se.mode, "closed_form or hansen")
      ->check(CLI::IsMember({"closed_form", "hansen"}));
  seifert_cmd->add_flag("--refined", se.refined, "TV' (odd r, even s)");

  HempelArgs he;
  auto* hempel_cmd = app.add_subcommand("hempel", "Compare the mapping tori of f and f^k");
  hempel_cmd->add_option("symbol", he.symbol, "Symbol with Euler number 0")->required();
  hempel_cmd->add_option("--k", he.k, "Power")->required();
  hempel_cmd->add_option("--r-max", he.r_max, "Largest level")->required();
  hempel_cmd->add_option("--csv", he.csv, "Write the CSV table here ('-' for stdout)");

  VerifyArgs ve;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("suite", ve.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(
          {"splitting", "hansen-vs-statesum", "vanishing", "sign-change", "dedekind", "hempel-examples"}));
  verify_cmd->add_option("--r", ve.r, "Level");
  verify_cmd->add_option("--file", ve.file, "Triangulation JSON");
  verify_cmd->add_flag("--float", ve.use_float, "Double precision state sums");

  DedekindArgs de;
  auto* dedekind_cmd = app.add_subcommand("dedekind", "Dedekind sum s(b, a)");
  dedekind_cmd->add_option("b", de.b)->required();
  dedekind_cmd->add_option("a", de.a)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*statesum_cmd) return cmd_statesum(st, g, out);
    if (*seifert_cmd) return cmd_seifert(se, out);
    if (*hempel_cmd) return cmd_hempel(he, g, out);
    if (*verify_cmd) return cmd_verify(ve, g, out, err);
    if (*dedekind_cmd) return cmd_dedekind(de, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace quantum3::tools
