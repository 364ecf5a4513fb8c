// hyperschemes: command-line front end.
//
// Exit codes: 0 success, 1 parse error (missing or malformed input),
// 2 scheme or axiom failure, 3 non-commutative input where characters are
// needed, 4 parameter error.

#include "hyperschemes/families.hpp"
#include "hyperschemes/io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <numbers>
#include <utility>

namespace fs = std::filesystem;
using namespace hyperschemes;

namespace {

struct RunConfig {
  std::string command;
  std::string input;
  std::optional<double> tol;
  std::uint64_t seed = kDefaultSeed;
  std::string out = "out";
  int window = 8;
  int grid_nodes = 400;
  int moment_order = 8;
  std::size_t vertex_budget = 5000;
};

struct FamilyArgs {
  double a = 3.0, b = 3.0, r = 1.0;
  std::string report;
  int max_n = 10;
  int radius = 3;
  int lp_grid = 5;
  std::optional<double> x_min, x_max;
  double x_step = 0.05;
};

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return 1;
    case ErrorCode::NotCommutative: return 3;
    case ErrorCode::ParameterOutOfRange:
    case ErrorCode::BallTooLarge: return 4;
    default: return 2;
  }
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

std::string param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  std::string s = buf;
  for (auto& ch : s)
    if (ch == '.') ch = 'p';
  return s;
}

Json envelope(const RunConfig& cfg, const std::string& status) {
  Json j;
  j["tool"] = "hyperschemes";
  j["command"] = cfg.command;
  if (!cfg.input.empty()) j["input"] = fs::path(cfg.input).filename().string();
  j["status"] = status;
  return j;
}

void emit(const RunConfig& cfg, const std::string& name, const std::string& text) {
  fs::create_directories(cfg.out);
  write_text((fs::path(cfg.out) / name).string(), text);
}

void emit_report(const RunConfig& cfg, const std::string& name, Json result, bool ok) {
  Json j = envelope(cfg, ok ? "ok" : "failed");
  j["result"] = std::move(result);
  emit(cfg, name, dump(j));
}

HarmonicOptions harmonic_options(const RunConfig& cfg) {
  HarmonicOptions h;
  h.seed = cfg.seed;
  if (cfg.tol) h.nonnegativity_tol = *cfg.tol;
  return h;
}

// ---------------------------------------------------------------------------
// scheme commands

int cmd_verify(const RunConfig& cfg) {
  const Scheme s = load_scheme(cfg.input);
  Json r = verify_report(s);
  const bool ok = r["all_passed"].get<bool>();
  emit_report(cfg, stem_of(cfg.input) + ".verify.json", std::move(r), ok);
  std::cout << "verify " << cfg.input << ": " << (ok ? "all identities hold" : "identity failure") << "\n";
  return ok ? 0 : 2;
}

int cmd_hypergroup(const RunConfig& cfg) {
  const Scheme s = load_scheme(cfg.input);
  const auto h = hypergroup_from_scheme(s);
  Json r;
  r["hypergroup"] = hypergroup_to_json(h);
  r["axioms"] = axioms_json(verify_hypergroup(h));
  r["commutative"] = h.is_commutative();
  emit_report(cfg, stem_of(cfg.input) + ".hypergroup.json", std::move(r), true);
  std::cout << "hypergroup " << cfg.input << ": " << h.size() << " classes\n";
  return 0;
}

int cmd_chartable(const RunConfig& cfg) {
  const Scheme s = load_scheme(cfg.input);
  if (!is_commutative(s)) throw Error(ErrorCode::NotCommutative, "character tables need a commutative scheme");
  const auto tbl = character_table(hypergroup_from_scheme(s), harmonic_options(cfg));
  emit(cfg, stem_of(cfg.input) + ".characters.csv", character_csv(tbl));
  emit_report(cfg, stem_of(cfg.input) + ".characters.json", character_json(tbl), true);
  std::cout << "chartable " << cfg.input << ": " << tbl.size() << " characters\n";
  return 0;
}

int cmd_dualtable(const RunConfig& cfg) {
  const Scheme s = load_scheme(cfg.input);
  if (!is_commutative(s)) throw Error(ErrorCode::NotCommutative, "dual tables need a commutative scheme");
  const auto opt = harmonic_options(cfg);
  const auto tbl = character_table(hypergroup_from_scheme(s), opt);
  Json r = dual_table_json(tbl, opt);
  const bool ok = r["all_nonnegative"].get<bool>();
  emit_report(cfg, stem_of(cfg.input) + ".dual.json", std::move(r), ok);
  std::cout << "dualtable " << cfg.input << ": " << (ok ? "all coefficients nonnegative" : "negative coefficient")
            << "\n";
  return ok ? 0 : 2;
}

int cmd_generalized(const RunConfig& cfg) {
  const auto g = generalized_from_json(load_json(cfg.input));
  Json r = generalized_audit_json(g);
  if (!g.windowed()) r["hypergroup"] = hypergroup_to_json(hypergroup_from_generalized(g));
  emit_report(cfg, stem_of(cfg.input) + ".generalized.json", std::move(r), true);
  std::cout << "generalized " << cfg.input << ": axioms hold\n";
  return 0;
}

// ---------------------------------------------------------------------------
// families

int gab_report(const RunConfig& cfg, const FamilyArgs& fa) {
  const auto f = gab_family(fa.a, fa.b);
  const std::string base = "gab-a" + param(fa.a) + "-b" + param(fa.b) + "." + fa.report;
  Json summary;
  summary["a"] = f.a;
  summary["b"] = f.b;
  summary["s0"] = f.s0();
  summary["s1"] = f.s1();
  bool ok = true;

  if (fa.report == "linearization") {
    std::string csv = "m,n,k,g\n";
    double worst = 0.0;
    for (int m = 0; m <= fa.max_n; ++m)
      for (int n = 0; n <= fa.max_n; ++n) {
        const auto g = gab_linearization(f, m, n);
        double sum = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
          sum += g[k];
          if (g[k] != 0.0)
            csv += std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(k) + "," + format_double(g[k]) + "\n";
        }
        worst = std::max(worst, std::abs(sum - 1.0));
      }
    emit(cfg, base + ".csv", csv);
    summary["max_n"] = fa.max_n;
    summary["max_sum_residual"] = worst;
    ok = worst <= 1e-12;
  } else if (fa.report == "psd-sweep") {
    const double lo = fa.x_min.value_or(-1.5), hi = fa.x_max.value_or(1.5);
    if (!(fa.x_step > 0.0) || hi < lo) throw Error(ErrorCode::ParameterOutOfRange, "bad x range");
    const double tol = cfg.tol.value_or(1e-8);
    const long steps = std::lround((hi - lo) / fa.x_step);
    std::string csv = "x,radius,vertices,min_eigenvalue,psd\n";
    for (long i = 0; i <= steps; ++i) {
      const double x = lo + static_cast<double>(i) * fa.x_step;
      for (int r = 1; r <= fa.radius; ++r) {
        const auto k = gab_kernel_psd(f, x, r, cfg.vertex_budget, tol);
        csv += format_double(x) + "," + std::to_string(r) + "," + std::to_string(k.vertices) + "," +
               format_double(k.min_eigenvalue) + "," + (k.positive ? "1" : "0") + "\n";
      }
    }
    emit(cfg, base + ".csv", csv);
    summary["radius"] = fa.radius;
    summary["tolerance"] = tol;
  } else if (fa.report == "lp-sweep") {
    const double lo = fa.x_min.value_or(f.s0()), hi = fa.x_max.value_or(f.s1());
    if (fa.lp_grid < 2 || hi < lo) throw Error(ErrorCode::ParameterOutOfRange, "bad LP sweep grid");
    LpOptions lp;
    if (cfg.tol) lp.slack_tol = *cfg.tol;
    std::string csv = "x,y,N,feasible,max_residual\n";
    int feasible = 0, total = 0;
    for (int i = 0; i < fa.lp_grid; ++i)
      for (int j = 0; j < fa.lp_grid; ++j) {
        const double x = lo + (hi - lo) * i / (fa.lp_grid - 1), y = lo + (hi - lo) * j / (fa.lp_grid - 1);
        const auto m = gab_dual_measure(f, x, y, cfg.moment_order, cfg.grid_nodes, lp);
        csv += format_double(x) + "," + format_double(y) + "," + std::to_string(cfg.moment_order) + "," +
               (m.lp.feasible ? "1" : "0") + "," + format_double(m.lp.max_residual) + "\n";
        feasible += m.lp.feasible;
        ++total;
      }
    emit(cfg, base + ".csv", csv);
    summary["moment_order"] = cfg.moment_order;
    summary["grid_nodes"] = cfg.grid_nodes;
    summary["feasible"] = feasible;
    summary["pairs"] = total;
  } else {
    throw Error(ErrorCode::ParameterOutOfRange, "unknown gab report '" + fa.report + "'");
  }
  emit_report(cfg, base + ".json", std::move(summary), ok);
  std::cout << "family gab " << fa.report << ": written to " << cfg.out << "\n";
  return ok ? 0 : 2;
}

int cosh_report(const RunConfig& cfg, const FamilyArgs& fa) {
  const auto f = cosh_family(fa.r);
  const std::string base = "cosh-r" + param(fa.r) + "." + fa.report;
  Json summary;
  summary["r"] = f.r;
  summary["p"] = f.p();
  bool ok = true;
  const std::vector<double> lambdas{0.0, std::numbers::pi / 4, std::numbers::pi / 2, 3 * std::numbers::pi / 4,
                                    std::numbers::pi};

  if (fa.report == "window-audit") {
    const auto a = cosh_window_audit(f, cfg.window, lambdas, cfg.tol.value_or(1e-12));
    summary["window"] = cfg.window;
    summary["stochastic_residual"] = a.axioms.stochastic_residual;
    summary["balance_residual"] = a.axioms.balance_residual;
    summary["invariance_residual"] = a.axioms.invariance_residual;
    summary["closure_residual"] = a.axioms.closure_residual;
    summary["sum_residual"] = a.axioms.sum_residual;
    summary["interior_fraction"] = a.axioms.interior_fraction;
    summary["convolution_residual"] = a.convolution_residual;
    summary["character_residual"] = a.character_residual;
    summary["window_character_residual"] = a.window_character_residual;
    summary["passed"] = a.passed;
    ok = a.passed;
  } else if (fa.report == "quadrature") {
    std::string csv = "lambda,n,quadrature,exact,abs_error\n";
    double worst = 0.0;
    for (double lam : lambdas)
      for (int n = 0; n <= fa.max_n; ++n) {
        const auto q = cosh_connection_quadrature(f, lam, n);
        csv += format_double(lam) + "," + std::to_string(n) + "," + format_double(q.value) + "," +
               format_double(q.exact) + "," + format_double(std::abs(q.value - q.exact)) + "\n";
        worst = std::max(worst, std::abs(q.value - q.exact));
      }
    emit(cfg, base + ".csv", csv);
    summary["max_abs_error"] = worst;
    ok = worst <= cfg.tol.value_or(1e-8);
  } else if (fa.report == "lp-sweep") {
    LpOptions lp;
    if (cfg.tol) lp.slack_tol = *cfg.tol;
    std::string csv = "lambda,mu,N,feasible,max_residual\n";
    int feasible = 0, total = 0;
    for (double lam : lambdas)
      for (double mu : lambdas) {
        const auto m = cosh_dual_measure(f, lam, mu, cfg.moment_order, cfg.grid_nodes, lp);
        csv += format_double(lam) + "," + format_double(mu) + "," + std::to_string(cfg.moment_order) + "," +
               (m.lp.feasible ? "1" : "0") + "," + format_double(m.lp.max_residual) + "\n";
        feasible += m.lp.feasible;
        ++total;
      }
    emit(cfg, base + ".csv", csv);
    summary["feasible"] = feasible;
    summary["pairs"] = total;
  } else {
    throw Error(ErrorCode::ParameterOutOfRange, "unknown cosh report '" + fa.report + "'");
  }
  emit_report(cfg, base + ".json", std::move(summary), ok);
  std::cout << "family cosh " << fa.report << ": written to " << cfg.out << "\n";
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Association schemes, hypergroups and dual product formulas"};
  app.require_subcommand(1);
  RunConfig cfg;
  FamilyArgs fa;
  double tol = 0.0;

  app.add_option("--tol", tol, "tolerance override")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for the character solver");
  app.add_option("--out", cfg.out, "output directory");
  app.add_option("--window", cfg.window, "half width of windowed schemes")->check(CLI::PositiveNumber);
  app.add_option("--grid-nodes", cfg.grid_nodes, "LP grid nodes")->check(CLI::PositiveNumber);
  app.add_option("--moment-order", cfg.moment_order, "LP moment truncation order")->check(CLI::PositiveNumber);
  app.add_option("--vertex-budget", cfg.vertex_budget, "largest graph ball built")->check(CLI::PositiveNumber);

  const std::pair<const char*, const char*> commands[] = {
      {"verify", "check the scheme axioms"},
      {"hypergroup", "normalized hypergroup of a commutative scheme"},
      {"chartable", "character table, CSV and JSON"},
      {"dualtable", "dual convolution of every pair of characters"},
      {"generalized", "audit a generalized scheme and its deformed convolution"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", cfg.input, "input JSON")->required();
    sub->fallthrough();
  }

  auto* family = app.add_subcommand("family", "parameterized families");
  family->require_subcommand(1);
  family->fallthrough();
  auto* gab = family->add_subcommand("gab", "Γ(a,b) polynomial hypergroups");
  gab->add_option("--a", fa.a, "clique count a >= 2");
  gab->add_option("--b", fa.b, "clique size b >= 2");
  gab->add_option("report", fa.report, "linearization | psd-sweep | lp-sweep")->required();
  gab->add_option("--max-n", fa.max_n, "highest degree");
  gab->add_option("--radius", fa.radius, "ball radius for psd-sweep");
  gab->add_option("--lp-grid", fa.lp_grid, "grid points per axis for lp-sweep");
  gab->add_option("--x-min", fa.x_min, "sweep start");
  gab->add_option("--x-max", fa.x_max, "sweep end");
  gab->add_option("--x-step", fa.x_step, "sweep step");
  gab->fallthrough();
  auto* cosh = family->add_subcommand("cosh", "cosh hypergroup");
  cosh->add_option("--r", fa.r, "r > 0");
  cosh->add_option("report", fa.report, "window-audit | quadrature | lp-sweep")->required();
  cosh->add_option("--max-n", fa.max_n, "highest degree");
  cosh->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }
  if (tol > 0.0) cfg.tol = tol;

  try {
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "hypergroup") return cmd_hypergroup(cfg);
    if (cfg.command == "chartable") return cmd_chartable(cfg);
    if (cfg.command == "dualtable") return cmd_dualtable(cfg);
    if (cfg.command == "generalized") return cmd_generalized(cfg);
    if (gab->parsed()) {
      cfg.command = "family gab";
      return gab_report(cfg, fa);
    }
    cfg.command = "family cosh";
    return cosh_report(cfg, fa);
  } catch (const Error& e) {
    Json j = envelope(cfg, "error");
    j["error"] = error_json(e);
    std::cerr << j.dump() << "\n";
    if (e.code() != ErrorCode::ParseError || !cfg.input.empty()) {
      try {
        const std::string name = cfg.input.empty() ? "family" : stem_of(cfg.input);
        std::string cmd = cfg.command;
        for (auto& ch : cmd)
          if (ch == ' ') ch = '-';
        emit(cfg, name + "." + cmd + ".error.json", dump(j));
      } catch (const std::exception&) {
      }
    }
    return exit_code(e.code());
  }
}
