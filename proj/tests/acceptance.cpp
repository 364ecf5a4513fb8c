// Acceptance criteria, one PASS/FAIL line each. Exit status is the number of
// failed criteria (capped at 1). Reports for the determinism check go to the
// directory given as the first argument.

#include "fixtures.hpp"
#include "hyperschemes/families.hpp"
#include "hyperschemes/io.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

using namespace hyperschemes;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = true;
  std::string detail;
};

int failures = 0;

void run(int number, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_seconds) {
    o.passed = false;
    o.detail += " (over the " + format_double(limit_seconds) + " s budget)";
  }
  if (!o.passed) ++failures;
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2f s", secs);
  std::cout << (o.passed ? "PASS" : "FAIL") << "  criterion " << number << ": " << title << " [" << timing << "] "
            << o.detail << std::endl;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome scheme_axioms() {
  int schemes = 0;
  for (const auto& f : fixtures::commutative_fixtures()) {
    const auto rep = audit_multass(f.scheme);
    if (!rep.all_passed()) return {false, f.name + " fails an identity"};
    ++schemes;
  }
  return {true, std::to_string(schemes) + " schemes, 7 identities each"};
}

Outcome convolution_equality() {
  int pairs = 0;
  for (const auto& gp : fixtures::group_pairs()) {
    const auto h = hypergroup_from_scheme(scheme_from_group_quotient(gp.group, gp.subgroup));
    const CosetStructure cs(gp.group, gp.subgroup);
    for (int i = 0; i < cs.num_double_cosets(); ++i)
      for (int j = 0; j < cs.num_double_cosets(); ++j) {
        const auto hk = hecke_convolution(gp.group, gp.subgroup, cs.double_coset_rep(i), cs.double_coset_rep(j));
        for (int k = 0; k < cs.num_double_cosets(); ++k)
          if (h(i, j, k) != hk.weights[k]) return {false, gp.name + " differs"};
      }
    ++pairs;
  }
  return {true, std::to_string(pairs) + " (G,H) pairs, exact"};
}

Outcome bochner_coherence() {
  int total = 0, positive = 0, ambiguous = 0;
  for (const auto& f : fixtures::commutative_fixtures()) {
    const auto h = hypergroup_from_scheme(f.scheme);
    const auto tbl = character_table(h);
    const std::size_t d = h.size();
    SeededUniform rng(kDefaultSeed);
    for (int trial = 0; trial < 1000; ++trial) {
      FunctionOnD g(d, 0.0);
      if (trial % 4 == 3) {
        for (auto& v : g) v = Complex(rng(-1, 1), rng(-1, 1));
      } else {
        // real combination of characters; nonnegative in every fourth draw
        for (std::size_t a = 0; a < tbl.size(); ++a) {
          const double c = trial % 4 == 0 ? rng(0, 1) : rng(-0.5, 1);
          for (std::size_t i = 0; i < d; ++i) g[i] += c * tbl[a][i];
        }
      }
      const auto m = is_positive_definite(h, g);
      const auto b = is_positive_definite_bochner(tbl, g);
      ++total;
      positive += m.positive;
      if (m.positive != b.positive) {
        if (std::abs(m.min_eigenvalue) <= 1e-9 || std::abs(b.min_coefficient) <= 1e-9) {
          ++ambiguous;
          continue;
        }
        return {false, f.name + " trial " + std::to_string(trial) + ": eigenvalue " + fmt(m.min_eigenvalue) +
                           ", coefficient " + fmt(b.min_coefficient)};
      }
    }
  }
  return {true, std::to_string(total) + " functions, " + std::to_string(positive) + " positive definite, " +
                    std::to_string(ambiguous) + " within tolerance of the boundary"};
}

Outcome dual_positivity() {
  double min_raw = 1e300, sum_err = 0.0, ortho = 0.0;
  for (const auto& f : fixtures::commutative_fixtures()) {
    const auto tbl = character_table(hypergroup_from_scheme(f.scheme));
    const int n = static_cast<int>(tbl.size());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const auto m = dual_convolution(tbl, a, b);
        min_raw = std::min(min_raw, m.min_raw);
        sum_err = std::max(sum_err, std::abs(m.sum_raw - 1.0));
        if (a != tbl.conjugate[b]) ortho = std::max(ortho, std::abs(m.raw[tbl.positive_index]));
      }
  }
  const bool ok = min_raw >= -1e-9 && sum_err <= 1e-10 && ortho <= 1e-10;
  return {ok, "min coefficient " + fmt(min_raw) + ", sum error " + fmt(sum_err) + ", mass at 1 " + fmt(ortho)};
}

Outcome gab_identities() {
  double special = 0.0, product = 0.0, closed = 0.0;
  for (double a : {2.0, 2.5, 3.0, 5.0})
    for (double b : {2.0, 2.5, 3.0, 5.0}) {
      const auto f = gab_family(a, b);
      const auto p1 = gab_polynomials(f, 20, f.s1<long double>());
      const auto p0 = gab_polynomials(f, 20, f.s0<long double>());
      for (int n = 0; n <= 20; ++n) {
        special = std::max(special, static_cast<double>(std::abs(p1[n] - 1.0L)));
        const long double want = std::pow(1.0L - b, -n);
        special = std::max(special, static_cast<double>(std::abs(p0[n] / want - 1.0L)));
      }
      SeededUniform rng(kDefaultSeed);
      for (int t = 0; t < 20; ++t) {
        const double x = rng(-1, 1);
        const auto p = gab_polynomials(f, 20, x);
        for (int m = 0; m <= 10; ++m)
          for (int n = 0; n <= 10; ++n) {
            const auto g = gab_linearization(f, m, n);
            double rhs = 0.0;
            for (std::size_t k = 0; k < g.size(); ++k) rhs += g[k] * p[k];
            product = std::max(product, std::abs(p[m] * p[n] - rhs));
          }
      }
      const double band = f.s1() + 1.0;
      for (int j = 0; j <= 200; ++j) {
        const double x = -band + 2 * band * (j + 0.5) / 201.0;
        for (int n = 0; n <= 50; ++n) {
          const auto v = gab_eval(f, n, x);
          if (v.closed_form) closed = std::max(closed, v.disagreement);
        }
      }
    }
  const bool ok = special <= 1e-9 && product < 1e-10 && closed <= 1e-9;
  return {ok, "special values " + fmt(special) + ", product formula " + fmt(product) + ", closed form " + fmt(closed)};
}

Outcome psd_frontier() {
  const auto f = gab_family(3, 3);
  std::string detail;
  bool ok = true;
  for (double x : {-1.0, -0.5, 0.0, 1.0, 1.25}) {
    double worst = 1e300;
    for (int r = 1; r <= 4; ++r) worst = std::min(worst, gab_kernel_psd(f, x, r, 5000).min_eigenvalue);
    ok = ok && worst >= -1e-8;
    detail += "x=" + fmt(x) + ":" + fmt(worst) + " ";
  }
  for (double x : {-1.10, -1.20}) {
    double worst = 1e300;
    for (int r = 1; r <= 4; ++r) worst = std::min(worst, gab_kernel_psd(f, x, r, 5000).min_eigenvalue);
    ok = ok && worst < -1e-6;
    detail += "x=" + fmt(x) + ":" + fmt(worst) + " ";
  }
  return {ok, "min eigenvalues " + detail};
}

Outcome dual_measure_lp() {
  const auto f = gab_family(3, 3);
  int feasible = 0;
  double worst = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const double x = f.s0() + (f.s1() - f.s0()) * i / 4.0, y = f.s0() + (f.s1() - f.s0()) * j / 4.0;
      const auto m = gab_dual_measure(f, x, y, 8, 400);
      feasible += m.lp.feasible;
      worst = std::max(worst, m.lp.max_residual);
    }
  return {feasible == 25 && worst < 1e-8, std::to_string(feasible) + "/25 feasible, max slack " + fmt(worst)};
}

Outcome cosh_checks() {
  bool ok = true;
  double axioms = 0.0, conv = 0.0, chars = 0.0, quad = 0.0;
  for (double r : {0.5, 1.0, 2.0}) {
    const auto a = cosh_window_audit(cosh_family(r), 8, {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi});
    axioms = std::max({axioms, a.axioms.stochastic_residual, a.axioms.balance_residual, a.axioms.invariance_residual,
                       a.axioms.closure_residual, a.axioms.sum_residual});
    conv = std::max(conv, a.convolution_residual);
    chars = std::max({chars, a.character_residual, a.window_character_residual});
    ok = ok && a.passed;
    const auto f = cosh_family(r);
    for (double lam : {0.0, kPi / 2})
      for (int n = 0; n <= 5; ++n) {
        const auto q = cosh_connection_quadrature(f, lam, n);
        quad = std::max(quad, std::abs(q.value - q.exact));
      }
  }
  ok = ok && axioms <= 1e-10 && conv <= 1e-12 && chars <= 1e-12 && quad <= 1e-8;
  return {ok, "axioms " + fmt(axioms) + ", convolution " + fmt(conv) + ", characters " + fmt(chars) +
                  ", quadrature " + fmt(quad)};
}

Outcome generalized_dual() {
  double worst = 0.0;
  bool certified = true;
  for (const auto& f : fixtures::commutative_fixtures()) {
    const auto g = classical_embedding(f.scheme);
    const auto tbl = character_table(hypergroup_from_generalized(g));
    const auto ref = character_table(hypergroup_from_scheme(f.scheme));
    const int n = static_cast<int>(tbl.size());
    const auto all = dual_products_generalized(g, tbl);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const auto& gd = all[a][b];
        certified = certified && gd.precondition_certified;
        const auto cd = dual_convolution(ref, a, b);
        for (int c = 0; c < n; ++c) worst = std::max(worst, std::abs(gd.measure.weights[c] - cd.weights[c]));
      }
  }
  return {certified && worst <= 1e-12, "max difference " + fmt(worst) + (certified ? "" : ", uncertified")};
}

// ---------------------------------------------------------------------------
// determinism

std::map<std::string, std::string> full_reports() {
  std::map<std::string, std::string> out;
  for (const auto& f : fixtures::commutative_fixtures()) {
    std::string stem = f.name;
    for (auto& c : stem)
      if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
    out[stem + ".verify.json"] = dump(verify_report(f.scheme));
    const auto tbl = character_table(hypergroup_from_scheme(f.scheme));
    out[stem + ".characters.csv"] = character_csv(tbl);
    out[stem + ".characters.json"] = dump(character_json(tbl));
    out[stem + ".dual.json"] = dump(dual_table_json(tbl));
    out[stem + ".generalized.json"] = dump(generalized_audit_json(classical_embedding(f.scheme)));
  }
  const auto gab = gab_family(3, 3);
  std::string lin = "m,n,k,g\n";
  for (int m = 0; m <= 10; ++m)
    for (int n = 0; n <= 10; ++n) {
      const auto g = gab_linearization(gab, m, n);
      for (std::size_t k = 0; k < g.size(); ++k)
        if (g[k] != 0.0)
          lin += std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(k) + "," + format_double(g[k]) + "\n";
    }
  out["gab-a3-b3.linearization.csv"] = lin;
  std::string psd = "x,radius,vertices,min_eigenvalue,psd\n";
  for (int i = 0; i <= 12; ++i) {
    const double x = -1.5 + 0.25 * i;
    for (int r = 1; r <= 3; ++r) {
      const auto k = gab_kernel_psd(gab, x, r);
      psd += format_double(x) + "," + std::to_string(r) + "," + std::to_string(k.vertices) + "," +
             format_double(k.min_eigenvalue) + "," + (k.positive ? "1" : "0") + "\n";
    }
  }
  out["gab-a3-b3.psd-sweep.csv"] = psd;
  std::string lp = "x,y,N,feasible,max_residual\n";
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double x = gab.s0() + (gab.s1() - gab.s0()) * i / 2.0, y = gab.s0() + (gab.s1() - gab.s0()) * j / 2.0;
      const auto m = gab_dual_measure(gab, x, y, 8);
      lp += format_double(x) + "," + format_double(y) + ",8," + (m.lp.feasible ? "1" : "0") + "," +
            format_double(m.lp.max_residual) + "\n";
      for (double w : m.lp.weights) lp += format_double(w) + ";";
      lp += "\n";
    }
  out["gab-a3-b3.lp-sweep.csv"] = lp;
  const auto a = cosh_window_audit(cosh_family(1.0), 8);
  Json cj;
  cj["convolution_residual"] = a.convolution_residual;
  cj["character_residual"] = a.character_residual;
  cj["window_character_residual"] = a.window_character_residual;
  cj["passed"] = a.passed;
  out["cosh-r1.window-audit.json"] = dump(cj);
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const fs::path& dir) {
  for (const char* run : {"run1", "run2"}) {
    fs::remove_all(dir / run);
    fs::create_directories(dir / run);
    for (const auto& [name, text] : full_reports()) write_text((dir / run / name).string(), text);
  }
  int files = 0;
  for (const auto& e : fs::directory_iterator(dir / "run1")) {
    const auto other = dir / "run2" / e.path().filename();
    if (!fs::exists(other) || read_file(e.path()) != read_file(other))
      return {false, e.path().filename().string() + " differs"};
    ++files;
  }
  return {true, std::to_string(files) + " reports byte-identical across two runs"};
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? argv[1] : "acceptance_out";
  run(1, "scheme axioms in exact arithmetic", 5, scheme_axioms);
  run(2, "Hecke convolution equals quotient scheme convolution", 5, convolution_equality);
  run(3, "matrix and character tests of positive definiteness agree", 30, bochner_coherence);
  run(4, "dual convolution is a probability measure", 10, dual_positivity);
  run(5, "Gamma(a,b) polynomial identities", 10, gab_identities);
  run(6, "Gamma(3,3) kernel positivity frontier", 60, psd_frontier);
  run(7, "Gamma(3,3) dual measure LP feasibility", 120, dual_measure_lp);
  run(8, "cosh hypergroup window, convolution, characters, quadrature", 30, cosh_checks);
  run(9, "generalized dual product equals classical dual convolution", 5, generalized_dual);
  run(10, "determinism of reports", 120, [&] { return determinism(dir); });
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
