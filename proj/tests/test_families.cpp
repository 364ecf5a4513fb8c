#include "hyperschemes/families.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace hyperschemes;

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<double> kParams{2.0, 2.5, 3.0, 5.0, 10.0};

double p_at(const GabFamily& f, int n, double x) { return gab_polynomials(f, n, x)[n]; }

// midpoint rule in θ for the continuous part plus the atom, written out from
// the density formula
double rho_integral(const GabFamily& f, const std::function<double(double)>& g, int steps = 200000) {
  const double s0 = f.s0(), s1 = f.s1(), h = kPi / steps;
  double acc = 0.0;
  for (int j = 0; j < steps; ++j) {
    const double t = (j + 0.5) * h, x = std::cos(t);
    acc += f.a / (2 * kPi) * std::sin(t) * std::sin(t) / ((s1 - x) * (x - s0)) * g(x) * h;
  }
  if (f.b > f.a) acc += (f.b - f.a) / f.b * g(s0);
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------
// Γ(a,b)

TEST(Gab, ParameterRange) {
  EXPECT_THROW(gab_family(1.5, 3), Error);
  EXPECT_THROW(gab_family(3, 1.99), Error);
  try {
    gab_family(1.5, 3);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParameterOutOfRange);
  }
  EXPECT_NO_THROW(gab_family(2, 2));
}

TEST(Gab, LinearizationExamples) {
  const auto f33 = gab_family(3, 3);
  const auto g = gab_linearization(f33, 1, 1);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_NEAR(g[2], 2.0 / 3, 1e-15);
  EXPECT_NEAR(g[1], 1.0 / 6, 1e-15);
  EXPECT_NEAR(g[0], 1.0 / 6, 1e-15);

  const auto f22 = gab_family(2, 2);
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; n <= 6; ++n) {
      const auto w = gab_linearization(f22, m, n);
      for (int k = 0; k <= m + n; ++k) {
        const double want = (k == m + n ? 0.5 : 0.0) + (k == std::abs(m - n) ? 0.5 : 0.0);
        EXPECT_NEAR(w[k], want, 1e-15);
      }
    }
  const auto d = gab_linearization(f33, 0, 4);
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(d[k], k == 4 ? 1.0 : 0.0);
}

TEST(Gab, LinearizationIsAProbabilityMeasure) {
  for (double a : kParams)
    for (double b : kParams) {
      const auto f = gab_family(a, b);
      for (int m = 0; m <= 15; ++m)
        for (int n = 0; n <= 15; ++n) {
          const auto w = gab_linearization(f, m, n);
          double sum = 0.0;
          for (std::size_t k = 0; k < w.size(); ++k) {
            EXPECT_GE(w[k], 0.0);
            if (static_cast<int>(k) < std::abs(m - n)) {
              EXPECT_EQ(w[k], 0.0);
            }
            sum += w[k];
          }
          EXPECT_NEAR(sum, 1.0, 1e-12) << a << " " << b << " " << m << " " << n;
        }
    }
}

TEST(Gab, LinearizationCountsPathsInTheGraph) {
  // δ_m * δ_n ({k}) = ω_k p^k_{m,n} / (ω_m ω_n) with p^k_{m,n} counted on a ball
  for (int a : {2, 3})
    for (int b : {2, 3}) {
      const auto f = gab_family(a, b);
      const int radius = 4;
      const auto ball = gab_ball(f, radius);
      const auto dist = ball.graph.distances();
      const std::size_t n_v = ball.graph.size();
      for (int m = 0; m <= 2; ++m)
        for (int n = 0; m + n <= radius && n <= 2; ++n) {
          const auto g = gab_linearization(f, m, n);
          for (int k = std::abs(m - n); k <= m + n; ++k) {
            std::size_t y = 0;
            while (ball.depth[y] != k) ++y;
            int count = 0;
            for (std::size_t z = 0; z < n_v; ++z)
              if (dist[z] == m && dist[z * n_v + y] == n) ++count;
            const double want = gab_haar(f, k) * count / (gab_haar(f, m) * gab_haar(f, n));
            EXPECT_NEAR(g[k], want, 1e-12) << a << b << " " << m << n << k;
          }
        }
    }
}

TEST(Gab, HaarWeights) {
  EXPECT_EQ(gab_haar(gab_family(3, 3), 0), 1.0);
  EXPECT_EQ(gab_haar(gab_family(3, 3), 2), 24.0);
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(gab_haar(gab_family(2, 2), n), 2.0);
  for (double a : kParams)
    for (double b : kParams) {
      const auto f = gab_family(a, b);
      for (int n = 0; n <= 10; ++n)
        EXPECT_NEAR(gab_haar(f, n) * gab_linearization(f, n, n)[0], 1.0, 1e-12);
    }
}

TEST(Gab, SpecialValues) {
  for (double a : {2.0, 2.5, 3.0, 5.0})
    for (double b : {2.0, 2.5, 3.0, 5.0}) {
      const auto f = gab_family(a, b);
      EXPECT_LE(-f.s1(), f.s0() + 1e-15);
      EXPECT_LE(f.s0(), -1.0 + 1e-15);
      EXPECT_GE(f.s1(), 1.0 - 1e-15);
      const auto p1 = gab_polynomials(f, 20, f.s1<long double>());
      const auto p0 = gab_polynomials(f, 20, f.s0<long double>());
      for (int n = 0; n <= 20; ++n) {
        EXPECT_NEAR(static_cast<double>(p1[n]), 1.0, 1e-9);
        const long double want = std::pow(1.0L - b, -n);
        EXPECT_NEAR(static_cast<double>(p0[n] / want), 1.0, 1e-9);
      }
    }
  const auto f = gab_family(3, 3);
  EXPECT_DOUBLE_EQ(f.s0(), -1.0);
  EXPECT_DOUBLE_EQ(f.s1(), 1.25);
}

TEST(Gab, ProductFormula) {
  SeededUniform rng(11);
  for (double a : {2.0, 2.5, 3.0, 5.0})
    for (double b : {2.0, 2.5, 3.0, 5.0}) {
      const auto f = gab_family(a, b);
      for (int trial = 0; trial < 20; ++trial) {
        const double x = rng(-1, 1);
        const auto p = gab_polynomials(f, 20, x);
        for (int m = 0; m <= 10; ++m)
          for (int n = 0; n <= 10; ++n) {
            const auto g = gab_linearization(f, m, n);
            double rhs = 0.0;
            for (std::size_t k = 0; k < g.size(); ++k) rhs += g[k] * p[k];
            EXPECT_NEAR(p[m] * p[n], rhs, 1e-10);
          }
      }
    }
}

TEST(Gab, ClosedFormAgreesWithRecurrence) {
  for (double a : {2.0, 2.5, 3.0, 5.0})
    for (double b : {2.0, 2.5, 3.0, 5.0}) {
      const auto f = gab_family(a, b);
      const double band = f.s1() + 1.0;
      for (int j = 0; j <= 40; ++j) {
        const double x = -band + 2 * band * j / 40.0 + 1e-3;
        for (int n = 0; n <= 50; ++n) {
          const auto v = gab_eval(f, n, x);
          ASSERT_TRUE(v.closed_form.has_value());
          EXPECT_LT(v.disagreement, 1e-9) << a << " " << b << " " << n << " " << x;
        }
      }
      EXPECT_FALSE(gab_eval(f, 3, 1.0).closed_form.has_value());
      EXPECT_FALSE(gab_eval(f, 3, -1.0).closed_form.has_value());
    }
}

TEST(Gab, CharactersBoundedOnTheDual) {
  for (double a : {2.0, 3.0, 5.0})
    for (double b : {2.0, 3.0, 5.0}) {
      const auto f = gab_family(a, b);
      for (int j = 0; j <= 100; ++j) {
        const double x = -f.s1() + 2 * f.s1() * j / 100.0;
        for (double v : gab_polynomials(f, 40, x)) EXPECT_LE(std::abs(v), 1.0 + 1e-9) << x;
      }
      EXPECT_GT(p_at(f, 40, f.s1() + 0.1), 2.0);
    }
}

TEST(Gab, OrthogonalityMeasure) {
  for (const auto& [a, b] : std::vector<std::pair<double, double>>{{3, 3}, {2, 2}, {5, 3}, {2, 4}, {2.5, 5}}) {
    const auto f = gab_family(a, b);
    const auto rho = gab_orthogonality_measure(f);
    EXPECT_NEAR(rho.atom_mass(), b > a ? (b - a) / b : 0.0, 1e-15);
    EXPECT_NEAR(rho.integrate([](double) { return 1.0; }), 1.0, 1e-8);
    for (int m = 0; m <= 12; ++m)
      for (int n = m; n <= 12; ++n) {
        auto g = [&](double x) {
          const auto p = gab_polynomials(f, 12, x);
          return p[m] * p[n];
        };
        const double v = rho.integrate(g), oracle = rho_integral(f, g);
        EXPECT_NEAR(v, oracle, 1e-7) << a << " " << b << " " << m << " " << n;
        if (m == n) {
          EXPECT_NEAR(gab_haar(f, n) * v, 1.0, 1e-6);
        } else {
          EXPECT_NEAR(v, 0.0, 1e-7);
        }
      }
  }
  const auto f = gab_family(2, 4);
  EXPECT_NEAR(gab_orthogonality_measure(f).atom_mass(), 0.5, 1e-15);
  EXPECT_NEAR(gab_orthogonality_measure(f).atom_location(), -4 / (2 * std::sqrt(3.0)), 1e-15);
}

TEST(Gab, BallShape) {
  const auto f = gab_family(3, 3);
  EXPECT_EQ(gab_ball_size(3, 3, 4), 1u + 6 + 24 + 96 + 384);
  const auto ball = gab_ball(f, 3);
  ASSERT_EQ(ball.graph.size(), gab_ball_size(3, 3, 3));
  const auto d = ball.graph.distances();
  for (std::size_t v = 0; v < ball.graph.size(); ++v) {
    EXPECT_EQ(d[v], ball.depth[v]);
    if (ball.depth[v] < 3) {
      EXPECT_EQ(ball.graph.adj[v].size(), 6u);
    }
  }
  try {
    gab_ball(f, 6, 5000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BallTooLarge);
  }
  EXPECT_THROW(gab_ball(gab_family(2.5, 3), 2), Error);
}

TEST(Gab, KernelPositivityFrontier) {
  const auto f = gab_family(3, 3);
  const auto ones = gab_kernel_psd(f, f.s1(), 2);
  EXPECT_TRUE(ones.positive);
  EXPECT_NEAR(ones.min_eigenvalue, 0.0, 1e-9);
  for (double x : {-1.0, -0.5, 0.0, 1.0, 1.25})
    for (int r = 1; r <= 4; ++r) EXPECT_GE(gab_kernel_psd(f, x, r).min_eigenvalue, -1e-8) << x << " " << r;
  for (double x : {-1.10, -1.20}) {
    double worst = 0.0;
    for (int r = 1; r <= 4; ++r) worst = std::min(worst, gab_kernel_psd(f, x, r).min_eigenvalue);
    EXPECT_LT(worst, -1e-6) << x;
  }
  EXPECT_FALSE(gab_kernel_psd(f, 1.3, 3).positive);
}

TEST(Gab, DualMeasureLp) {
  const auto f = gab_family(3, 3);
  const auto top = gab_dual_measure(f, f.s1(), f.s1(), 8);
  EXPECT_TRUE(top.lp.feasible);
  const auto one = gab_dual_measure(f, 1.0, 1.0, 8);
  EXPECT_TRUE(one.lp.feasible);
  EXPECT_LT(one.lp.max_residual, 1e-8);
  double mass = 0.0;
  for (double w : one.lp.weights) {
    EXPECT_GE(w, 0.0);
    mass += w;
  }
  EXPECT_NEAR(mass, 1.0, 1e-8);
  EXPECT_TRUE(gab_dual_measure(f, f.s0(), f.s0(), 6).lp.feasible);
}

TEST(Gab, InfeasibleMomentsCarryACertificate) {
  const auto f = gab_family(3, 3);
  const double x = f.s1() + 0.5;
  const auto m = gab_dual_measure(f, x, x, 6, 200);
  ASSERT_FALSE(m.lp.feasible);
  MatrixXd a(7, static_cast<Eigen::Index>(m.nodes.size()));
  for (std::size_t j = 0; j < m.nodes.size(); ++j) {
    const auto p = gab_polynomials(f, 6, m.nodes[j]);
    for (int n = 0; n <= 6; ++n) a(n, j) = p[n];
  }
  const auto p = gab_polynomials(f, 6, x);
  VectorXd rhs(7);
  for (int n = 0; n <= 6; ++n) rhs(n) = p[n] * p[n];
  const auto c = check_certificate(a, rhs, m.lp.certificate);
  EXPECT_LE(c.worst_column, 1e-9);
  EXPECT_LT(c.objective, 0.0);
}

TEST(Lp, SmallProblems) {
  MatrixXd a(2, 3);
  a << 1, 1, 1, 0, 1, 2;
  VectorXd b(2);
  b << 1, 0.5;
  const auto ok = lp_feasibility(a, b);
  ASSERT_TRUE(ok.feasible);
  EXPECT_LT((a * Eigen::Map<const VectorXd>(ok.weights.data(), 3) - b).cwiseAbs().maxCoeff(), 1e-12);

  b << 1, 3;  // mean 3 outside the convex hull of {0,1,2}
  const auto bad = lp_feasibility(a, b);
  ASSERT_FALSE(bad.feasible);
  const auto c = check_certificate(a, b, bad.certificate);
  EXPECT_LE(c.worst_column, 1e-12);
  EXPECT_LT(c.objective, 0.0);

  b << -1, 0;
  EXPECT_FALSE(lp_feasibility(a, b).feasible);
}

// ---------------------------------------------------------------------------
// cosh

TEST(Cosh, ParameterRange) {
  EXPECT_THROW(cosh_family(0.0), Error);
  EXPECT_THROW(cosh_family(-1.0), Error);
  EXPECT_NEAR(cosh_family(1.0).p(), std::exp(1.0) / (std::exp(1.0) + std::exp(-1.0)), 1e-15);
}

TEST(Cosh, Convolution) {
  for (double r : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const auto f = cosh_family(r);
    const auto w = cosh_convolution(f, 1, 1);
    const double c = std::cosh(r);
    EXPECT_NEAR(w[2], std::cosh(2 * r) / (2 * c * c), 1e-15);
    EXPECT_NEAR(w[0], 1 / (2 * c * c), 1e-15);
    EXPECT_EQ(w[1], 0.0);
    EXPECT_GT(w[2], 0.5);
    EXPECT_LT(w[2], 1.0);
    for (int k = 0; k <= 8; ++k)
      for (int l = 0; l <= 8; ++l) {
        const auto v = cosh_convolution(f, k, l);
        double sum = 0.0;
        for (double x : v) sum += x;
        EXPECT_NEAR(sum, 1.0, 1e-12);
        if (l == 0) {
          for (int j = 0; j <= k; ++j) EXPECT_EQ(v[j], j == k ? 1.0 : 0.0);
        }
      }
    for (int k = 1; k <= 6; ++k) EXPECT_NEAR(cosh_haar(f, k) * cosh_convolution(f, k, k)[0], 1.0, 1e-12);
  }
}

TEST(Cosh, Characters) {
  const auto f = cosh_family(1.0);
  for (int n = 0; n <= 10; ++n) {
    EXPECT_NEAR(std::abs(cosh_character(f, Complex(0, 1.0), n).value - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(cosh_character(f, 0.0, n).value.real(), 1 / std::cosh(static_cast<double>(n)), 1e-15);
    EXPECT_EQ(cosh_character(f, 1.3, 0).value, Complex(1.0));
  }
  EXPECT_TRUE(cosh_character(f, kPi, 3).bounded);
  EXPECT_TRUE(cosh_character(f, Complex(kPi, 0.5), 3).bounded);
  EXPECT_FALSE(cosh_character(f, 4.0, 3).bounded);
  EXPECT_FALSE(cosh_character(f, Complex(0, 1.5), 3).bounded);
  // multiplicativity against the convolution
  for (double lam : {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi})
    for (int k = 0; k <= 6; ++k)
      for (int l = 0; l <= 6; ++l) {
        const auto w = cosh_convolution(f, k, l);
        Complex rhs = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) rhs += w[j] * cosh_character(f, lam, static_cast<int>(j)).value;
        EXPECT_LT(std::abs(cosh_character(f, lam, k).value * cosh_character(f, lam, l).value - rhs), 1e-12);
      }
}

TEST(Cosh, WindowAuditPasses) {
  for (double r : {0.5, 1.0, 2.0}) {
    const auto a = cosh_window_audit(cosh_family(r), 8);
    EXPECT_TRUE(a.passed) << r;
    EXPECT_LT(a.convolution_residual, 1e-12);
    EXPECT_LT(a.character_residual, 1e-12);
    EXPECT_LT(a.window_character_residual, 1e-12);
  }
  EXPECT_THROW(cosh_window_scheme(cosh_family(1.0), 0), Error);
}

TEST(Cosh, ConnectionQuadrature) {
  const auto f = cosh_family(1.0);
  EXPECT_NEAR(cosh_connection_quadrature(f, 0.0, 0).value, 1.0, 1e-8);
  EXPECT_NEAR(cosh_connection_quadrature(f, kPi / 2, 3).value, 0.0, 1e-8);
  for (double lam : {0.0, kPi / 2})
    for (int n = 0; n <= 5; ++n) {
      const auto q = cosh_connection_quadrature(f, lam, n);
      EXPECT_NEAR(q.value, std::cos(lam * n) / std::cosh(static_cast<double>(n)), 1e-8);
      EXPECT_GT(q.min_weight, 0.0);
    }
  try {
    cosh_connection_quadrature(f, 0.0, 1, 0.05, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::QuadratureNotConverged);
  }
}

TEST(Cosh, DualMeasureLp) {
  const auto f = cosh_family(1.0);
  for (double lam : {0.0, kPi / 2, kPi})
    for (double mu : {0.0, kPi / 3, kPi}) {
      const auto m = cosh_dual_measure(f, lam, mu, 8);
      EXPECT_TRUE(m.lp.feasible) << lam << " " << mu;
    }
}
