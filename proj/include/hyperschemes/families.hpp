#pragma once

// Two parameterized families.
//
// Γ(a,b): the distance-transitive graph built from a copies of the complete
// graph K_b at every vertex, glued tree-like. Its distance classes form the
// polynomial hypergroup on ℕ₀ with the polynomials P_n^{(a,b)}. Real a,b >= 2
// are accepted wherever the formulas make sense; graph balls need integers.
//
// cosh: the deformation of the double coset structure of ℤ ⋊ ℤ₂ by the
// stochastic matrices S~_k(x,y) ∝ p^k δ_{k,y-x} + (1-p)^k δ_{k,x-y}.

#include "hyperschemes/generalized.hpp"
#include "hyperschemes/graph.hpp"
#include "hyperschemes/lp.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <numbers>
#include <optional>

namespace hyperschemes {

// ===========================================================================
// Γ(a,b)

struct GabFamily {
  double a = 2.0;
  double b = 2.0;

  // P_n near s0 is ill-conditioned in x; R = long double keeps (1-b)^{-n} to 1e-9 for n <= 20
  template <class R = double>
  R s0() const {
    const R ra = a, rb = b;
    return (2 - ra - rb) / (2 * std::sqrt((ra - 1) * (rb - 1)));
  }
  template <class R = double>
  R s1() const {
    const R ra = a, rb = b;
    return (ra * rb - ra - rb + 2) / (2 * std::sqrt((ra - 1) * (rb - 1)));
  }
  bool integral() const { return a == std::floor(a) && b == std::floor(b); }
};

inline GabFamily gab_family(double a, double b) {
  if (!(a >= 2.0) || !(b >= 2.0) || !std::isfinite(a) || !std::isfinite(b))
    throw Error(ErrorCode::ParameterOutOfRange, "Γ(a,b) needs a, b >= 2 (got a=" + format_double(a) +
                                                    ", b=" + format_double(b) + ")");
  return GabFamily{a, b};
}

/// δ_m * δ_n as weights on 0..m+n.
inline std::vector<double> gab_linearization(const GabFamily& f, int m, int n) {
  if (m < 0 || n < 0) throw Error(ErrorCode::ParameterOutOfRange, "m, n must be nonnegative");
  const double a = f.a, b = f.b;
  std::vector<double> g(static_cast<std::size_t>(m + n + 1), 0.0);
  const int lo = std::abs(m - n), mn = std::min(m, n);
  if (mn == 0) {
    g[std::max(m, n)] = 1.0;
    return g;
  }
  g[m + n] = (a - 1.0) / a;
  g[lo] = 1.0 / (a * std::pow(a - 1.0, mn - 1) * std::pow(b - 1.0, mn));
  for (int k = 0; k < mn; ++k)
    g[lo + 2 * k + 1] = (b - 2.0) / (a * std::pow(a - 1.0, mn - k - 1) * std::pow(b - 1.0, mn - k));
  // the factor 1/a is required for the weights to sum to one
  for (int k = 0; k + 1 < mn; ++k)
    g[lo + 2 * k + 2] = (a - 2.0) / (a * std::pow(a - 1.0, mn - k - 1) * std::pow(b - 1.0, mn - k - 1));
  return g;
}

inline double gab_haar(const GabFamily& f, int n) {
  if (n < 0) throw Error(ErrorCode::ParameterOutOfRange, "n must be nonnegative");
  if (n == 0) return 1.0;
  return f.a * std::pow(f.a - 1.0, n - 1) * std::pow(f.b - 1.0, n);
}

/// P_0..P_N at x by the three-term recurrence. Doubles are carried in long
/// double: at x = s0 the values decay like (b-1)^{-n} and plain double loses
/// relative accuracy within twenty steps.
template <class S>
std::vector<S> gab_polynomials(const GabFamily& f, int N, S x) {
  using W = std::conditional_t<std::is_same_v<S, double>, long double,
                               std::conditional_t<std::is_same_v<S, Complex>, std::complex<long double>, S>>;
  const long double a = f.a, b = f.b;
  const long double lead = 2.0L / a * std::sqrt((a - 1.0L) / (b - 1.0L));
  const long double mid = (b - 2.0L) / (a * (b - 1.0L)), low = 1.0L / (a * (b - 1.0L)), up = (a - 1.0L) / a;
  std::vector<W> p{W(1.0L)};
  if (N > 0) p.push_back(lead * W(x) + mid);
  for (int n = 1; n < N; ++n) p.push_back((p[1] * p[n] - low * p[n - 1] - mid * p[n]) / up);
  std::vector<S> out;
  out.reserve(p.size());
  for (const auto& v : p) out.push_back(static_cast<S>(v));
  return out;
}

/// Closed form c(z) z^n + c(1/z) z^{-n} over ((a-1)(b-1))^{n/2}, x = (z + 1/z)/2.
inline std::optional<Complex> gab_closed_form(const GabFamily& f, int n, double x) {
  const double a = f.a, b = f.b;
  const Complex z = Complex(x, 0.0) + std::sqrt(Complex(x * x - 1.0, 0.0));
  if (std::abs(z) < 1e-300 || std::abs(z - 1.0) < 1e-12 || std::abs(z + 1.0) < 1e-12) return std::nullopt;
  auto c = [&](Complex u) {
    return ((a - 1.0) * u - 1.0 / u + (b - 2.0) * std::sqrt(a - 1.0) / std::sqrt(b - 1.0)) / (a * (u - 1.0 / u));
  };
  return (c(z) * std::pow(z, n) + c(1.0 / z) * std::pow(z, -n)) / std::pow((a - 1.0) * (b - 1.0), n / 2.0);
}

struct GabValue {
  double value = 0.0;                 // recurrence
  std::optional<double> closed_form;  // empty: ClosedFormSingular (x = ±1)
  double disagreement = 0.0;          // |recurrence - closed| / max(1, |recurrence|)
};

inline GabValue gab_eval(const GabFamily& f, int n, double x) {
  if (n < 0) throw Error(ErrorCode::ParameterOutOfRange, "n must be nonnegative");
  GabValue v;
  v.value = gab_polynomials(f, n, x)[n];
  if (const auto c = gab_closed_form(f, n, x)) {
    v.closed_form = c->real();
    v.disagreement = std::abs(v.value - c->real()) / std::max(1.0, std::abs(v.value));
  }
  return v;
}

/// Normalized orthogonality measure: density on [-1,1] plus an atom at s0 when b > a.
class GabMeasure {
 public:
  explicit GabMeasure(const GabFamily& f) : f_(f) {
    if (f.b > f.a) atom_ = (f.b - f.a) / f.b;
  }

  double density(double x) const {
    if (x <= -1.0 || x >= 1.0) return 0.0;
    return f_.a / (2.0 * std::numbers::pi) * std::sqrt(1.0 - x * x) / ((f_.s1() - x) * (x - f_.s0()));
  }
  double atom_mass() const { return atom_; }
  double atom_location() const { return f_.s0(); }

  /// ∫ g dρ; the continuous part in θ with x = cos θ.
  template <class F>
  double integrate(F&& g, double* error = nullptr) const {
    const double s0 = f_.s0(), s1 = f_.s1(), c = f_.a / (2.0 * std::numbers::pi);
    auto integrand = [&](double t) {
      const double x = std::cos(t), s = std::sin(t);
      return c * s * s / ((s1 - x) * (x - s0)) * g(x);
    };
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, std::numbers::pi,
                                                                                   15, 1e-14, &err);
    if (error) *error = err;
    return v + (atom_ > 0.0 ? atom_ * g(s0) : 0.0);
  }

 private:
  GabFamily f_;
  double atom_ = 0.0;
};

inline GabMeasure gab_orthogonality_measure(const GabFamily& f) { return GabMeasure(f); }

/// Ball of radius R around vertex 0 in Γ(a,b); depth[v] = d(0, v).
struct GabBall {
  Graph graph;
  std::vector<int> depth;
};

inline std::size_t gab_ball_size(int a, int b, int radius) {
  std::size_t total = 1, shell = 1;
  for (int r = 1; r <= radius; ++r) {
    shell *= static_cast<std::size_t>((r == 1 ? a : a - 1) * (b - 1));
    total += shell;
    if (total > (std::size_t{1} << 40)) break;
  }
  return total;
}

inline GabBall gab_ball(const GabFamily& f, int radius, std::size_t vertex_budget = 5000) {
  if (!f.integral()) throw Error(ErrorCode::ParameterOutOfRange, "graph balls need integer a, b");
  if (radius < 0) throw Error(ErrorCode::ParameterOutOfRange, "radius must be nonnegative");
  const int a = static_cast<int>(f.a), b = static_cast<int>(f.b);
  const std::size_t size = gab_ball_size(a, b, radius);
  if (size > vertex_budget)
    throw Error(ErrorCode::BallTooLarge, "ball of radius " + std::to_string(radius) + " has " +
                                             std::to_string(size) + " vertices, budget " +
                                             std::to_string(vertex_budget));
  GabBall ball;
  ball.graph.adj.resize(size);
  ball.depth.assign(size, 0);
  std::vector<int> frontier{0};
  int next = 1;
  for (int r = 1; r <= radius; ++r) {
    std::vector<int> grown;
    for (int v : frontier) {
      // the root lies in a cliques; every other vertex already has its parent clique
      const int fresh = v == 0 ? a : a - 1;
      for (int c = 0; c < fresh; ++c) {
        std::vector<int> clique{v};
        for (int t = 0; t + 1 < b; ++t) {
          ball.depth[next] = r;
          clique.push_back(next);
          grown.push_back(next++);
        }
        for (std::size_t i = 0; i < clique.size(); ++i)
          for (std::size_t j = i + 1; j < clique.size(); ++j) ball.graph.add_edge(clique[i], clique[j]);
      }
    }
    frontier = std::move(grown);
  }
  return ball;
}

struct GabKernelReport {
  bool positive = false;
  double min_eigenvalue = 0.0;
  std::size_t vertices = 0;
};

/// K(v,w) = P_{d(v,w)}(x) on the ball of the given radius.
inline GabKernelReport gab_kernel_psd(const GabFamily& f, double x, int radius, std::size_t vertex_budget = 5000,
                                      double tol = 1e-8) {
  if (radius < 1) throw Error(ErrorCode::ParameterOutOfRange, "radius must be at least 1");
  const auto ball = gab_ball(f, radius, vertex_budget);
  const auto p = gab_polynomials(f, 2 * radius, x);
  const auto d = ball.graph.distances();
  const auto n = static_cast<Eigen::Index>(ball.graph.size());
  MatrixXd k(n, n);
  for (Eigen::Index v = 0; v < n; ++v)
    for (Eigen::Index w = 0; w < n; ++w) k(v, w) = p[d[v * n + w]];
  const auto cert = psd_test(k, tol);
  return {cert.positive, cert.min_eigenvalue, static_cast<std::size_t>(n)};
}

/// First kind Chebyshev nodes on [lo, hi], descending.
inline std::vector<double> chebyshev_nodes(int count, double lo, double hi) {
  std::vector<double> z;
  for (int j = 0; j < count; ++j)
    z.push_back((lo + hi) / 2 + (hi - lo) / 2 * std::cos(std::numbers::pi * (2 * j + 1) / (2.0 * count)));
  return z;
}

struct MomentMeasure {
  LpResult lp;
  std::vector<double> nodes;
};

/// Probability weights on grid nodes in [-s1, s1] with Σ w_z P_n(z) = P_n(x) P_n(y), n = 0..N.
/// x and y themselves are added to the grid when they lie in [-s1, s1].
inline MomentMeasure gab_dual_measure(const GabFamily& f, double x, double y, int moment_order, int grid_nodes = 400,
                                      const LpOptions& opt = {}) {
  if (moment_order < 1) throw Error(ErrorCode::ParameterOutOfRange, "moment order must be at least 1");
  if (grid_nodes < 1) throw Error(ErrorCode::ParameterOutOfRange, "grid needs at least one node");
  const double s1 = f.s1();
  MomentMeasure out;
  out.nodes = chebyshev_nodes(grid_nodes, -s1, s1);
  for (double anchor : {x, y})
    if (anchor >= -s1 && anchor <= s1 &&
        std::find(out.nodes.begin(), out.nodes.end(), anchor) == out.nodes.end())
      out.nodes.push_back(anchor);
  const auto m = static_cast<Eigen::Index>(moment_order + 1);
  MatrixXd a(m, static_cast<Eigen::Index>(out.nodes.size()));
  for (std::size_t j = 0; j < out.nodes.size(); ++j) {
    const auto p = gab_polynomials(f, moment_order, out.nodes[j]);
    for (Eigen::Index n = 0; n < m; ++n) a(n, j) = p[n];
  }
  const auto px = gab_polynomials(f, moment_order, x), py = gab_polynomials(f, moment_order, y);
  VectorXd rhs(m);
  for (Eigen::Index n = 0; n < m; ++n) rhs(n) = px[n] * py[n];
  out.lp = lp_feasibility(a, rhs, opt);
  return out;
}

// ===========================================================================
// cosh hypergroup

struct CoshFamily {
  double r = 1.0;

  double p() const { return std::exp(r) / (std::exp(r) + std::exp(-r)); }
};

inline CoshFamily cosh_family(double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw Error(ErrorCode::ParameterOutOfRange, "cosh family needs r > 0 (got " + format_double(r) + ")");
  return CoshFamily{r};
}

/// δ_k * δ_l as weights on 0..k+l.
inline std::vector<double> cosh_convolution(const CoshFamily& f, int k, int l) {
  if (k < 0 || l < 0) throw Error(ErrorCode::ParameterOutOfRange, "k, l must be nonnegative");
  std::vector<double> w(static_cast<std::size_t>(k + l + 1), 0.0);
  const double den = 2.0 * std::cosh(k * f.r) * std::cosh(l * f.r);
  w[k + l] += std::cosh((k + l) * f.r) / den;
  w[std::abs(k - l)] += std::cosh((k - l) * f.r) / den;
  return w;
}

inline double cosh_haar(const CoshFamily& f, int k) {
  if (k == 0) return 1.0;
  const double c = std::cosh(k * f.r);
  return 2.0 * c * c;
}

struct CoshCharacter {
  Complex value;
  bool bounded = true;  // false: λ outside the dual parameter set (ParameterOutOfRange)
};

/// α_λ(n) = cos(λ n) / cosh(r n) for λ ∈ [0,π] ∪ i[0,r] ∪ (π + i[0,r]).
inline CoshCharacter cosh_character(const CoshFamily& f, Complex lambda, int n) {
  CoshCharacter c;
  c.value = std::cos(lambda * static_cast<double>(n)) / std::cosh(f.r * n);
  constexpr double eps = 1e-12;
  const double re = lambda.real(), im = lambda.imag();
  const bool real_seg = std::abs(im) <= eps && re >= -eps && re <= std::numbers::pi + eps;
  const bool imag_seg = std::abs(re) <= eps && im >= -eps && im <= f.r + eps;
  const bool shifted = std::abs(re - std::numbers::pi) <= eps && im >= -eps && im <= f.r + eps;
  c.bounded = real_seg || imag_seg || shifted;
  return c;
}

inline FunctionOnD cosh_character_vector(const CoshFamily& f, Complex lambda, int classes) {
  FunctionOnD v;
  for (int n = 0; n < classes; ++n) v.push_back(cosh_character(f, lambda, n).value);
  return v;
}

/// Window X = {-m..m}, D = {0..2m}, R_k = {|x-y| = k}, weight e^{2rx}.
inline GeneralizedScheme cosh_window_scheme(const CoshFamily& f, int half_width, GeneralizedOptions opt = {}) {
  if (half_width < 1) throw Error(ErrorCode::ParameterOutOfRange, "window half width must be at least 1");
  const int m = half_width, n = 2 * m + 1, d = 2 * m + 1;
  std::vector<std::string> points, classes;
  for (int x = -m; x <= m; ++x) points.push_back(std::to_string(x));
  for (int k = 0; k < d; ++k) classes.push_back(std::to_string(k));
  std::vector<int> rel(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) rel[x * n + y] = std::abs(x - y);
  const double p = f.p();
  std::vector<MatrixXd> st(d, MatrixXd::Zero(n, n));
  for (int k = 0; k < d; ++k) {
    const double up = std::pow(p, k), down = std::pow(1.0 - p, k);
    for (int x = 0; x < n; ++x) {
      if (k == 0) {
        st[0](x, x) = 1.0;
        continue;
      }
      if (x + k < n) st[k](x, x + k) = up / (up + down);
      if (x - k >= 0) st[k](x, x - k) = down / (up + down);
    }
  }
  VectorXd w(n);
  for (int x = -m; x <= m; ++x) w(x + m) = std::exp(2.0 * f.r * x);
  opt.window = Window::centered(m);
  opt.base_point = m;
  return build_generalized(RelationPartition(std::move(points), std::move(classes), std::move(rel)), std::move(st),
                           std::move(w), opt);
}

struct CoshWindowAudit {
  GeneralizedAudit axioms;
  double convolution_residual = 0.0;   // p~ vs cosh_convolution on k + l <= m
  double character_residual = 0.0;     // multiplicativity of α_λ on the deformed tensor
  double window_character_residual = 0.0;  // recurrence solution vs α_λ
  std::vector<double> lambdas;
  bool passed = false;
};

inline CoshWindowAudit cosh_window_audit(const CoshFamily& f, int half_width, std::vector<double> lambdas = {},
                                         double tol = 1e-12) {
  if (lambdas.empty())
    for (int j = 0; j <= 4; ++j) lambdas.push_back(std::numbers::pi * j / 4);
  const auto g = cosh_window_scheme(f, half_width);
  CoshWindowAudit out;
  out.axioms = g.audit;
  out.lambdas = lambdas;
  const int m = half_width, d = static_cast<int>(g.num_classes());
  for (int k = 0; k <= m; ++k)
    for (int l = 0; k + l <= m; ++l) {
      const auto ref = cosh_convolution(f, k, l);
      for (int c = 0; c < d; ++c) {
        const double want = c < static_cast<int>(ref.size()) ? ref[c] : 0.0;
        out.convolution_residual = std::max(out.convolution_residual, std::abs(g.deformed(k, l, c) - want));
      }
    }
  for (double lam : lambdas) {
    const auto alpha = cosh_character_vector(f, lam, d);
    out.character_residual = std::max(out.character_residual, deformed_multiplicativity_residual(g, alpha));
    const auto solved = window_characters(g, alpha[1]);
    for (std::size_t n = 0; n < solved.size(); ++n)
      out.window_character_residual = std::max(out.window_character_residual, std::abs(solved[n] - alpha[n]));
  }
  out.passed = out.axioms.balance_residual <= 1e-10 && out.axioms.stochastic_residual <= 1e-10 &&
               out.axioms.closure_residual <= 1e-10 && out.axioms.sum_residual <= 1e-10 &&
               out.convolution_residual <= tol && out.character_residual <= tol;
  return out;
}

struct QuadratureResult {
  double value = 0.0;
  double exact = 0.0;          // cos(λn)/cosh(rn)
  double cutoff_change = 0.0;  // |value(2·cutoff) - value(cutoff)|
  double min_weight = 0.0;     // min of 1/cosh((t+λ/r)π/2) over the nodes
};

/// ½ ∫ cos(t r n) / cosh((t + λ/r) π/2) dt by the trapezoid rule on [-cutoff, cutoff].
inline QuadratureResult cosh_connection_quadrature(const CoshFamily& f, double lambda, int n, double step = 0.05,
                                                   double cutoff = 40.0) {
  if (!(step > 0.0) || !(cutoff > 0.0)) throw Error(ErrorCode::ParameterOutOfRange, "step and cutoff must be positive");
  QuadratureResult q;
  q.min_weight = 1e300;
  auto trap = [&](double c) {
    const long half = std::lround(c / step);
    double s = 0.0;
    for (long j = -half; j <= half; ++j) {
      const double t = j * step;
      const double wt = 1.0 / std::cosh((t + lambda / f.r) * std::numbers::pi / 2.0);
      q.min_weight = std::min(q.min_weight, wt);
      s += (j == -half || j == half ? 0.5 : 1.0) * std::cos(t * f.r * n) * wt;
    }
    return 0.5 * s * step;
  };
  q.value = trap(cutoff);
  q.cutoff_change = std::abs(trap(2.0 * cutoff) - q.value);
  q.exact = std::cos(lambda * n) / std::cosh(f.r * n);
  if (q.cutoff_change > 1e-8)
    throw Error(ErrorCode::QuadratureNotConverged, "doubling the cutoff moved the value by " +
                                                       format_double(q.cutoff_change));
  return q;
}

/// α_λ α_μ = Σ_ν w_ν α_ν on grid nodes ν ∈ [0, π], moments n = 0..N.
inline MomentMeasure cosh_dual_measure(const CoshFamily& f, double lambda, double mu, int moment_order,
                                       int grid_nodes = 400, const LpOptions& opt = {}) {
  if (moment_order < 1) throw Error(ErrorCode::ParameterOutOfRange, "moment order must be at least 1");
  MomentMeasure out;
  out.nodes = chebyshev_nodes(grid_nodes, 0.0, std::numbers::pi);
  for (double anchor : {0.0, std::numbers::pi, lambda, mu})
    if (anchor >= 0.0 && anchor <= std::numbers::pi &&
        std::find(out.nodes.begin(), out.nodes.end(), anchor) == out.nodes.end())
      out.nodes.push_back(anchor);
  const auto m = static_cast<Eigen::Index>(moment_order + 1);
  MatrixXd a(m, static_cast<Eigen::Index>(out.nodes.size()));
  VectorXd rhs(m);
  for (Eigen::Index n = 0; n < m; ++n) {
    for (std::size_t j = 0; j < out.nodes.size(); ++j)
      a(n, j) = cosh_character(f, out.nodes[j], static_cast<int>(n)).value.real();
    rhs(n) = cosh_character(f, lambda, static_cast<int>(n)).value.real() *
             cosh_character(f, mu, static_cast<int>(n)).value.real();
  }
  out.lp = lp_feasibility(a, rhs, opt);
  return out;
}

}  // namespace hyperschemes
