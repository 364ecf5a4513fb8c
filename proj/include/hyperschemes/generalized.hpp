#pragma once

// Generalized association schemes: stochastic matrices S~_i supported exactly
// on the relations R_i, closed under multiplication, with S~_e = I and
// reversible with respect to a positive vertex weight.
//
// Schemes on an infinite point set are handled through a finite Window: row x
// of S~_i is complete when its support lies inside the window, i.e. when
// boundary_distance[x] >= i (class indices double as distances).

#include "hyperschemes/harmonic.hpp"
#include "hyperschemes/hypergroup.hpp"
#include "hyperschemes/linalg.hpp"
#include "hyperschemes/scheme.hpp"

#include <limits>
#include <optional>

namespace hyperschemes {

struct Window {
  std::vector<int> boundary_distance;  // per point

  /// Points -m..m in order; boundary distance m - |x|.
  static Window centered(int half_width) {
    Window w;
    for (int x = -half_width; x <= half_width; ++x) w.boundary_distance.push_back(half_width - std::abs(x));
    return w;
  }
  int max_depth() const {
    int m = 0;
    for (int b : boundary_distance) m = std::max(m, b);
    return m;
  }
};

struct GeneralizedOptions {
  double stochastic_tol = 1e-12;
  double balance_tol = 1e-10;
  double closure_tol = 1e-9;
  double positivity_tol = 1e-14;
  int base_point = 0;
  std::optional<Window> window;
};

/// Residuals recorded while checking the axioms.
struct GeneralizedAudit {
  double stochastic_residual = 0.0;
  double balance_residual = 0.0;   // relative
  double invariance_residual = 0.0;  // relative
  double closure_residual = 0.0;
  double sum_residual = 0.0;
  std::size_t window_size = 0;
  double interior_fraction = 1.0;  // fraction of (x, i) rows that are complete
};

struct GeneralizedScheme {
  RelationPartition partition;
  std::optional<Scheme> base;
  std::optional<Window> window;
  std::vector<MatrixXd> stoch;
  VectorXd vertex_weight;
  int base_point = 0;
  int identity = 0;
  std::vector<int> involution;
  Tensor3<double> deformed;   // p~(i,j,k); NaN where the window does not determine it
  Tensor3<double> base_conv;  // classical convolution, same convention
  std::vector<double> haar;   // 1 / p~(i, ī, e); NaN if undetermined
  bool commutative = false;
  bool symmetric = false;
  GeneralizedAudit audit;

  std::size_t num_points() const noexcept { return partition.num_points(); }
  std::size_t num_classes() const noexcept { return partition.num_classes(); }
  bool windowed() const noexcept { return window.has_value(); }

  /// Row x of S~_i lies completely inside the point set.
  bool row_complete(std::size_t x, std::size_t i) const {
    return !window || window->boundary_distance[x] >= static_cast<int>(i);
  }
  /// Some row of S~_i S~_j has all of its mass inside the point set.
  bool pair_resolved(std::size_t i, std::size_t j) const {
    if (!window) return true;
    return window->max_depth() >= static_cast<int>(i + j);
  }
  /// Points on which every pairwise class has a determined Haar weight.
  std::vector<int> core_points() const {
    std::vector<int> pts;
    const int need = window ? (window->max_depth() + 1) / 2 : 0;
    for (std::size_t x = 0; x < num_points(); ++x)
      if (!window || window->boundary_distance[x] >= need) pts.push_back(static_cast<int>(x));
    return pts;
  }
};

namespace detail {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Reads p(i,j,k) off the product S_i S_j at one maximal witness entry per
/// class (supports are disjoint across k), then checks the full identity on
/// the complete rows. Returns the max closure residual.
inline double extract_structure(const GeneralizedScheme& g, const std::vector<MatrixXd>& s, Tensor3<double>& out) {
  const std::size_t n = g.num_points(), d = g.num_classes();
  out = Tensor3<double>(d, kNaN);
  double resid = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::size_t> rows;
    for (std::size_t x = 0; x < n; ++x)
      if (g.row_complete(x, i)) rows.push_back(x);
    if (rows.empty()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      const MatrixXd prod = s[i] * s[j];
      std::vector<double> best(d, 0.0);
      for (std::size_t x : rows)
        for (std::size_t y = 0; y < n; ++y) {
          const int k = g.partition(x, y);
          const double v = std::abs(s[k](x, y));
          if (v > best[k]) {
            best[k] = v;
            out(i, j, k) = prod(x, y) / s[k](x, y);
          }
        }
      for (std::size_t x : rows)
        for (std::size_t y = 0; y < n; ++y) {
          const int k = g.partition(x, y);
          const double coeff = std::isnan(out(i, j, k)) ? 0.0 : out(i, j, k);
          resid = std::max(resid, std::abs(prod(x, y) - coeff * s[k](x, y)));
        }
    }
  }
  return resid;
}

inline std::string pt(const GeneralizedScheme& g, std::size_t x) { return g.partition.points()[x]; }
inline std::string cl(const GeneralizedScheme& g, std::size_t i) { return g.partition.classes()[i]; }

}  // namespace detail

/// Verifies the generalized-scheme axioms and computes the deformed tensor.
inline GeneralizedScheme build_generalized(RelationPartition partition, std::vector<MatrixXd> stoch,
                                           VectorXd vertex_weight, const GeneralizedOptions& opt = {},
                                           std::optional<Scheme> base = std::nullopt) {
  GeneralizedScheme g;
  g.partition = std::move(partition);
  g.base = std::move(base);
  g.window = opt.window;
  const std::size_t n = g.num_points(), d = g.num_classes();

  if (stoch.size() != d) throw Error(ErrorCode::InvalidInput, "need one stochastic matrix per class");
  for (const auto& m : stoch)
    if (static_cast<std::size_t>(m.rows()) != n || static_cast<std::size_t>(m.cols()) != n)
      throw Error(ErrorCode::NonSquare, "stochastic matrix has wrong shape");
  if (static_cast<std::size_t>(vertex_weight.size()) != n)
    throw Error(ErrorCode::InvalidInput, "vertex weight has wrong length");
  if (g.window && g.window->boundary_distance.size() != n)
    throw Error(ErrorCode::InvalidInput, "window does not match the point set");
  if (opt.base_point < 0 || static_cast<std::size_t>(opt.base_point) >= n)
    throw Error(ErrorCode::InvalidInput, "base point out of range");
  for (std::size_t x = 0; x < n; ++x)
    if (!(vertex_weight(x) > 0.0)) throw Error(ErrorCode::InvalidInput, "vertex weight must be positive");

  g.stoch = std::move(stoch);
  g.base_point = opt.base_point;
  g.vertex_weight = vertex_weight / vertex_weight(opt.base_point);
  g.identity = g.partition.infer_identity();
  g.involution = g.partition.infer_involution();
  const auto& w = g.vertex_weight;
  const auto& s = g.stoch;
  auto& a = g.audit;
  a.window_size = n;

  // support and sign
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const double v = s[i](x, y);
        if (v < 0.0)
          throw Error(ErrorCode::NotStochastic, "negative entry in S~_" + detail::cl(g, i) + " at (" +
                                                    detail::pt(g, x) + "," + detail::pt(g, y) + ")");
        const bool in_relation = g.partition(x, y) == static_cast<int>(i);
        if ((v > 0.0) != in_relation)
          throw Error(ErrorCode::SupportMismatch, "S~_" + detail::cl(g, i) + " at (" + detail::pt(g, x) + "," +
                                                      detail::pt(g, y) + ") does not match R_" + detail::cl(g, i));
      }

  // row sums on complete rows; S~_e = I follows from support plus stochasticity
  std::size_t complete = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t x = 0; x < n; ++x) {
      if (!g.row_complete(x, i)) continue;
      ++complete;
      const double r = std::abs(s[i].row(x).sum() - 1.0);
      a.stochastic_residual = std::max(a.stochastic_residual, r);
      if (r > opt.stochastic_tol)
        throw Error(ErrorCode::NotStochastic, "row " + detail::pt(g, x) + " of S~_" + detail::cl(g, i) +
                                                  " sums to " + format_double(s[i].row(x).sum()));
    }
  a.interior_fraction = static_cast<double>(complete) / static_cast<double>(n * d);

  // detailed balance w(y) S~_ī(y,x) = w(x) S~_i(x,y), relative
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const double lhs = w(y) * s[g.involution[i]](y, x), rhs = w(x) * s[i](x, y);
        const double scale = std::max(std::abs(lhs), std::abs(rhs));
        if (scale == 0.0) continue;
        const double r = std::abs(lhs - rhs) / scale;
        a.balance_residual = std::max(a.balance_residual, r);
        if (r > opt.balance_tol)
          throw Error(ErrorCode::DetailedBalanceViolation, "i=" + detail::cl(g, i) + ", x=" + detail::pt(g, x) +
                                                               ", y=" + detail::pt(g, y));
      }

  // invariance Σ_x w(x) S~_i(x,y) = w(y) on complete columns
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t y = 0; y < n; ++y) {
      if (!g.row_complete(y, i)) continue;
      double acc = 0.0;
      for (std::size_t x = 0; x < n; ++x) acc += w(x) * s[i](x, y);
      a.invariance_residual = std::max(a.invariance_residual, std::abs(acc - w(y)) / w(y));
    }
  if (a.invariance_residual > opt.balance_tol)
    throw Error(ErrorCode::DetailedBalanceViolation, "vertex weight is not invariant (residual " +
                                                         format_double(a.invariance_residual) + ")");

  a.closure_residual = detail::extract_structure(g, s, g.deformed);
  if (a.closure_residual > opt.closure_tol)
    throw Error(ErrorCode::ClosureResidual, "S~_iS~_j is not in the span of the S~_k (residual " +
                                                format_double(a.closure_residual) + ")");

  // classical structure of the underlying partition: S_i = A_i / ω_i
  {
    std::vector<MatrixXd> classical(d, MatrixXd::Zero(n, n));
    for (std::size_t i = 0; i < d; ++i) {
      long valency = -1;
      for (std::size_t x = 0; x < n; ++x) {
        if (!g.row_complete(x, i)) continue;
        long cnt = 0;
        for (std::size_t y = 0; y < n; ++y) cnt += g.partition(x, y) == static_cast<int>(i);
        if (valency >= 0 && cnt != valency)
          throw Error(ErrorCode::InvalidInput, "relation R_" + detail::cl(g, i) + " has varying row counts");
        valency = cnt;
      }
      // no complete row: any positive scale reproduces the support
      if (valency < 0)
        for (std::size_t x = 0; x < n; ++x) {
          long cnt = 0;
          for (std::size_t y = 0; y < n; ++y) cnt += g.partition(x, y) == static_cast<int>(i);
          valency = std::max(valency, cnt);
        }
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (g.partition(x, y) == static_cast<int>(i) && valency > 0) classical[i](x, y) = 1.0 / valency;
    }
    const double r = detail::extract_structure(g, classical, g.base_conv);
    if (r > opt.closure_tol)
      throw Error(ErrorCode::InvalidInput, "underlying partition is not an association scheme on its complete rows");
  }

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      double sum = 0.0;
      bool known = true;
      for (std::size_t k = 0; k < d; ++k) {
        const double pt = g.deformed(i, j, k), pb = g.base_conv(i, j, k);
        if (std::isnan(pt) || std::isnan(pb)) {
          known = false;
          continue;
        }
        sum += pt;
        if ((pt > opt.positivity_tol) != (pb > opt.positivity_tol))
          throw Error(ErrorCode::SupportMismatch, "p~ and p differ in support at (" + detail::cl(g, i) + "," +
                                                      detail::cl(g, j) + "," + detail::cl(g, k) + ")");
      }
      if (known && g.pair_resolved(i, j)) {
        a.sum_residual = std::max(a.sum_residual, std::abs(sum - 1.0));
        if (std::abs(sum - 1.0) > opt.closure_tol)
          throw Error(ErrorCode::ClosureResidual, "Σ_k p~(" + detail::cl(g, i) + "," + detail::cl(g, j) +
                                                      ",k) = " + format_double(sum));
      }
    }

  g.haar.assign(d, detail::kNaN);
  for (std::size_t i = 0; i < d; ++i) {
    const double back = g.deformed(i, g.involution[i], g.identity);
    if (!std::isnan(back)) g.haar[i] = 1.0 / back;
  }

  g.symmetric = true;
  for (std::size_t i = 0; i < d; ++i) g.symmetric = g.symmetric && g.involution[i] == static_cast<int>(i);
  g.commutative = true;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const double u = g.deformed(i, j, k), v = g.deformed(j, i, k);
        if (!std::isnan(u) && !std::isnan(v) && std::abs(u - v) > opt.closure_tol) g.commutative = false;
      }
  return g;
}

/// The classical scheme viewed as a generalized one: S~_i = A_i / ω_i, weight 1.
inline GeneralizedScheme classical_embedding(const Scheme& s, const GeneralizedOptions& opt = {}) {
  const std::size_t n = s.num_points(), d = s.num_classes();
  std::vector<MatrixXd> st(d, MatrixXd::Zero(n, n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const int i = s.relation(x, y);
      st[i](x, y) = 1.0 / static_cast<double>(s.valencies()[i]);
    }
  return build_generalized(s.partition(), std::move(st), VectorXd::Ones(n), opt, s);
}

inline const Tensor3<double>& deformed_intersection_numbers(const GeneralizedScheme& g) { return g.deformed; }

/// Hypergroup (D, *~) with c = p~ and ω_i = 1 / p~(i, ī, e). Needs a closed scheme.
inline FloatHypergroup hypergroup_from_generalized(const GeneralizedScheme& g, double tol = 1e-10) {
  if (g.windowed())
    throw Error(ErrorCode::WindowNotClosed, "windowed scheme does not determine the full convolution");
  FloatHypergroup h;
  h.classes = g.partition.classes();
  h.identity = g.identity;
  h.involution = g.involution;
  h.conv = g.deformed;
  h.haar_left = g.haar;
  for (std::size_t i = 0; i < g.num_classes(); ++i) h.haar_right.push_back(g.haar[g.involution[i]]);
  const auto rep = verify_hypergroup(h, tol);
  for (const auto& c : rep.checks)
    if (!c.passed) throw Error(ErrorCode::InvalidInput, "deformed convolution fails " + c.axiom + ": " + c.witness);
  return h;
}

// ---------------------------------------------------------------------------
// Kernels

struct KernelMatrix {
  MatrixXcd values;
  std::vector<int> points;  // point indices of rows/columns
};

/// F_f(x,y) = f(i) for (x,y) ∈ R_i.
inline KernelMatrix kernel_F_f(const RelationPartition& p, const FunctionOnD& f) {
  const std::size_t n = p.num_points();
  if (f.size() != p.num_classes()) throw Error(ErrorCode::InvalidInput, "function has wrong length");
  KernelMatrix k;
  k.values.resize(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    k.points.push_back(static_cast<int>(x));
    for (std::size_t y = 0; y < n; ++y) k.values(x, y) = f[p(x, y)];
  }
  return k;
}

/// S~_f = Σ_i f(i) ω_i S~_i, on the core points of a window.
inline KernelMatrix s_tilde_f(const GeneralizedScheme& g, const FunctionOnD& f) {
  if (f.size() != g.num_classes()) throw Error(ErrorCode::InvalidInput, "function has wrong length");
  KernelMatrix k;
  k.points = g.core_points();
  const auto m = static_cast<Eigen::Index>(k.points.size());
  k.values = MatrixXcd::Zero(m, m);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < m; ++c) {
      const int x = k.points[r], y = k.points[c];
      const int i = g.partition(x, y);
      if (std::isnan(g.haar[i])) throw std::logic_error("core point pair with undetermined Haar weight");
      k.values(r, c) = f[i] * g.haar[i] * g.stoch[i](x, y);
    }
  return k;
}

/// PSD test of (w(x) A(x,y)), decided on the congruent W^{1/2} A W^{-1/2}.
inline PsdCertificate pi_positive_definite(const VectorXd& weight, const MatrixXcd& a, double tol = 1e-9) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::NonSquare, "kernel is not square");
  if (a.rows() != weight.size()) throw Error(ErrorCode::NonSquare, "kernel does not match the vertex weight");
  const VectorXd sq = weight.cwiseSqrt();
  MatrixXcd b = a;
  for (Eigen::Index x = 0; x < b.rows(); ++x)
    for (Eigen::Index y = 0; y < b.cols(); ++y) b(x, y) *= sq(x) / sq(y);
  return psd_test(b, tol);
}

inline PsdCertificate pi_positive_definite(const GeneralizedScheme& g, const KernelMatrix& k, double tol = 1e-9) {
  VectorXd w(static_cast<Eigen::Index>(k.points.size()));
  for (std::size_t r = 0; r < k.points.size(); ++r) w(r) = g.vertex_weight(k.points[r]);
  return pi_positive_definite(w, k.values, tol);
}

// ---------------------------------------------------------------------------
// Positive connection property and the dual product

struct ConnectionCertificate {
  bool certified = false;
  PsdCertificate base_positive_definite;  // α on the classical hypergroup (D, *)
  PsdCertificate kernel;                  // F_α, unweighted
  double multiplicativity_residual = 0.0;
  bool sectioned = false;  // windowed: only a finite section of (D, *) was tested
};

/// max |α(i) conj(α(j)) - Σ_k p~(i, j̄, k) α(k)| over resolved pairs.
inline double deformed_multiplicativity_residual(const GeneralizedScheme& g, const FunctionOnD& alpha) {
  const std::size_t d = g.num_classes();
  double r = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const int jb = g.involution[j];
      if (!g.pair_resolved(i, jb)) continue;
      Complex rhs = 0.0;
      bool known = true;
      for (std::size_t k = 0; k < d; ++k) {
        const double c = g.deformed(i, jb, k);
        if (std::isnan(c)) {
          known = false;
          break;
        }
        rhs += c * alpha[k];
      }
      if (known) r = std::max(r, std::abs(alpha[i] * std::conj(alpha[j]) - rhs));
    }
  return r;
}

namespace detail {

inline ConnectionCertificate connection_check(const GeneralizedScheme& g, const FunctionOnD& alpha,
                                              const FloatHypergroup* base, double tol, double character_tol) {
  if (alpha.size() != g.num_classes()) throw Error(ErrorCode::InvalidInput, "function has wrong length");
  ConnectionCertificate c;
  c.multiplicativity_residual = deformed_multiplicativity_residual(g, alpha);
  if (c.multiplicativity_residual > character_tol)
    throw Error(ErrorCode::NotACharacter, "multiplicativity residual " + format_double(c.multiplicativity_residual));

  if (g.base) {
    c.base_positive_definite = is_positive_definite(*base, alpha, tol);
  } else {
    // finite section of (D,*) on the classes whose pairwise products are resolved
    std::vector<int> cls;
    for (std::size_t i = 0; i < g.num_classes(); ++i)
      if (g.pair_resolved(i, i)) cls.push_back(static_cast<int>(i));
    const auto m = static_cast<Eigen::Index>(cls.size());
    MatrixXcd sec(m, m);
    for (Eigen::Index r = 0; r < m; ++r)
      for (Eigen::Index q = 0; q < m; ++q) {
        Complex v = 0.0;
        for (std::size_t k = 0; k < g.num_classes(); ++k) {
          const double b = g.base_conv(cls[r], g.involution[cls[q]], k);
          if (!std::isnan(b)) v += b * alpha[k];
        }
        sec(r, q) = v;
      }
    c.base_positive_definite = psd_test(sec, tol);
    c.sectioned = true;
  }
  c.kernel = psd_test(kernel_F_f(g.partition, alpha).values, tol);
  c.certified = c.base_positive_definite.positive && c.kernel.positive;
  return c;
}

inline std::optional<FloatHypergroup> base_hypergroup(const GeneralizedScheme& g) {
  if (!g.base) return std::nullopt;
  return to_float(hypergroup_from_scheme(*g.base));
}

}  // namespace detail

inline ConnectionCertificate positive_connection_check(const GeneralizedScheme& g, const FunctionOnD& alpha,
                                                       double tol = 1e-9, double character_tol = 1e-8) {
  const auto base = detail::base_hypergroup(g);
  return detail::connection_check(g, alpha, base ? &*base : nullptr, tol, character_tol);
}

struct GeneralizedDualMeasure {
  DualMeasure measure;
  bool precondition_certified = false;  // false: PreconditionNotCertified, result advisory
  ConnectionCertificate connection;
};

/// Expansion of α·β in the characters of (D, *~). `tbl` must be the
/// character table of hypergroup_from_generalized(g).
inline GeneralizedDualMeasure dual_product_generalized(const GeneralizedScheme& g, const CharacterTable& tbl, int alpha,
                                                       int beta, const HarmonicOptions& opt = {}) {
  if (g.windowed()) throw Error(ErrorCode::WindowNotClosed, "dual product needs the full character table");
  GeneralizedDualMeasure out;
  out.connection = positive_connection_check(g, tbl.chars[beta], opt.nonnegativity_tol, opt.character_tol);
  out.precondition_certified = out.connection.certified;
  out.measure = dual_convolution(tbl, alpha, beta, opt);
  return out;
}

/// All pairs at once; entry [alpha][beta]. The connection check runs once per beta.
inline std::vector<std::vector<GeneralizedDualMeasure>> dual_products_generalized(const GeneralizedScheme& g,
                                                                                  const CharacterTable& tbl,
                                                                                  const HarmonicOptions& opt = {}) {
  if (g.windowed()) throw Error(ErrorCode::WindowNotClosed, "dual product needs the full character table");
  const auto base = detail::base_hypergroup(g);
  const std::size_t n = tbl.size();
  std::vector<std::vector<GeneralizedDualMeasure>> out(n, std::vector<GeneralizedDualMeasure>(n));
  for (std::size_t b = 0; b < n; ++b) {
    const auto cert =
        detail::connection_check(g, tbl.chars[b], base ? &*base : nullptr, opt.nonnegativity_tol, opt.character_tol);
    for (std::size_t a = 0; a < n; ++a) {
      out[a][b].connection = cert;
      out[a][b].precondition_certified = cert.certified;
      out[a][b].measure = dual_convolution(tbl, static_cast<int>(a), static_cast<int>(b), opt);
    }
  }
  return out;
}

/// Schur-product step: (w(x) S~_α(x,y) F_β(x,y)) is PSD and equals w·S~_{αβ}.
struct SchurCertificate {
  PsdCertificate psd;
  double equality_residual = 0.0;
};

inline SchurCertificate schur_product_certificate(const GeneralizedScheme& g, const FunctionOnD& alpha,
                                                  const FunctionOnD& beta, double tol = 1e-9) {
  const auto sa = s_tilde_f(g, alpha);
  FunctionOnD ab(alpha.size());
  for (std::size_t i = 0; i < ab.size(); ++i) ab[i] = alpha[i] * beta[i];
  const auto sab = s_tilde_f(g, ab);
  MatrixXcd schur = sa.values;
  for (Eigen::Index r = 0; r < schur.rows(); ++r)
    for (Eigen::Index c = 0; c < schur.cols(); ++c)
      schur(r, c) *= beta[g.partition(sa.points[r], sa.points[c])];
  SchurCertificate cert;
  cert.equality_residual = (schur - sab.values).cwiseAbs().maxCoeff();
  cert.psd = pi_positive_definite(g, KernelMatrix{schur, sa.points}, tol);
  return cert;
}

/// Largest singular value of W^{1/2} S~_i W^{-1/2} and the adjoint defect
/// max |W^{1/2} S~_ī W^{-1/2} - (W^{1/2} S~_i W^{-1/2})^T|.
struct OperatorNormReport {
  double norm = 0.0;
  double adjoint_residual = 0.0;
};

inline OperatorNormReport weighted_operator_norm(const GeneralizedScheme& g, std::size_t i) {
  const VectorXd sq = g.vertex_weight.cwiseSqrt();
  auto balance = [&](const MatrixXd& s) {
    MatrixXd b = s;
    for (Eigen::Index x = 0; x < b.rows(); ++x)
      for (Eigen::Index y = 0; y < b.cols(); ++y) b(x, y) *= sq(x) / sq(y);
    return b;
  };
  const MatrixXd bi = balance(g.stoch[i]);
  const MatrixXd bj = balance(g.stoch[g.involution[i]]);
  OperatorNormReport r;
  Eigen::JacobiSVD<MatrixXd> svd(bi);
  r.norm = svd.singularValues()(0);
  r.adjoint_residual = (bj - bi.transpose()).cwiseAbs().maxCoeff();
  return r;
}

/// Multiplicative function with α(1) = value on a symmetric scheme whose
/// deformed tensor has the three-term form p~(1,n,·) ⊂ {n-1, n, n+1}.
/// Classes are indexed 0, 1, 2, ...; returns α(0..N) for the largest N the
/// window resolves.
inline std::vector<Complex> window_characters(const GeneralizedScheme& g, Complex value) {
  const std::size_t d = g.num_classes();
  if (d < 2 || g.identity != 0 || g.involution[1] != 1)
    throw Error(ErrorCode::InvalidInput, "needs classes 0 (identity) and 1 (symmetric generator)");
  std::vector<Complex> a{1.0, value};
  for (std::size_t n = 1; n + 1 < d && g.pair_resolved(1, n); ++n) {
    Complex acc = value * a[n];
    for (std::size_t k = 0; k <= n; ++k) acc -= g.deformed(1, n, k) * a[k];
    for (std::size_t k = n + 2; k < d; ++k)
      if (std::abs(g.deformed(1, n, k)) > 1e-14)
        throw Error(ErrorCode::InvalidInput, "deformed tensor is not three-term");
    const double lead = g.deformed(1, n, n + 1);
    if (!(lead > 0.0)) throw Error(ErrorCode::InvalidInput, "vanishing leading coefficient");
    a.push_back(acc / lead);
  }
  return a;
}

}  // namespace hyperschemes
