#pragma once

// Characters, Plancherel weights, Fourier transform, positive definiteness and
// the dual convolution for finite commutative hypergroups.
//
// Characters are the joint eigenvectors of the translation operators
// (M_i f)(j) = f(i*j) = Σ_k c(i,j,k) f(k): a character satisfies
// M_i α = α(i) α. We diagonalize one seeded positive combination of the M_i
// and split any eigenvalue cluster by restricting the remaining operators to
// the cluster's invariant subspace.

#include "hyperschemes/hypergroup.hpp"
#include "hyperschemes/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace hyperschemes {

struct HarmonicOptions {
  double cluster_gap = 1e-8;          // eigenvalues closer than this are split further
  double character_tol = 1e-8;        // multiplicativity residual accepted
  double nonnegativity_tol = 1e-9;    // dual coefficients above -tol count as >= 0
  std::uint64_t seed = kDefaultSeed;
};

struct CharacterTable {
  std::vector<std::string> classes;
  std::vector<double> haar;                 // ω_i
  std::vector<std::vector<Complex>> chars;  // chars[a][i] = α_a(i)
  std::vector<double> plancherel;           // π({α_a})
  std::vector<int> conjugate;               // index of conj(α_a)
  int positive_index = 0;
  int identity_class = 0;
  double multiplicativity_residual = 0.0;

  std::size_t size() const noexcept { return chars.size(); }
  const std::vector<Complex>& operator[](std::size_t a) const { return chars[a]; }
};

namespace detail {

inline MatrixXcd translation_operator(const FloatHypergroup& h, int i) {
  const int n = static_cast<int>(h.size());
  MatrixXcd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = h.conv(i, j, k);
  return m;
}

/// Columns of the returned matrix are joint eigenvectors of `ops` inside the
/// subspace spanned by the orthonormal columns of `basis`.
inline MatrixXcd joint_eigenvectors(const std::vector<MatrixXcd>& ops, const MatrixXcd& basis,
                                    SeededUniform& rng, const HarmonicOptions& opt, int depth) {
  const Eigen::Index d = basis.cols();
  if (d == 1) return basis;
  if (depth > 8) throw Error(ErrorCode::DegenerateSplitFailure, "eigenvalue cluster did not split");

  std::vector<MatrixXcd> restricted;
  restricted.reserve(ops.size());
  for (const auto& op : ops) restricted.push_back(basis.adjoint() * op * basis);

  MatrixXcd combo = MatrixXcd::Zero(d, d);
  for (const auto& r : restricted) combo += rng(0.5, 1.5) * r;
  Eigen::ComplexEigenSolver<MatrixXcd> es(combo);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::DegenerateSplitFailure, "eigen-solver failed");
  const VectorXcd lambda = es.eigenvalues();
  const MatrixXcd vecs = es.eigenvectors();

  // single-linkage clusters of eigenvalues
  std::vector<int> cluster(d, -1);
  int nc = 0;
  for (Eigen::Index a = 0; a < d; ++a) {
    if (cluster[a] >= 0) continue;
    cluster[a] = nc;
    std::vector<Eigen::Index> stack{a};
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (Eigen::Index b = 0; b < d; ++b)
        if (cluster[b] < 0 && std::abs(lambda(u) - lambda(b)) < opt.cluster_gap) {
          cluster[b] = nc;
          stack.push_back(b);
        }
    }
    ++nc;
  }
  if (nc == 1 && depth > 0 && d > 1) {
    // every operator is scalar on this subspace: the split cannot proceed
    double spread = 0.0;
    for (const auto& r : restricted) {
      const Complex mean = r.trace() / static_cast<double>(d);
      spread = std::max(spread, (r - mean * MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff());
    }
    if (spread < opt.cluster_gap) {
      std::ostringstream os;
      os << "cluster of dimension " << d << " is scalar under all operators (residual " << spread << ")";
      throw Error(ErrorCode::DegenerateSplitFailure, os.str());
    }
  }

  MatrixXcd out(basis.rows(), d);
  Eigen::Index col = 0;
  for (int c = 0; c < nc; ++c) {
    std::vector<Eigen::Index> members;
    for (Eigen::Index a = 0; a < d; ++a)
      if (cluster[a] == c) members.push_back(a);
    MatrixXcd sub(d, static_cast<Eigen::Index>(members.size()));
    for (std::size_t t = 0; t < members.size(); ++t) sub.col(t) = vecs.col(members[t]);
    if (members.size() == 1) {
      out.col(col++) = basis * sub.col(0);
      continue;
    }
    Eigen::HouseholderQR<MatrixXcd> qr(sub);
    const MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(d, sub.cols());
    const MatrixXcd inner = joint_eigenvectors(restricted, q, rng, opt, depth + 1);
    const MatrixXcd lifted = basis * inner;
    for (Eigen::Index t = 0; t < lifted.cols(); ++t) out.col(col++) = lifted.col(t);
  }
  return out;
}

inline double snap(double v) {
  if (std::abs(v) < 1e-13) return 0.0;
  return v;
}

}  // namespace detail

/// Character table of a finite commutative hypergroup.
template <class T>
CharacterTable character_table(const FiniteHypergroup<T>& hg, const HarmonicOptions& opt = {}) {
  const FloatHypergroup h = to_float(hg);
  if (!h.is_commutative(1e-12)) throw Error(ErrorCode::NotCommutative, "hypergroup is not commutative");
  const int n = static_cast<int>(h.size());
  const int e = h.identity;

  std::vector<MatrixXcd> ops;
  for (int i = 0; i < n; ++i) ops.push_back(detail::translation_operator(h, i));

  SeededUniform rng(opt.seed);
  const MatrixXcd vecs = detail::joint_eigenvectors(ops, MatrixXcd::Identity(n, n), rng, opt, 0);

  CharacterTable tbl;
  tbl.classes = h.classes;
  tbl.haar = h.haar_left;
  tbl.identity_class = e;
  for (int a = 0; a < n; ++a) {
    const Complex pivot = vecs(e, a);
    if (std::abs(pivot) < 1e-12)
      throw Error(ErrorCode::DegenerateSplitFailure, "joint eigenvector vanishes at the identity");
    std::vector<Complex> alpha(n);
    for (int i = 0; i < n; ++i) {
      const Complex v = vecs(i, a) / pivot;
      alpha[i] = Complex(detail::snap(v.real()), detail::snap(v.imag()));
    }
    alpha[e] = 1.0;
    tbl.chars.push_back(std::move(alpha));
  }

  // multiplicativity α(i) conj(α(j)) = Σ_k c(i,j̄,k) α(k)
  double resid = 0.0;
  for (const auto& alpha : tbl.chars)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Complex rhs = 0;
        for (int k = 0; k < n; ++k) rhs += h.conv(i, h.involution[j], k) * alpha[k];
        resid = std::max(resid, std::abs(alpha[i] * std::conj(alpha[j]) - rhs));
      }
  tbl.multiplicativity_residual = resid;
  if (resid > opt.character_tol) {
    std::ostringstream os;
    os << "joint eigenvectors are not multiplicative (residual " << resid << ")";
    throw Error(ErrorCode::DegenerateSplitFailure, os.str());
  }

  // descending by real parts class by class, then by imaginary parts
  auto key = [](const std::vector<Complex>& a) {
    std::vector<std::int64_t> re, im;
    for (const auto& v : a) {
      re.push_back(std::llround(v.real() * 1e9));
      im.push_back(std::llround(v.imag() * 1e9));
    }
    re.insert(re.end(), im.begin(), im.end());
    return re;
  };
  std::vector<std::vector<std::int64_t>> keys;
  for (const auto& a : tbl.chars) keys.push_back(key(a));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return keys[x] > keys[y]; });
  std::vector<std::vector<Complex>> sorted;
  for (int a : order) sorted.push_back(tbl.chars[a]);
  tbl.chars = std::move(sorted);

  for (const auto& alpha : tbl.chars) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += tbl.haar[i] * std::norm(alpha[i]);
    tbl.plancherel.push_back(1.0 / s);
  }

  tbl.conjugate.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    double best = 1e300;
    for (int b = 0; b < n; ++b) {
      double dist = 0.0;
      for (int i = 0; i < n; ++i) dist = std::max(dist, std::abs(std::conj(tbl.chars[a][i]) - tbl.chars[b][i]));
      if (dist < best) {
        best = dist;
        tbl.conjugate[a] = b;
      }
    }
    if (best > opt.character_tol) throw std::logic_error("conjugate character missing from table");
  }

  int positives = 0;
  for (int a = 0; a < n; ++a) {
    bool pos = true;
    for (const auto& v : tbl.chars[a]) pos = pos && v.real() > opt.character_tol && std::abs(v.imag()) <= opt.character_tol;
    if (pos) {
      tbl.positive_index = a;
      ++positives;
    }
  }
  if (positives != 1) throw std::logic_error("expected exactly one strictly positive character");
  return tbl;
}

// ---------------------------------------------------------------------------
// Fourier analysis

/// f̂(α) = Σ_i ω_i f(i) conj(α(i)).
inline std::vector<Complex> fourier(const CharacterTable& tbl, const FunctionOnD& f) {
  std::vector<Complex> out(tbl.size(), 0.0);
  for (std::size_t a = 0; a < tbl.size(); ++a)
    for (std::size_t i = 0; i < f.size(); ++i) out[a] += tbl.haar[i] * f[i] * std::conj(tbl.chars[a][i]);
  return out;
}

/// f(i) = Σ_α π({α}) f̂(α) α(i).
inline FunctionOnD inverse_fourier(const CharacterTable& tbl, const std::vector<Complex>& coeffs) {
  FunctionOnD out(tbl.classes.size(), 0.0);
  for (std::size_t a = 0; a < tbl.size(); ++a)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += tbl.plancherel[a] * coeffs[a] * tbl.chars[a][i];
  return out;
}

/// Matrix test: M(i,j) = f(i * j̄) must be positive semidefinite.
template <class T>
PsdCertificate is_positive_definite(const FiniteHypergroup<T>& hg, const FunctionOnD& f, double tol = 1e-9) {
  const FloatHypergroup h = to_float(hg);
  if (!h.is_commutative(1e-12)) throw Error(ErrorCode::NotCommutative, "hypergroup is not commutative");
  const int n = static_cast<int>(h.size());
  MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = translate(h, f, i, h.involution[j]);
  return psd_test(m, tol);
}

/// Expansion f = Σ_α μ_α α with μ_α = π({α}) f̂(α).
inline std::vector<Complex> bochner_coefficients(const CharacterTable& tbl, const FunctionOnD& f) {
  auto c = fourier(tbl, f);
  for (std::size_t a = 0; a < c.size(); ++a) c[a] *= tbl.plancherel[a];
  return c;
}

struct BochnerCertificate {
  bool positive = false;
  double min_coefficient = 0.0;   // min Re μ_α
  double max_imaginary = 0.0;     // max |Im μ_α|
};

/// Character-expansion test: f is positive definite iff every μ_α >= 0.
inline BochnerCertificate is_positive_definite_bochner(const CharacterTable& tbl, const FunctionOnD& f,
                                                       double tol = 1e-9) {
  BochnerCertificate c;
  const auto mu = bochner_coefficients(tbl, f);
  c.min_coefficient = 1e300;
  for (const auto& m : mu) {
    c.min_coefficient = std::min(c.min_coefficient, m.real());
    c.max_imaginary = std::max(c.max_imaginary, std::abs(m.imag()));
  }
  c.positive = c.min_coefficient >= -tol && c.max_imaginary <= tol;
  return c;
}

// ---------------------------------------------------------------------------
// Dual convolution

struct DualMeasure {
  std::vector<Complex> raw;      // coefficients as solved
  std::vector<double> weights;   // clamped and renormalized when nonnegative
  double sum_raw = 0.0;
  double min_raw = 0.0;
  double max_imaginary = 0.0;
  bool nonnegative = true;       // false means NegativeCoefficient
};

namespace detail {
inline DualMeasure finish_dual_measure(std::vector<Complex> raw, double tol) {
  DualMeasure m;
  m.raw = std::move(raw);
  m.min_raw = 1e300;
  Complex sum = 0.0;
  for (const auto& c : m.raw) {
    sum += c;
    m.min_raw = std::min(m.min_raw, c.real());
    m.max_imaginary = std::max(m.max_imaginary, std::abs(c.imag()));
  }
  m.sum_raw = sum.real();
  if (std::abs(sum - 1.0) > 1e-8) throw std::logic_error("dual product does not have total mass 1");
  m.nonnegative = m.min_raw >= -tol;
  m.weights.resize(m.raw.size());
  if (m.nonnegative) {
    double s = 0.0;
    for (std::size_t g = 0; g < m.raw.size(); ++g) s += (m.weights[g] = std::max(0.0, m.raw[g].real()));
    for (auto& w : m.weights) w /= s;
  } else {
    for (std::size_t g = 0; g < m.raw.size(); ++g) m.weights[g] = m.raw[g].real();
  }
  return m;
}
}  // namespace detail

/// α·β = Σ_γ c_γ γ with c_γ = π({γ}) Σ_i ω_i α(i) β(i) conj(γ(i)).
inline DualMeasure dual_convolution(const CharacterTable& tbl, int alpha, int beta,
                                    const HarmonicOptions& opt = {}) {
  const std::size_t n = tbl.classes.size();
  std::vector<Complex> raw(tbl.size(), 0.0);
  for (std::size_t g = 0; g < tbl.size(); ++g) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      s += tbl.haar[i] * tbl.chars[alpha][i] * tbl.chars[beta][i] * std::conj(tbl.chars[g][i]);
    raw[g] = tbl.plancherel[g] * s;
  }
  return detail::finish_dual_measure(std::move(raw), opt.nonnegativity_tol);
}

inline std::string character_label(std::size_t a) { return "chi" + std::to_string(a); }

/// The dual hypergroup on the characters: identity = positive character,
/// involution = complex conjugation, convolution = dual_convolution.
inline FloatHypergroup dual_hypergroup(const CharacterTable& tbl, const HarmonicOptions& opt = {}) {
  const int n = static_cast<int>(tbl.size());
  FloatHypergroup d;
  for (int a = 0; a < n; ++a) d.classes.push_back(character_label(a));
  d.identity = tbl.positive_index;
  d.involution = tbl.conjugate;
  d.conv = Tensor3<double>(n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const auto m = dual_convolution(tbl, a, b, opt);
      if (!m.nonnegative) {
        std::ostringstream os;
        os << "coefficient " << m.min_raw << " in " << character_label(a) << "*" << character_label(b);
        throw Error(ErrorCode::DualNotPositive, os.str());
      }
      for (int g = 0; g < n; ++g) d.conv(a, b, g) = m.weights[g];
    }
  for (int a = 0; a < n; ++a) d.haar_left.push_back(1.0 / d.conv(d.involution[a], a, d.identity));
  for (int a = 0; a < n; ++a) d.haar_right.push_back(d.haar_left[d.involution[a]]);
  const auto rep = verify_hypergroup(d, 1e-10);
  if (!rep.all_passed()) throw std::logic_error("dual structure fails the hypergroup axioms");
  return d;
}

}  // namespace hyperschemes
