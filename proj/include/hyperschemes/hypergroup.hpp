#pragma once

// Finite discrete hypergroups as convolution tensors c(i,j,k) = (δ_i * δ_j)({k}).
// The scalar is Rational for scheme-derived hypergroups and double for
// numerically generated ones.

#include "hyperschemes/scheme.hpp"

#include <sstream>

namespace hyperschemes {

inline constexpr double kDefaultTolerance = 1e-12;

template <class T>
struct FiniteHypergroup {
  std::vector<std::string> classes;
  Tensor3<T> conv;
  int identity = 0;
  std::vector<int> involution;
  std::vector<T> haar_left;   // Ω_l({i}) = ω_i
  std::vector<T> haar_right;  // Ω_r({i}) = ω_ī

  std::size_t size() const noexcept { return classes.size(); }
  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const { return conv(i, j, k); }

  bool is_commutative(double tol = kDefaultTolerance) const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        for (std::size_t k = 0; k < size(); ++k)
          if (!ScalarTraits<T>::near(conv(i, j, k), conv(j, i, k), tol)) return false;
    return true;
  }
  bool is_symmetric() const {
    for (std::size_t i = 0; i < size(); ++i)
      if (involution[i] != static_cast<int>(i)) return false;
    return true;
  }
};

using ExactHypergroup = FiniteHypergroup<Rational>;
using FloatHypergroup = FiniteHypergroup<double>;

template <class T>
using MeasureOnD = std::vector<T>;
using FunctionOnD = std::vector<Complex>;

struct AxiomCheck {
  std::string axiom;
  bool passed = true;
  std::string witness;
};

struct HypergroupReport {
  std::vector<AxiomCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const AxiomCheck& operator[](const std::string& name) const {
    for (const auto& c : checks)
      if (c.axiom == name) return c;
    throw std::out_of_range("no axiom " + name);
  }
};

/// Checks the discrete hypergroup axioms. Exact for rationals, `tol` for floats.
template <class T>
HypergroupReport verify_hypergroup(const FiniteHypergroup<T>& h, double tol = kDefaultTolerance) {
  using S = ScalarTraits<T>;
  const int n = static_cast<int>(h.size());
  HypergroupReport rep;
  auto add = [&](const char* name) -> AxiomCheck& {
    rep.checks.push_back({name, true, {}});
    return rep.checks.back();
  };
  auto fail = [](AxiomCheck& c, const std::string& w) {
    if (c.passed) {
      c.passed = false;
      c.witness = w;
    }
  };
  auto tup = [](std::initializer_list<int> v) {
    std::ostringstream os;
    os << '(';
    bool first = true;
    for (int x : v) {
      os << (first ? "" : ",") << x;
      first = false;
    }
    return os.str() + ")";
  };

  auto& shape = add("shape");
  if (h.conv.extent() != h.size() || h.involution.size() != h.size() || h.haar_left.size() != h.size() ||
      h.identity < 0 || h.identity >= n) {
    fail(shape, "tensor, involution, haar or identity inconsistent with |D|");
    return rep;
  }
  for (int i = 0; i < n; ++i)
    if (h.involution[i] < 0 || h.involution[i] >= n) {
      fail(shape, "involution out of range at " + std::to_string(i));
      return rep;
    }

  const int e = h.identity;
  const auto& inv = h.involution;
  const auto& c = h.conv;

  auto& prob = add("probability");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T sum = T(0);
      for (int k = 0; k < n; ++k) {
        if (S::negative(c(i, j, k), tol)) fail(prob, "negative mass at " + tup({i, j, k}));
        sum += c(i, j, k);
      }
      if (!S::near(sum, T(1), tol)) fail(prob, "mass != 1 at " + tup({i, j}));
    }

  auto& ident = add("identity");
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const T delta = T(j == k ? 1 : 0);
      if (!S::near(c(e, j, k), delta, tol) || !S::near(c(j, e, k), delta, tol))
        fail(ident, "δ_e*δ_j != δ_j at " + tup({j, k}));
    }

  auto& uniq = add("unique_identity");
  for (int d = 0; d < n; ++d) {
    if (d == e) continue;
    bool acts = true;
    for (int j = 0; j < n && acts; ++j)
      for (int k = 0; k < n && acts; ++k) {
        const T delta = T(j == k ? 1 : 0);
        acts = S::near(c(d, j, k), delta, tol) && S::near(c(j, d, k), delta, tol);
      }
    if (acts) fail(uniq, "class " + std::to_string(d) + " also acts as identity");
  }

  auto& invol = add("involution");
  for (int i = 0; i < n; ++i) {
    if (inv[inv[i]] != i) fail(invol, "involution not involutive at " + std::to_string(i));
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!S::near(c(i, j, k), c(inv[j], inv[i], inv[k]), tol))
          fail(invol, "(δ_i*δ_j)^- != δ_j̄*δ_ī at " + tup({i, j, k}));
  }

  auto& support = add("support");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const bool pos = S::positive(c(i, j, e), tol);
      if (pos != (j == inv[i])) fail(support, "e ∈ supp(δ_i*δ_j) mismatch at " + tup({i, j}));
    }

  auto& assoc = add("associativity");
  for (int i = 0; i < n && assoc.passed; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          T lhs = T(0), rhs = T(0);
          for (int l = 0; l < n; ++l) {
            if (c(i, j, l) != T(0)) lhs += c(i, j, l) * c(l, k, m);
            if (c(j, k, l) != T(0)) rhs += c(j, k, l) * c(i, l, m);
          }
          if (!S::near(lhs, rhs, tol)) fail(assoc, "(i,j,k,m)=" + tup({i, j, k, m}));
        }

  auto& haar = add("haar");
  for (int i = 0; i < n; ++i) {
    const T& back = c(inv[i], i, e);
    if (!S::positive(back, tol)) {
      fail(haar, "(δ_ī*δ_i)({e}) not positive at " + std::to_string(i));
      continue;
    }
    if (!S::near(h.haar_left[i] * back, T(1), tol * 10))
      fail(haar, "Ω_l({i}) != 1/(δ_ī*δ_i)({e}) at " + std::to_string(i));
    if (h.haar_right.size() == h.size() && !S::near(h.haar_right[i], h.haar_left[inv[i]], tol * 10))
      fail(haar, "Ω_r({i}) != Ω_l({ī}) at " + std::to_string(i));
  }
  return rep;
}

/// c(i,j,k) = ω_k p_{ij}^k / (ω_i ω_j), exactly.
inline ExactHypergroup hypergroup_from_scheme(const Scheme& s) {
  const std::size_t d = s.num_classes();
  ExactHypergroup h;
  h.classes = s.partition().classes();
  h.identity = s.identity();
  h.involution = s.involution();
  h.conv = Tensor3<Rational>(d, Rational(0));
  const auto& w = s.valencies();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (s.p(i, j, k) != 0) h.conv(i, j, k) = Rational(w[k] * s.p(i, j, k), w[i] * w[j]);
  for (std::size_t i = 0; i < d; ++i) {
    h.haar_left.emplace_back(w[i]);
    h.haar_right.emplace_back(w[s.involution()[i]]);
  }
  auto rep = verify_hypergroup(h);
  if (!rep.all_passed()) throw std::logic_error("scheme produced an invalid hypergroup");
  return h;
}

template <class T>
FloatHypergroup to_float(const FiniteHypergroup<T>& h) {
  if constexpr (std::is_same_v<T, double>) {
    return h;
  } else {
    FloatHypergroup f;
    f.classes = h.classes;
    f.identity = h.identity;
    f.involution = h.involution;
    const std::size_t n = h.size();
    f.conv = Tensor3<double>(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) f.conv(i, j, k) = ScalarTraits<T>::to_double(h.conv(i, j, k));
    for (const auto& w : h.haar_left) f.haar_left.push_back(ScalarTraits<T>::to_double(w));
    for (const auto& w : h.haar_right) f.haar_right.push_back(ScalarTraits<T>::to_double(w));
    return f;
  }
}

// ---------------------------------------------------------------------------
// Measure and function algebra

template <class T>
MeasureOnD<T> convolve_measures(const FiniteHypergroup<T>& h, const MeasureOnD<T>& mu, const MeasureOnD<T>& nu) {
  const std::size_t n = h.size();
  MeasureOnD<T> out(n, T(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (mu[i] == T(0)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (nu[j] == T(0)) continue;
      const T w = mu[i] * nu[j];
      for (std::size_t k = 0; k < n; ++k) out[k] += w * h.conv(i, j, k);
    }
  }
  return out;
}

template <class T>
MeasureOnD<T> point_mass(const FiniteHypergroup<T>& h, int i) {
  MeasureOnD<T> m(h.size(), T(0));
  m[i] = T(1);
  return m;
}

/// f(i*j) = Σ_k c(i,j,k) f(k).
template <class T>
Complex translate(const FiniteHypergroup<T>& h, const FunctionOnD& f, int i, int j) {
  Complex s = 0;
  for (std::size_t k = 0; k < h.size(); ++k) s += ScalarTraits<T>::to_double(h.conv(i, j, k)) * f[k];
  return s;
}

/// f*(i) = conj f(ī).
template <class T>
FunctionOnD involute(const FiniteHypergroup<T>& h, const FunctionOnD& f) {
  FunctionOnD out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = std::conj(f[h.involution[i]]);
  return out;
}

/// (f*g)(i) = Σ_j f(i*j̄) g(j) ω_j.
template <class T>
FunctionOnD convolve_functions(const FiniteHypergroup<T>& h, const FunctionOnD& f, const FunctionOnD& g) {
  const std::size_t n = h.size();
  FunctionOnD out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out[i] += translate(h, f, static_cast<int>(i), h.involution[j]) * g[j] *
                ScalarTraits<T>::to_double(h.haar_left[j]);
  return out;
}

/// Δ(i) = ω_i / ω_ī; checks Δ(k) = Δ(i)Δ(j) whenever c(i,j,k) > 0.
template <class T>
std::vector<T> modular_function(const FiniteHypergroup<T>& h, double tol = kDefaultTolerance) {
  const std::size_t n = h.size();
  std::vector<T> delta(n);
  for (std::size_t i = 0; i < n; ++i) delta[i] = h.haar_left[i] / h.haar_left[h.involution[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (ScalarTraits<T>::positive(h.conv(i, j, k), tol) &&
            !ScalarTraits<T>::near(delta[k], delta[i] * delta[j], tol * 10))
          throw std::logic_error("modular function is not strongly multiplicative");
  return delta;
}

}  // namespace hyperschemes
