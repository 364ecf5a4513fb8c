#pragma once

// Finite association schemes: a partition of X×X into relations R_i with
// constant intersection counts, plus the Bose–Mesner matrices and the
// combinatorial identities the counts must satisfy.

#include "hyperschemes/core.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace hyperschemes {

/// A labelled map X×X -> D. Labels are opaque; indices follow input order.
class RelationPartition {
 public:
  RelationPartition() = default;

  /// `relation` is |X|×|X| row-major with entries in [0, |D|).
  RelationPartition(std::vector<std::string> points, std::vector<std::string> classes,
                    std::vector<int> relation)
      : points_(std::move(points)), classes_(std::move(classes)), relation_(std::move(relation)) {
    if (points_.empty()) throw Error(ErrorCode::InvalidInput, "point set is empty");
    if (classes_.empty()) throw Error(ErrorCode::InvalidInput, "class set is empty");
    check_unique(points_, "point");
    check_unique(classes_, "class");
    if (relation_.size() != points_.size() * points_.size())
      throw Error(ErrorCode::InvalidInput, "relation map is not total on X×X");
    for (int c : relation_)
      if (c < 0 || c >= static_cast<int>(classes_.size()))
        throw Error(ErrorCode::InvalidInput, "relation refers to an unknown class index");
  }

  /// Builds the partition from (x, y, class) label triples; every ordered pair
  /// must occur exactly once.
  static RelationPartition from_triples(
      std::vector<std::string> points, std::vector<std::string> classes,
      const std::vector<std::tuple<std::string, std::string, std::string>>& triples) {
    std::map<std::string, int> pidx, cidx;
    for (std::size_t i = 0; i < points.size(); ++i) pidx[points[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < classes.size(); ++i) cidx[classes[i]] = static_cast<int>(i);
    const std::size_t n = points.size();
    std::vector<int> rel(n * n, -1);
    for (const auto& [x, y, c] : triples) {
      auto ix = pidx.find(x), iy = pidx.find(y);
      auto ic = cidx.find(c);
      if (ix == pidx.end() || iy == pidx.end())
        throw Error(ErrorCode::InvalidInput, "unknown point in relation (" + x + "," + y + ")");
      if (ic == cidx.end()) throw Error(ErrorCode::InvalidInput, "unknown class '" + c + "'");
      int& slot = rel[ix->second * n + iy->second];
      if (slot != -1)
        throw Error(ErrorCode::InvalidInput, "pair (" + x + "," + y + ") assigned twice");
      slot = ic->second;
    }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (rel[x * n + y] < 0)
          throw Error(ErrorCode::InvalidInput,
                      "relation map is not total: pair (" + points[x] + "," + points[y] + ") missing");
    return RelationPartition(std::move(points), std::move(classes), std::move(rel));
  }

  std::size_t num_points() const noexcept { return points_.size(); }
  std::size_t num_classes() const noexcept { return classes_.size(); }
  const std::vector<std::string>& points() const noexcept { return points_; }
  const std::vector<std::string>& classes() const noexcept { return classes_; }
  int operator()(std::size_t x, std::size_t y) const { return relation_[x * points_.size() + y]; }
  const std::vector<int>& relation() const noexcept { return relation_; }

  int class_index(const std::string& label) const {
    for (std::size_t i = 0; i < classes_.size(); ++i)
      if (classes_[i] == label) return static_cast<int>(i);
    throw Error(ErrorCode::InvalidInput, "unknown class '" + label + "'");
  }
  int point_index(const std::string& label) const {
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (points_[i] == label) return static_cast<int>(i);
    throw Error(ErrorCode::InvalidInput, "unknown point '" + label + "'");
  }

  /// Identity class: the diagonal must be one class that appears nowhere else.
  int infer_identity() const {
    const std::size_t n = num_points();
    const int e = (*this)(0, 0);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const int c = (*this)(x, y);
        if (x == y && c != e)
          throw Error(ErrorCode::NoIdentityClass, "diagonal splits into classes '" + classes_[e] +
                                                      "' and '" + classes_[c] + "' at point " +
                                                      points_[x]);
        if (x != y && c == e)
          throw Error(ErrorCode::NoIdentityClass, "diagonal class '" + classes_[e] +
                                                      "' also contains (" + points_[x] + "," +
                                                      points_[y] + ")");
      }
    return e;
  }

  /// ī for every class; the transpose of each R_i must be a single class.
  std::vector<int> infer_involution() const {
    const std::size_t n = num_points();
    std::vector<int> inv(num_classes(), -1);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const int c = (*this)(x, y), t = (*this)(y, x);
        if (inv[c] == -1) {
          inv[c] = t;
        } else if (inv[c] != t) {
          throw Error(ErrorCode::NoInvolution, "transpose of class '" + classes_[c] +
                                                   "' meets classes '" + classes_[inv[c]] +
                                                   "' and '" + classes_[t] + "'");
        }
      }
    for (std::size_t c = 0; c < inv.size(); ++c)
      if (inv[c] == -1) throw Error(ErrorCode::EmptyClass, "class '" + classes_[c] + "' is empty");
    return inv;
  }

 private:
  static void check_unique(const std::vector<std::string>& labels, const char* what) {
    std::map<std::string, int> seen;
    for (const auto& l : labels)
      if (seen[l]++) throw Error(ErrorCode::InvalidInput, std::string("duplicate ") + what + " label '" + l + "'");
  }

  std::vector<std::string> points_;
  std::vector<std::string> classes_;
  std::vector<int> relation_;
};

/// Raw intersection data; kept separate from Scheme so it can be audited
/// (and deliberately corrupted in tests) without a backing partition.
struct IntersectionData {
  Tensor3<std::int64_t> p;  // p(i,j,k) = p_{i,j}^k
  std::vector<std::int64_t> valency;
  int identity = 0;
  std::vector<int> involution;

  std::size_t size() const noexcept { return valency.size(); }
};

/// Optional user claims; build_scheme checks them against what it infers.
struct SchemeAssertions {
  std::optional<std::string> identity;
  std::optional<std::vector<std::string>> involution;
};

class Scheme;
Scheme build_scheme(RelationPartition partition, const SchemeAssertions& claims = {});

/// A verified finite association scheme. Immutable; only build_scheme makes one.
class Scheme {
 public:
  const RelationPartition& partition() const noexcept { return partition_; }
  const IntersectionData& data() const noexcept { return data_; }

  std::size_t num_points() const noexcept { return partition_.num_points(); }
  std::size_t num_classes() const noexcept { return partition_.num_classes(); }
  int identity() const noexcept { return data_.identity; }
  const std::vector<int>& involution() const noexcept { return data_.involution; }
  const Tensor3<std::int64_t>& intersection() const noexcept { return data_.p; }
  std::int64_t p(int i, int j, int k) const { return data_.p(i, j, k); }
  const std::vector<std::int64_t>& valencies() const noexcept { return data_.valency; }
  int relation(std::size_t x, std::size_t y) const { return partition_(x, y); }

 private:
  friend Scheme build_scheme(RelationPartition, const SchemeAssertions&);
  Scheme(RelationPartition part, IntersectionData data)
      : partition_(std::move(part)), data_(std::move(data)) {}

  RelationPartition partition_;
  IntersectionData data_;
};

inline bool is_commutative(const IntersectionData& d) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (d.p(i, j, k) != d.p(j, i, k)) return false;
  return true;
}

inline bool is_symmetric(const IntersectionData& d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d.involution[i] != static_cast<int>(i)) return false;
  return true;
}

inline bool is_unimodular(const IntersectionData& d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d.valency[i] != d.valency[d.involution[i]]) return false;
  return true;
}

inline bool is_commutative(const Scheme& s) { return is_commutative(s.data()); }
inline bool is_symmetric(const Scheme& s) { return is_symmetric(s.data()); }
inline bool is_unimodular(const Scheme& s) { return is_unimodular(s.data()); }

inline Scheme build_scheme(RelationPartition partition, const SchemeAssertions& claims) {
  const RelationPartition& part = partition;
  const std::size_t n = part.num_points();
  const std::size_t d = part.num_classes();

  // empty classes first: the involution scan would report them less clearly
  std::vector<int> first_x(d, -1), first_y(d, -1);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const int c = part(x, y);
      if (first_x[c] < 0) {
        first_x[c] = static_cast<int>(x);
        first_y[c] = static_cast<int>(y);
      }
    }
  for (std::size_t c = 0; c < d; ++c)
    if (first_x[c] < 0) throw Error(ErrorCode::EmptyClass, "class '" + part.classes()[c] + "' is empty");

  IntersectionData data;
  data.identity = part.infer_identity();
  data.involution = part.infer_involution();
  data.p = Tensor3<std::int64_t>(d, 0);

  std::vector<std::int64_t> counts(d * d);
  auto count_pair = [&](std::size_t x, std::size_t y) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t z = 0; z < n; ++z) ++counts[part(x, z) * d + part(z, y)];
  };

  for (std::size_t k = 0; k < d; ++k) {
    count_pair(first_x[k], first_y[k]);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) data.p(i, j, k) = counts[i * d + j];
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const int k = part(x, y);
      count_pair(x, y);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          if (counts[i * d + j] != data.p(i, j, k)) {
            const auto& P = part.points();
            const auto& C = part.classes();
            std::ostringstream os;
            os << "p[" << C[i] << "][" << C[j] << "][" << C[k] << "] is " << data.p(i, j, k)
               << " at (" << P[first_x[k]] << "," << P[first_y[k]] << ") but " << counts[i * d + j]
               << " at (" << P[x] << "," << P[y] << ")";
            throw Error(ErrorCode::InconsistentIntersection, os.str());
          }
    }

  data.valency.resize(d);
  for (std::size_t i = 0; i < d; ++i) data.valency[i] = data.p(i, data.involution[i], data.identity);

  if (claims.identity && part.class_index(*claims.identity) != data.identity)
    throw Error(ErrorCode::NoIdentityClass,
                "claimed identity '" + *claims.identity + "' but the diagonal is '" +
                    part.classes()[data.identity] + "'");
  if (claims.involution) {
    if (claims.involution->size() != d)
      throw Error(ErrorCode::NoInvolution, "claimed involution has wrong length");
    for (std::size_t i = 0; i < d; ++i)
      if (part.class_index((*claims.involution)[i]) != data.involution[i])
        throw Error(ErrorCode::NoInvolution, "claimed involution of '" + part.classes()[i] +
                                                 "' is '" + (*claims.involution)[i] + "', inferred '" +
                                                 part.classes()[data.involution[i]] + "'");
  }
  // |X|·ω_i ones in A_i and A_ī = A_iᵀ
  if (!is_unimodular(data)) throw std::logic_error("finite scheme with ω_i != ω_ī");

  return Scheme(std::move(partition), std::move(data));
}

/// Convenience overload taking labelled triples.
inline Scheme build_scheme(std::vector<std::string> points, std::vector<std::string> classes,
                           const std::vector<std::tuple<std::string, std::string, std::string>>& relations,
                           const SchemeAssertions& claims = {}) {
  return build_scheme(RelationPartition::from_triples(std::move(points), std::move(classes), relations),
                      claims);
}

// ---------------------------------------------------------------------------
// Bose–Mesner matrices

struct SchemeMatrices {
  std::vector<DenseMatrix<std::int64_t>> adjacency;
  std::vector<DenseMatrix<Rational>> stochastic;
};

inline SchemeMatrices scheme_matrices(const Scheme& s) {
  const std::size_t n = s.num_points(), d = s.num_classes();
  SchemeMatrices m;
  m.adjacency.assign(d, DenseMatrix<std::int64_t>(n, n, 0));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) m.adjacency[s.relation(x, y)](x, y) = 1;
  m.stochastic.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    DenseMatrix<Rational> st(n, n);
    const Rational w(1, s.valencies()[i]);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (m.adjacency[i](x, y)) st(x, y) = w;
    m.stochastic.push_back(std::move(st));
  }

  // A_iA_j = Σ_k p_{ij}^k A_k, exactly
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto prod = m.adjacency[i] * m.adjacency[j];
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (prod(x, y) != s.p(i, j, s.relation(x, y)))
            throw std::logic_error("Bose–Mesner expansion disagrees with intersection tensor");
    }
  return m;
}

// ---------------------------------------------------------------------------
// The seven intersection-number identities

struct IdentityCheck {
  int number = 0;
  std::string statement;
  bool passed = true;
  std::string witness;
};

struct MultassReport {
  std::array<IdentityCheck, 7> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

inline MultassReport audit_multass(const IntersectionData& d) {
  MultassReport r;
  const int n = static_cast<int>(d.size());
  const int e = d.identity;
  const auto& w = d.valency;
  const auto& inv = d.involution;
  const auto& p = d.p;

  const char* statements[7] = {
      "p_{e,i}^j = p_{i,e}^j = δ_ij and p_{i,j}^e = ω_i δ_{i,j̄}",
      "p_{i,j}^l = p_{j̄,ī}^{l̄}",
      "Σ_j p_{i,j}^l = ω_i",
      "ω_l p_{i,j}^l = ω_i p_{l,j̄}^i",
      "Σ_l ω_l p_{i,j}^l = ω_i ω_j",
      "Σ_l p_{i,j}^l p_{l,k}^m = Σ_l p_{j,k}^l p_{i,l}^m",
      "p_{i,j}^k > 0 implies ω_k/ω_k̄ = (ω_i/ω_ī)(ω_j/ω_j̄)",
  };
  for (int t = 0; t < 7; ++t) {
    r.checks[t].number = t + 1;
    r.checks[t].statement = statements[t];
  }
  auto fail = [&](int t, const std::string& witness) {
    if (r.checks[t].passed) {
      r.checks[t].passed = false;
      r.checks[t].witness = witness;
    }
  };
  auto idx = [](std::initializer_list<int> v) {
    std::ostringstream os;
    os << '(';
    bool first = true;
    for (int x : v) {
      os << (first ? "" : ",") << x;
      first = false;
    }
    os << ')';
    return os.str();
  };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::int64_t delta = i == j;
      if (p(e, i, j) != delta || p(i, e, j) != delta) fail(0, "i,j=" + idx({i, j}));
      if (p(i, j, e) != w[i] * (i == inv[j])) fail(0, "i,j=" + idx({i, j}));
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        if (p(i, j, l) != p(inv[j], inv[i], inv[l])) fail(1, "i,j,l=" + idx({i, j, l}));

  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      std::int64_t s = 0;
      for (int j = 0; j < n; ++j) s += p(i, j, l);
      if (s != w[i]) fail(2, "i,l=" + idx({i, l}));
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        if (w[l] * p(i, j, l) != w[i] * p(l, inv[j], i)) fail(3, "i,j,l=" + idx({i, j, l}));

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::int64_t s = 0;
      for (int l = 0; l < n; ++l) s += w[l] * p(i, j, l);
      if (s != w[i] * w[j]) fail(4, "i,j=" + idx({i, j}));
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          std::int64_t lhs = 0, rhs = 0;
          for (int l = 0; l < n; ++l) {
            lhs += p(i, j, l) * p(l, k, m);
            rhs += p(j, k, l) * p(i, l, m);
          }
          if (lhs != rhs) fail(5, "i,j,k,m=" + idx({i, j, k, m}));
        }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (p(i, j, k) > 0 && w[k] * w[inv[i]] * w[inv[j]] != w[inv[k]] * w[i] * w[j])
          fail(6, "i,j,k=" + idx({i, j, k}));

  return r;
}

inline MultassReport audit_multass(const Scheme& s) { return audit_multass(s.data()); }

// ---------------------------------------------------------------------------
// Automorphisms

namespace detail {
inline void require_bijection(const std::vector<int>& f, std::size_t n, const char* what) {
  if (f.size() != n) throw Error(ErrorCode::NotBijective, std::string(what) + " has wrong length");
  std::vector<char> hit(n, 0);
  for (int v : f) {
    if (v < 0 || v >= static_cast<int>(n) || hit[v])
      throw Error(ErrorCode::NotBijective, std::string(what) + " is not a bijection");
    hit[v] = 1;
  }
}
}  // namespace detail

/// (x,y) ∈ R_i implies (phi(x), phi(y)) ∈ R_{psi(i)}.
inline bool check_automorphism(const Scheme& s, const std::vector<int>& phi, const std::vector<int>& psi) {
  detail::require_bijection(phi, s.num_points(), "phi");
  detail::require_bijection(psi, s.num_classes(), "psi");
  for (std::size_t x = 0; x < s.num_points(); ++x)
    for (std::size_t y = 0; y < s.num_points(); ++y)
      if (s.relation(phi[x], phi[y]) != psi[s.relation(x, y)]) return false;
  return true;
}

/// Checks phi with psi = involution. A scheme admitting such an automorphism
/// is commutative; that conclusion is asserted on success.
inline bool commutativity_by_involution_automorphism(const Scheme& s, const std::vector<int>& phi) {
  if (!check_automorphism(s, phi, s.involution())) return false;
  if (!is_commutative(s))
    throw std::logic_error("involution automorphism exists but scheme is not commutative");
  return true;
}

}  // namespace hyperschemes
