#pragma once

// Finite groups given by Cayley tables, the quotient scheme on G/H and the
// double coset (Hecke) convolution on G//H.

#include "hyperschemes/scheme.hpp"

#include <algorithm>
#include <numeric>

namespace hyperschemes {

class FiniteGroup {
 public:
  /// table[a][b] is the index of a·b. Validated: closure, identity, inverses,
  /// associativity.
  FiniteGroup(std::vector<std::string> elements, std::vector<std::vector<int>> table)
      : labels_(std::move(elements)), table_(std::move(table)) {
    const int n = static_cast<int>(labels_.size());
    if (n == 0) throw Error(ErrorCode::InvalidCayleyTable, "empty group");
    if (static_cast<int>(table_.size()) != n)
      throw Error(ErrorCode::InvalidCayleyTable, "table has wrong number of rows");
    for (const auto& row : table_) {
      if (static_cast<int>(row.size()) != n)
        throw Error(ErrorCode::InvalidCayleyTable, "table row has wrong length");
      for (int v : row)
        if (v < 0 || v >= n) throw Error(ErrorCode::InvalidCayleyTable, "product outside the group");
    }
    identity_ = -1;
    for (int e = 0; e < n && identity_ < 0; ++e) {
      bool ok = true;
      for (int a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
      if (ok) identity_ = e;
    }
    if (identity_ < 0) throw Error(ErrorCode::InvalidCayleyTable, "no identity element");
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
    for (int a = 0; a < n; ++a)
      if (inverse_[a] < 0) throw Error(ErrorCode::InvalidCayleyTable, "element " + labels_[a] + " has no inverse");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw Error(ErrorCode::InvalidCayleyTable,
                        "not associative at (" + labels_[a] + "," + labels_[b] + "," + labels_[c] + ")");
  }

  int order() const noexcept { return static_cast<int>(labels_.size()); }
  int identity() const noexcept { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::vector<int>>& table() const noexcept { return table_; }

  int index_of(const std::string& label) const {
    for (int i = 0; i < order(); ++i)
      if (labels_[i] == label) return i;
    throw Error(ErrorCode::InvalidInput, "unknown group element '" + label + "'");
  }

  /// Sorted element indices; throws NotASubgroup unless H is closed and
  /// contains the identity (enough for finite groups).
  std::vector<int> check_subgroup(std::vector<int> h) const {
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
    if (h.empty()) throw Error(ErrorCode::NotASubgroup, "empty subset");
    std::vector<char> in(order(), 0);
    for (int x : h) {
      if (x < 0 || x >= order()) throw Error(ErrorCode::NotASubgroup, "element index out of range");
      in[x] = 1;
    }
    if (!in[identity_]) throw Error(ErrorCode::NotASubgroup, "subset misses the identity");
    for (int a : h)
      for (int b : h)
        if (!in[mul(a, b)])
          throw Error(ErrorCode::NotASubgroup,
                      "not closed: " + labels_[a] + "·" + labels_[b] + " = " + labels_[mul(a, b)]);
    return h;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> table_;
  int identity_ = 0;
  std::vector<int> inverse_;
};

/// Z_n with labels "0".."n-1".
inline FiniteGroup cyclic_group(int n) {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    labels.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return FiniteGroup(std::move(labels), std::move(t));
}

/// S_n on {0..n-1} in lexicographic order of one-line notation; (p·q)(i) = p(q(i)).
inline FiniteGroup symmetric_group(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> labels;
  for (const auto& q : perms) {
    std::string s = "[";
    for (int i = 0; i < n; ++i) s += std::to_string(q[i]) + (i + 1 < n ? "," : "]");
    labels.push_back(s);
  }
  const int m = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = static_cast<int>(std::lower_bound(perms.begin(), perms.end(), c) - perms.begin());
    }
  return FiniteGroup(std::move(labels), std::move(t));
}

/// Cosets and double cosets of H, each named by its smallest element index.
class CosetStructure {
 public:
  CosetStructure(const FiniteGroup& g, std::vector<int> subgroup)
      : group_(&g), h_(g.check_subgroup(std::move(subgroup))) {
    const int n = g.order();
    left_of_.assign(n, -1);
    double_of_.assign(n, -1);
    for (int x = 0; x < n; ++x) {
      if (left_of_[x] < 0) {
        const int id = static_cast<int>(left_rep_.size());
        left_rep_.push_back(x);
        for (int h : h_) left_of_[g.mul(x, h)] = id;
      }
      if (double_of_[x] < 0) {
        const int id = static_cast<int>(double_rep_.size());
        double_rep_.push_back(x);
        for (int h1 : h_)
          for (int h2 : h_) double_of_[g.mul(g.mul(h1, x), h2)] = id;
      }
    }
  }

  const FiniteGroup& group() const noexcept { return *group_; }
  const std::vector<int>& subgroup() const noexcept { return h_; }
  int num_cosets() const noexcept { return static_cast<int>(left_rep_.size()); }
  int num_double_cosets() const noexcept { return static_cast<int>(double_rep_.size()); }
  int coset_of(int g) const { return left_of_[g]; }
  int double_coset_of(int g) const { return double_of_[g]; }
  int coset_rep(int c) const { return left_rep_[c]; }
  int double_coset_rep(int d) const { return double_rep_[d]; }

  /// Cosets xH contained in the double coset d, by representative.
  std::vector<int> cosets_in(int d) const {
    std::vector<int> reps;
    for (int c = 0; c < num_cosets(); ++c)
      if (double_of_[left_rep_[c]] == d) reps.push_back(left_rep_[c]);
    return reps;
  }

  std::string coset_label(int c) const { return group_->labels()[left_rep_[c]] + "H"; }
  std::string double_coset_label(int d) const { return "H" + group_->labels()[double_rep_[d]] + "H"; }

 private:
  const FiniteGroup* group_;
  std::vector<int> h_;
  std::vector<int> left_of_, double_of_;
  std::vector<int> left_rep_, double_rep_;
};

/// X = G/H, D = G//H, (xH, yH) ∈ R_{Hx⁻¹yH}.
inline Scheme scheme_from_group_quotient(const FiniteGroup& g, std::vector<int> subgroup) {
  const CosetStructure cs(g, std::move(subgroup));
  std::vector<std::string> points, classes;
  for (int c = 0; c < cs.num_cosets(); ++c) points.push_back(cs.coset_label(c));
  for (int d = 0; d < cs.num_double_cosets(); ++d) classes.push_back(cs.double_coset_label(d));
  const int n = cs.num_cosets();
  std::vector<int> rel(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      rel[x * n + y] = cs.double_coset_of(g.mul(g.inv(cs.coset_rep(x)), cs.coset_rep(y)));
  return build_scheme(RelationPartition(std::move(points), std::move(classes), std::move(rel)));
}

/// δ_{HaH} * δ_{HbH} from coset products, indexed like the quotient scheme's classes.
struct HeckeMeasure {
  std::vector<std::string> classes;
  std::vector<Rational> weights;
};

inline HeckeMeasure hecke_convolution(const FiniteGroup& g, std::vector<int> subgroup, int a, int b) {
  const CosetStructure cs(g, std::move(subgroup));
  const auto as = cs.cosets_in(cs.double_coset_of(a));
  const auto bs = cs.cosets_in(cs.double_coset_of(b));
  const int nd = cs.num_double_cosets();

  // μ(HcH) = |{(i,j) : a_i b_j H = cH}| for the representative c of HcH
  std::vector<std::int64_t> mu(nd, 0);
  for (int ai : as)
    for (int bj : bs) {
      const int prod = g.mul(ai, bj);
      const int d = cs.double_coset_of(prod);
      if (cs.coset_of(prod) == cs.coset_of(cs.double_coset_rep(d))) ++mu[d];
    }

  HeckeMeasure out;
  out.weights.assign(nd, Rational(0));
  const std::int64_t denom = static_cast<std::int64_t>(as.size() * bs.size());
  for (int d = 0; d < nd; ++d) {
    out.classes.push_back(cs.double_coset_label(d));
    const auto ind = static_cast<std::int64_t>(cs.cosets_in(d).size());
    out.weights[d] = Rational(mu[d] * ind, denom);
  }
  return out;
}

}  // namespace hyperschemes
