#pragma once

// Feasibility of { w >= 0 : A w = b } by a dense phase-one simplex.
//
// The phase-one problem min 1ᵀs s.t. A w + s = b (rows flipped so b >= 0)
// always has the artificial basis. A zero optimum gives a feasible basis; the
// basic solution is then re-solved against the original columns to remove
// tableau drift. A positive optimum gives a Farkas certificate y with
// Aᵀy >= 0 and bᵀy < 0, read off the artificial reduced costs.

#include "hyperschemes/linalg.hpp"

namespace hyperschemes {

struct LpOptions {
  double slack_tol = 1e-8;     // per-constraint residual accepted
  double pivot_tol = 1e-11;
  int max_iterations = 100000;
};

struct LpResult {
  bool feasible = false;
  std::vector<double> weights;      // w, when feasible
  double max_residual = 0.0;        // max |A w - b|
  std::vector<double> certificate;  // Farkas y, when infeasible
  double phase_one_objective = 0.0;
  int iterations = 0;
};

inline LpResult lp_feasibility(const MatrixXd& a, const VectorXd& b, const LpOptions& opt = {}) {
  const Eigen::Index m = a.rows(), n = a.cols();
  if (b.size() != m) throw Error(ErrorCode::InvalidInput, "right-hand side has wrong length");
  LpResult res;

  // tableau [A' | I | b'] with objective row of phase one
  VectorXd sign = VectorXd::Ones(m);
  for (Eigen::Index i = 0; i < m; ++i)
    if (b(i) < 0) sign(i) = -1.0;
  const Eigen::Index cols = n + m;
  MatrixXd t = MatrixXd::Zero(m + 1, cols + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    t.row(i).head(n) = sign(i) * a.row(i);
    t(i, n + i) = 1.0;
    t(i, cols) = sign(i) * b(i);
  }
  // reduced costs of phase one: c_j - 1ᵀ column_j
  for (Eigen::Index j = 0; j < n; ++j) t(m, j) = -t.col(j).head(m).sum();
  t(m, cols) = -t.col(cols).head(m).sum();
  std::vector<Eigen::Index> basis(m);
  for (Eigen::Index i = 0; i < m; ++i) basis[i] = n + i;

  int degenerate_run = 0;
  for (; res.iterations < opt.max_iterations; ++res.iterations) {
    // entering column: most negative reduced cost, Bland's rule after a long degenerate run
    Eigen::Index enter = -1;
    double best = -1e-12;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (t(m, j) < best) {
        enter = j;
        best = t(m, j);
        if (degenerate_run > 50) break;
      }
    }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    double ratio = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, enter) <= opt.pivot_tol) continue;
      const double r = t(i, cols) / t(i, enter);
      if (leave < 0 || r < ratio - 1e-15 || (std::abs(r - ratio) <= 1e-15 && basis[i] < basis[leave])) {
        leave = i;
        ratio = r;
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in phase one; numerically stuck
    degenerate_run = ratio <= 1e-15 ? degenerate_run + 1 : 0;
    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i)
      if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
    basis[leave] = enter;
  }
  res.phase_one_objective = -t(m, cols);

  // re-solve the basic system against the original data
  MatrixXd bmat(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    bmat.col(i) = basis[i] < n ? VectorXd(a.col(basis[i])) : VectorXd(VectorXd::Unit(m, basis[i] - n).cwiseProduct(sign));
  const VectorXd xb = bmat.fullPivLu().solve(b);
  VectorXd w = VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i)
    if (basis[i] < n) w(basis[i]) = std::max(0.0, xb(i));
  res.max_residual = m > 0 ? (a * w - b).cwiseAbs().maxCoeff() : 0.0;
  res.feasible = res.max_residual <= opt.slack_tol;
  if (res.feasible) {
    res.weights.assign(w.data(), w.data() + n);
  } else {
    // duals u_i = 1 - reduced cost of artificial i (flipped system); y = -D u
    res.certificate.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) res.certificate[i] = -sign(i) * (1.0 - t(m, n + i));
  }
  return res;
}

/// max over columns of -(Aᵀy)_j and the value bᵀy; a valid certificate has
/// the first <= tol and the second < 0.
struct CertificateCheck {
  double worst_column = 0.0;
  double objective = 0.0;
};

inline CertificateCheck check_certificate(const MatrixXd& a, const VectorXd& b, const std::vector<double>& y) {
  const VectorXd yv = Eigen::Map<const VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  CertificateCheck c;
  const VectorXd aty = a.transpose() * yv;
  c.worst_column = aty.size() ? -aty.minCoeff() : 0.0;
  c.objective = b.dot(yv);
  return c;
}

}  // namespace hyperschemes
