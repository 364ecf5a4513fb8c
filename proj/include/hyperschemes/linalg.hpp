#pragma once

#include "hyperschemes/core.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace hyperschemes {

using MatrixXd = Eigen::MatrixXd;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXd = Eigen::VectorXd;
using VectorXcd = Eigen::VectorXcd;

/// Result of a positive-semidefiniteness test on the Hermitian part of a
/// square matrix. `hermitian_residual` is max |A - A^*|.
struct PsdCertificate {
  bool positive = false;
  double min_eigenvalue = 0.0;
  double hermitian_residual = 0.0;
};

template <class Derived>
PsdCertificate psd_test(const Eigen::MatrixBase<Derived>& a, double tol) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::NonSquare, "matrix is not square");
  PsdCertificate c;
  if (a.rows() == 0) {
    c.positive = true;
    return c;
  }
  using Scalar = typename Derived::Scalar;
  using Plain = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Plain m = a;
  const Plain adj = m.adjoint();
  c.hermitian_residual = (m - adj).cwiseAbs().maxCoeff();
  const Plain herm = (m + adj) / 2.0;
  Eigen::SelfAdjointEigenSolver<Plain> es(herm, Eigen::EigenvaluesOnly);
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  c.positive = c.hermitian_residual <= tol && c.min_eigenvalue >= -tol;
  return c;
}

/// Seeded uniform doubles. The mapping from engine output to [lo, hi) is
/// spelled out so results do not depend on the standard library's
/// distribution implementation.
class SeededUniform {
 public:
  explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}

  double operator()(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

}  // namespace hyperschemes
