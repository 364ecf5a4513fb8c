#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace hyperschemes {

using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

enum class ErrorCode {
  ParseError,
  InvalidInput,
  EmptyClass,
  NoIdentityClass,
  NoInvolution,
  InconsistentIntersection,
  NotASubgroup,
  InvalidCayleyTable,
  NotDistanceRegular,
  NotBijective,
  NotCommutative,
  DegenerateSplitFailure,
  DualNotPositive,
  SupportMismatch,
  NotStochastic,
  DetailedBalanceViolation,
  ClosureResidual,
  WindowNotClosed,
  NonSquare,
  NotACharacter,
  BallTooLarge,
  ParameterOutOfRange,
  QuadratureNotConverged,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::EmptyClass: return "EmptyClass";
    case ErrorCode::NoIdentityClass: return "NoIdentityClass";
    case ErrorCode::NoInvolution: return "NoInvolution";
    case ErrorCode::InconsistentIntersection: return "InconsistentIntersection";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::InvalidCayleyTable: return "InvalidCayleyTable";
    case ErrorCode::NotDistanceRegular: return "NotDistanceRegular";
    case ErrorCode::NotBijective: return "NotBijective";
    case ErrorCode::NotCommutative: return "NotCommutative";
    case ErrorCode::DegenerateSplitFailure: return "DegenerateSplitFailure";
    case ErrorCode::DualNotPositive: return "DualNotPositive";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::NotStochastic: return "NotStochastic";
    case ErrorCode::DetailedBalanceViolation: return "DetailedBalanceViolation";
    case ErrorCode::ClosureResidual: return "ClosureResidual";
    case ErrorCode::WindowNotClosed: return "WindowNotClosed";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NotACharacter: return "NotACharacter";
    case ErrorCode::BallTooLarge: return "BallTooLarge";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this exception. `code()`
/// is machine readable, `what()` carries the witness in plain text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Dense cubic tensor t(i,j,k) over n labels, row-major in (i,j,k).
template <class T>
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(std::size_t n, const T& fill = T{}) : n_(n), data_(n * n * n, fill) {}

  std::size_t extent() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * n_ + j) * n_ + k]; }
  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * n_ + j) * n_ + k];
  }

  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

/// Row-major dense matrix for exact scalar types (Eigen is used for floats).
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("DenseMatrix: shape mismatch");
    DenseMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& v = a(r, k);
        if (v == T(0)) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += v * b(k, c);
      }
    return out;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Comparison policy: exact for rationals and integers, absolute tolerance
/// for binary floats.
template <class T>
struct ScalarTraits {
  static constexpr bool exact = !std::is_floating_point_v<T>;
  static bool near(const T& a, const T& b, double tol) {
    if constexpr (exact) {
      (void)tol;
      return a == b;
    } else {
      return std::abs(a - b) <= tol;
    }
  }
  static bool positive(const T& a, double tol) {
    if constexpr (exact) {
      (void)tol;
      return a > 0;
    } else {
      return a > tol;
    }
  }
  static bool negative(const T& a, double tol) {
    if constexpr (exact) {
      (void)tol;
      return a < 0;
    } else {
      return a < -tol;
    }
  }
  static double to_double(const T& a) {
    if constexpr (std::is_same_v<T, Rational>) {
      return a.template convert_to<double>();
    } else {
      return static_cast<double>(a);
    }
  }
};

inline std::string to_fraction_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r) << '/' << denominator(r);
  return os.str();
}

inline Rational parse_fraction(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
    boost::multiprecision::cpp_int num(s.substr(0, slash));
    boost::multiprecision::cpp_int den(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    throw Error(ErrorCode::ParseError, "bad fraction '" + s + "'");
  }
}

/// printf("%.17g") for report emitters.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_complex(Complex z) {
  std::string out = format_double(z.real());
  double im = z.imag();
  if (std::signbit(im)) {
    out += '-';
    im = -im;
  } else {
    out += '+';
  }
  return out + format_double(im) + 'i';
}

}  // namespace hyperschemes
