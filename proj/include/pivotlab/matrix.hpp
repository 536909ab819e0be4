#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string_view>
#include <type_traits>
#include <variant>

#include <Eigen/Dense>

namespace pivotlab {

/// Dense column-major matrix over a real or complex double field.
template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<std::complex<double>>;

/// A matrix whose field is only known at run time (file input, ensemble draws).
using AnyMatrix = std::variant<RealMatrix, ComplexMatrix>;

/// Unit roundoff used for every tolerance in the library, 2^-52.
inline constexpr double kEps = 0x1p-52;

template <typename Scalar>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};
template <typename Scalar>
inline constexpr bool is_complex_v = is_complex<Scalar>::value;

template <typename Derived>
double max_norm(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(std::abs(a(i, j)))) return false;
  return true;
}

inline bool is_complex_matrix(const AnyMatrix& m) {
  return std::holds_alternative<ComplexMatrix>(m);
}

inline Eigen::Index rows_of(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return x.rows(); }, m);
}

inline Eigen::Index cols_of(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return x.cols(); }, m);
}

inline std::string_view field_name(const AnyMatrix& m) {
  return is_complex_matrix(m) ? "complex" : "real";
}

/// Kronecker product a ⊗ b.
template <typename Scalar>
DenseMatrix<Scalar> kron(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
  DenseMatrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace pivotlab
