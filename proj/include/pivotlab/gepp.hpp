#pragma once

#include <cmath>
#include <string>

#include "pivotlab/error.hpp"
#include "pivotlab/matrix.hpp"
#include "pivotlab/permutation.hpp"

namespace pivotlab {

/// PA = LU from partial pivoting, with pivot-movement accounting.
template <typename Scalar>
struct GeppResult {
  Permutation perm;  // σ with P = P_σ
  DenseMatrix<Scalar> lower;
  DenseMatrix<Scalar> upper;
  PivotSequence pivots;
  int pivot_count = 0;
  double growth = 1.0;
  /// A pivot column vanished, or a pivot fell below n·ε times the running
  /// max-norm of the eliminated matrices.
  bool singular = false;
};

template <typename Scalar>
struct GenpResult {
  DenseMatrix<Scalar> lower;
  DenseMatrix<Scalar> upper;
};

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw Error(Errc::InvalidInput, std::string(what) + ": matrix must be square and non-empty");
}

template <typename Scalar>
void split_lu(const DenseMatrix<Scalar>& w, DenseMatrix<Scalar>& lower, DenseMatrix<Scalar>& upper) {
  const auto n = w.rows();
  lower = DenseMatrix<Scalar>::Identity(n, n);
  lower.template triangularView<Eigen::StrictlyLower>() = w.template triangularView<Eigen::StrictlyLower>();
  upper = w.template triangularView<Eigen::Upper>();
}

// Divides the sub-column in place, one quotient per entry, so |L_ij| ≤ 1
// holds for the stored values whenever |w_ik| ≤ |w_kk|.
template <typename Scalar>
void scale_column(DenseMatrix<Scalar>& w, Eigen::Index k) {
  const Scalar pivot = w(k, k);
  for (Eigen::Index i = k + 1; i < w.rows(); ++i) w(i, k) = w(i, k) / pivot;
}

}  // namespace detail

/// Gaussian elimination without pivoting. Throws ZeroPivot when a pivot is
/// exactly zero.
template <typename Derived>
GenpResult<typename Derived::Scalar> genp_factor(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a, "genp_factor");
  if (!all_finite(a)) throw Error(Errc::InvalidInput, "genp_factor: non-finite entry");
  DenseMatrix<Scalar> w = a;
  const auto n = w.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (w(k, k) == Scalar(0))
      throw Error(Errc::ZeroPivot, "genp_factor: zero pivot at step " + std::to_string(k + 1));
    const auto m = n - k - 1;
    if (m == 0) break;
    detail::scale_column(w, k);
    w.bottomRightCorner(m, m).noalias() -= w.col(k).tail(m) * w.row(k).tail(m);
  }
  GenpResult<Scalar> out;
  detail::split_lu(w, out.lower, out.upper);
  return out;
}

/// Gaussian elimination with partial pivoting. The pivot at step k is the
/// first row attaining the largest modulus in the active column; a later row
/// displaces it only when strictly larger. A zero pivot column records
/// i_k = k with zero multipliers and marks the result singular.
template <typename Derived>
GeppResult<typename Derived::Scalar> gepp_factor(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a, "gepp_factor");
  if (!all_finite(a)) throw Error(Errc::InvalidInput, "gepp_factor: non-finite entry");

  DenseMatrix<Scalar> w = a;
  const auto n = w.rows();
  const double norm0 = max_norm(w);
  double running_max = norm0;
  const double tiny_factor = static_cast<double>(n) * kEps;

  GeppResult<Scalar> out;
  out.pivots.n = static_cast<int>(n);
  out.pivots.indices.reserve(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
  std::vector<int> slot(static_cast<std::size_t>(n));  // original row at each position
  for (Eigen::Index i = 0; i < n; ++i) slot[static_cast<std::size_t>(i)] = static_cast<int>(i) + 1;

  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    Eigen::Index p = k;
    double best = std::abs(w(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double v = std::abs(w(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    out.pivots.indices.push_back(static_cast<int>(p) + 1);
    if (best == 0.0) {
      out.singular = true;
      continue;
    }
    if (best <= tiny_factor * running_max) out.singular = true;
    if (p != k) {
      w.row(k).swap(w.row(p));
      std::swap(slot[static_cast<std::size_t>(k)], slot[static_cast<std::size_t>(p)]);
      ++out.pivot_count;
    }
    const auto m = n - k - 1;
    detail::scale_column(w, k);
    auto trailing = w.bottomRightCorner(m, m);
    trailing.noalias() -= w.col(k).tail(m) * w.row(k).tail(m);
    running_max = std::max(running_max, max_norm(trailing));
  }
  if (std::abs(w(n - 1, n - 1)) <= tiny_factor * running_max) out.singular = true;

  std::vector<int> img(static_cast<std::size_t>(n));
  for (Eigen::Index q = 0; q < n; ++q)
    img[static_cast<std::size_t>(slot[static_cast<std::size_t>(q)] - 1)] = static_cast<int>(q) + 1;
  out.perm = Permutation(std::move(img));
  out.growth = norm0 > 0.0 ? running_max / norm0 : 1.0;
  detail::split_lu(w, out.lower, out.upper);
  return out;
}

/// ρ(A) = max_k ‖A^(k)‖_max / ‖A‖_max over the partial-pivoting stages.
template <typename Derived>
double growth_factor(const Eigen::MatrixBase<Derived>& a) {
  detail::require_square(a, "growth_factor");
  if (all_finite(a) && max_norm(a) == 0.0)
    throw Error(Errc::InvalidInput, "growth_factor: zero matrix");
  return gepp_factor(a).growth;
}

/// Wilkinson's worst-growth matrix: 1 on the diagonal and in the last
/// column, -1 strictly below the diagonal.
inline RealMatrix wilkinson_matrix(int n) {
  if (n < 1) throw Error(Errc::InvalidInput, "wilkinson_matrix needs n >= 1");
  RealMatrix a = RealMatrix::Identity(n, n);
  a.template triangularView<Eigen::StrictlyLower>().setConstant(-1.0);
  a.col(n - 1).setOnes();
  return a;
}

/// True when partial pivoting on `a` and on P_q·a gives the same L and U,
/// entrywise within 4ε relative difference.
template <typename Derived>
bool gepp_row_invariance_check(const Eigen::MatrixBase<Derived>& a, const Permutation& q) {
  detail::require_square(a, "gepp_row_invariance_check");
  if (q.size() != a.rows())
    throw Error(Errc::DimensionMismatch, "row permutation degree differs from matrix order");
  const auto f1 = gepp_factor(a);
  const auto f2 = gepp_factor(q.apply_rows(a));
  auto close = [](const auto& x, const auto& y) {
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const double scale = std::max(std::abs(x(i, j)), std::abs(y(i, j)));
        if (std::abs(x(i, j) - y(i, j)) > 4.0 * kEps * scale) return false;
      }
    return true;
  };
  return close(f1.lower, f2.lower) && close(f1.upper, f2.upper);
}

}  // namespace pivotlab
