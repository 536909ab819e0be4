#include "pivotlab/esd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "pivotlab/error.hpp"
#include "pivotlab/gepp.hpp"

namespace pivotlab {

namespace {

using Complex = std::complex<double>;

template <typename Scalar>
void swap_similar(DenseMatrix<Scalar>& a, Eigen::Index i, Eigen::Index j) {
  if (i == j) return;
  a.row(i).swap(a.row(j));
  a.col(i).swap(a.col(j));
}

// Permutes isolated eigenvalues to the ends, leaving the active block
// a[lo..hi] (inclusive), then balances that block by powers of two.
template <typename Scalar>
void balance(DenseMatrix<Scalar>& a, Eigen::Index& lo, Eigen::Index& hi) {
  const auto n = a.rows();
  lo = 0;
  hi = n - 1;

  bool found = true;
  while (found && hi > lo) {
    found = false;
    for (Eigen::Index j = hi; j >= lo; --j) {
      bool zero_row = true;
      for (Eigen::Index c = lo; c <= hi && zero_row; ++c)
        if (c != j && a(j, c) != Scalar(0)) zero_row = false;
      if (zero_row) {
        swap_similar(a, j, hi);
        --hi;
        found = true;
        break;
      }
    }
  }
  found = true;
  while (found && hi > lo) {
    found = false;
    for (Eigen::Index j = lo; j <= hi; ++j) {
      bool zero_col = true;
      for (Eigen::Index r = lo; r <= hi && zero_col; ++r)
        if (r != j && a(r, j) != Scalar(0)) zero_col = false;
      if (zero_col) {
        swap_similar(a, j, lo);
        ++lo;
        found = true;
        break;
      }
    }
  }
  if (hi <= lo) return;

  constexpr double radix = 2.0;
  bool changed = true;
  for (int sweep = 0; changed && sweep < 100; ++sweep) {
    changed = false;
    for (Eigen::Index i = lo; i <= hi; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = lo; j <= hi; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c >= g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        a.col(i) *= f;
        a.row(i) /= f;
        changed = true;
      }
    }
  }
}

template <typename Scalar>
Spectrum spectrum_of(const DenseMatrix<Scalar>& input) {
  DenseMatrix<Scalar> a = input;
  Eigen::Index lo = 0, hi = 0;
  balance(a, lo, hi);
  Spectrum out;
  out.reserve(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < lo; ++i) out.emplace_back(a(i, i));
  const auto m = hi - lo + 1;
  if (m == 1) {
    out.emplace_back(a(lo, lo));
  } else if (m > 1) {
    const DenseMatrix<Scalar> block = a.block(lo, lo, m, m);
    if constexpr (is_complex_v<Scalar>) {
      Eigen::ComplexEigenSolver<ComplexMatrix> es(block, false);
      if (es.info() != Eigen::Success) throw Error(Errc::NoConvergence, "complex QR iteration did not converge");
      for (Eigen::Index i = 0; i < m; ++i) out.push_back(es.eigenvalues()(i));
    } else {
      Eigen::EigenSolver<RealMatrix> es(block, false);
      if (es.info() != Eigen::Success) throw Error(Errc::NoConvergence, "real QR iteration did not converge");
      for (Eigen::Index i = 0; i < m; ++i) out.push_back(es.eigenvalues()(i));
    }
  }
  for (Eigen::Index i = hi + 1; i < a.rows(); ++i) out.emplace_back(a(i, i));
  return out;
}

double vector_norm(const Eigen::VectorXcd& v) { return v.norm(); }

// Unit-norm approximate eigenvector for λ by inverse iteration on A - (λ + δ)I,
// rescaling inside the triangular solves so nothing overflows.
Eigen::VectorXcd inverse_iteration(const ComplexMatrix& a, Complex lambda, double delta, RandomStream& rng) {
  const auto n = a.rows();
  ComplexMatrix m = a;
  m.diagonal().array() -= lambda + delta;
  auto f = gepp_factor(m);
  for (Eigen::Index i = 0; i < n; ++i)
    if (f.upper(i, i) == Complex(0)) f.upper(i, i) = delta;

  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
  v /= vector_norm(v);
  for (int it = 0; it < 3; ++it) {
    Eigen::VectorXcd y = f.perm.apply_rows(v);
    for (Eigen::Index i = 0; i < n; ++i) {
      Complex s = y(i);
      for (Eigen::Index j = 0; j < i; ++j) s -= f.lower(i, j) * y(j);
      y(i) = s;
      if (std::abs(s) > 1e100) y.head(i + 1) *= 1e-100;
    }
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      Complex s = y(i);
      for (Eigen::Index j = i + 1; j < n; ++j) s -= f.upper(i, j) * y(j);
      y(i) = s / f.upper(i, i);
      if (std::abs(y(i)) > 1e100) y *= 1e-100;
    }
    const double nv = vector_norm(y);
    if (!(nv > 0.0) || !std::isfinite(nv)) break;
    v = y / nv;
  }
  return v;
}

ComplexMatrix to_complex(const AnyMatrix& a) {
  if (const auto* c = std::get_if<ComplexMatrix>(&a)) return *c;
  return std::get<RealMatrix>(a).cast<Complex>();
}

void require_square(const AnyMatrix& a) {
  if (rows_of(a) != cols_of(a) || rows_of(a) == 0)
    throw Error(Errc::InvalidInput, "eigenvalues: matrix must be square and non-empty");
  const bool finite = std::visit([](const auto& m) { return all_finite(m); }, a);
  if (!finite) throw Error(Errc::InvalidInput, "eigenvalues: non-finite entry");
}

}  // namespace

double eigenvalue_residual(const AnyMatrix& a, const Spectrum& spectrum, int checks) {
  require_square(a);
  const ComplexMatrix ac = to_complex(a);
  const auto n = ac.rows();
  if (static_cast<Eigen::Index>(spectrum.size()) != n)
    throw Error(Errc::DimensionMismatch, "spectrum size differs from matrix order");
  const double fro = ac.norm();
  if (fro == 0.0) return 0.0;

  RandomStream rng(mix64(static_cast<std::uint64_t>(n) ^ 0xE16E5EEDULL));
  std::vector<std::size_t> idx(spectrum.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const auto picks = std::min<std::size_t>(idx.size(), static_cast<std::size_t>(std::max(checks, 0)));
  for (std::size_t k = 0; k < picks; ++k) {
    const auto j = k + static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(idx.size() - k) - 1));
    std::swap(idx[k], idx[j]);
  }

  const double delta = static_cast<double>(n) * kEps * fro;
  double worst = 0.0;
  for (std::size_t k = 0; k < picks; ++k) {
    const Complex lambda = spectrum[idx[k]];
    const Eigen::VectorXcd v = inverse_iteration(ac, lambda, delta, rng);
    Eigen::VectorXcd r = ac * v - lambda * v;
    worst = std::max(worst, r.norm() / fro);
  }
  return worst;
}

Spectrum eigenvalues(const AnyMatrix& a) {
  require_square(a);
  Spectrum s = std::visit([](const auto& m) { return spectrum_of(m); }, a);
  const double n = static_cast<double>(rows_of(a));
  const double worst = eigenvalue_residual(a, s, 5);
  if (!(worst <= 1e3 * n * kEps))
    throw Error(Errc::NoConvergence, "eigenvalue residual check failed (relative residual " +
                                         std::to_string(worst) + ")");
  return s;
}

SpectralSample make_spectral_sample(const AnyMatrix& a, double alpha, const XiSpec& xi) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw Error(Errc::InvalidParameter, "alpha must lie in [0, 1)");
  SpectralSample s;
  s.n = static_cast<int>(rows_of(a));
  s.alpha = alpha;
  s.xi = xi;
  s.scale = std::sqrt(static_cast<double>(s.n) * xi.variance() * (1.0 - alpha));
  s.eigenvalues = eigenvalues(a);
  for (auto& l : s.eigenvalues) l /= s.scale;
  return s;
}

SpectralSample scaled_esd(const PlSpec& variant, const XiSpec& xi, int n, RandomStream& rng) {
  const double alpha = variant.variant == PlVariant::Alpha ? variant.alpha : 0.5;
  return make_spectral_sample(sample_pl(variant, xi, n, rng), alpha, xi);
}

double radial_cdf(const SpectralSample& s, double r) {
  if (s.eigenvalues.empty()) throw Error(Errc::EmptySample, "empty spectral sample");
  std::size_t k = 0;
  for (const auto& l : s.eigenvalues)
    if (std::abs(l) <= r) ++k;
  return static_cast<double>(k) / static_cast<double>(s.eigenvalues.size());
}

RadialProfile radial_profile(const SpectralSample& s, int grid_points) {
  if (s.eigenvalues.empty()) throw Error(Errc::EmptySample, "empty spectral sample");
  if (grid_points < 1) throw Error(Errc::InvalidInput, "radial_profile needs at least one grid point");
  std::vector<double> mod;
  mod.reserve(s.eigenvalues.size());
  for (const auto& l : s.eigenvalues) mod.push_back(std::abs(l));
  std::sort(mod.begin(), mod.end());
  const double rmax = mod.back();

  RadialProfile p;
  for (int i = 0; i < grid_points; ++i) {
    const double r = grid_points == 1 ? rmax : rmax * i / (grid_points - 1);
    const double r_eff = i == grid_points - 1 ? rmax : r;
    p.radii.push_back(r_eff);
    const auto below = std::upper_bound(mod.begin(), mod.end(), r_eff) - mod.begin();
    p.cdf.push_back(static_cast<double>(below) / static_cast<double>(mod.size()));
  }
  return p;
}

RankNullity rank_nullity(const AnyMatrix& a) {
  require_square(a);
  const double n = static_cast<double>(rows_of(a));
  RankNullity out;
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        Eigen::ColPivHouseholderQR<M> qr(m);
        qr.setThreshold(n * kEps);
        out.numerical_rank = static_cast<int>(qr.rank());
      },
      a);
  const double cutoff = n * kEps * std::visit([](const auto& m) { return max_norm(m); }, a);
  for (const auto& l : eigenvalues(a))
    if (std::abs(l) < cutoff) ++out.zero_eig_multiplicity;
  return out;
}

RankNullity rank_nullity_probe(double alpha, const XiSpec& xi, int n, RandomStream& rng) {
  return rank_nullity(sample_pl({PlVariant::Alpha, alpha}, xi, n, rng));
}

}  // namespace pivotlab
