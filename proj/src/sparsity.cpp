#include <cmath>

#include "pivotlab/ensembles.hpp"
#include "pivotlab/error.hpp"
#include "pivotlab/permutation.hpp"

namespace pivotlab {

namespace {

template <typename Scalar>
DenseMatrix<Scalar> draw_pl(const Permutation& p, const XiSpec& xi, int n, int cutoff, bool unit_diagonal,
                            RandomStream& rng) {
  DenseMatrix<Scalar> l = DenseMatrix<Scalar>::Zero(n, n);
  // Entry (i, j), 1-based, is live when i + cutoff > j.
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= n; ++i) {
      if (i + cutoff <= j) continue;
      const std::complex<double> v = xi.draw(rng);
      if constexpr (is_complex_v<Scalar>) {
        l(i - 1, j - 1) = v;
      } else {
        l(i - 1, j - 1) = v.real();
      }
    }
  if (unit_diagonal) l.diagonal().setOnes();
  return p.apply_rows(l);
}

}  // namespace

double density_ratio(int n, double k) {
  if (n < 1) throw Error(Errc::DomainError, "density_ratio needs n >= 1");
  const double nd = static_cast<double>(n);
  if (!(std::abs(k) <= nd)) throw Error(Errc::DomainError, "density_ratio needs |k| <= n");
  const double n2 = 2.0 * nd * nd;
  if (k < 0.0) return (nd + k) * (nd + k + 1.0) / n2;
  if (k == 0.0) return 0.5 * (1.0 - 1.0 / nd);
  return 1.0 - (nd - k) * (nd - k + 1.0) / n2;
}

double k_alpha(int n, double alpha) {
  if (n < 1) throw Error(Errc::DomainError, "k_alpha needs n >= 1");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw Error(Errc::DomainError, "k_alpha needs 0 <= alpha < 1");
  const double nd = static_cast<double>(n);
  if (alpha > 0.5) return -nd + 0.5 * (-1.0 + std::sqrt(1.0 + 8.0 * nd * nd * (1.0 - alpha)));
  if (alpha == 0.5) return 0.0;
  return nd + 0.5 * (1.0 - std::sqrt(1.0 + 8.0 * nd * nd * alpha));
}

AnyMatrix sample_pl(const PlSpec& variant, const XiSpec& xi, int n, RandomStream& rng) {
  if (n < 2) throw Error(Errc::InvalidParameter, "PL ensembles need n >= 2");
  int cutoff = 0;
  bool unit = true;
  if (variant.variant == PlVariant::Alpha) {
    if (!(variant.alpha >= 0.0 && variant.alpha < 1.0))
      throw Error(Errc::InvalidParameter, "alpha must lie in [0, 1)");
    cutoff = static_cast<int>(std::floor(k_alpha(n, variant.alpha)));
    unit = false;
  }
  const Permutation p = variant.variant == PlVariant::Max ? sample_uniform_ncycle(rng, n) : sample_uniform(rng, n);
  if (xi.is_complex()) return draw_pl<std::complex<double>>(p, xi, n, cutoff, unit, rng);
  return draw_pl<double>(p, xi, n, cutoff, unit, rng);
}

}  // namespace pivotlab
