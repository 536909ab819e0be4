#include "pivotlab/stirling.hpp"

#include <cmath>

#include "pivotlab/error.hpp"
#include "pivotlab/permutation.hpp"

namespace pivotlab {

StirlingTable::StirlingTable(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw Error(Errc::InvalidInput, "stirling_table needs n_max >= 0");
  rows_.resize(static_cast<std::size_t>(n_max) + 1);
  rows_[0] = {BigInt(1)};
  for (int n = 1; n <= n_max; ++n) {
    const auto& prev = rows_[static_cast<std::size_t>(n - 1)];
    auto& cur = rows_[static_cast<std::size_t>(n)];
    cur.assign(static_cast<std::size_t>(n) + 1, BigInt(0));
    for (int k = 1; k <= n; ++k) {
      // |s(n,k)| = |s(n-1,k-1)| + (n-1)|s(n-1,k)|
      BigInt v = prev[static_cast<std::size_t>(k - 1)];
      if (k <= n - 1) v += BigInt(n - 1) * prev[static_cast<std::size_t>(k)];
      cur[static_cast<std::size_t>(k)] = std::move(v);
    }
  }
}

const BigInt& StirlingTable::operator()(int n, int k) const {
  static const BigInt zero(0);
  if (n < 0 || n > n_max_ || k < 0 || k > n) return zero;
  return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

const std::vector<BigInt>& StirlingTable::row(int n) const {
  if (n < 0 || n > n_max_) throw Error(Errc::InvalidInput, "stirling row outside table");
  return rows_[static_cast<std::size_t>(n)];
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int j = 2; j <= n; ++j) f *= j;
  return f;
}

double harmonic(int n, int m) {
  if (n < 1 || m < 1) throw Error(Errc::InvalidInput, "harmonic needs n >= 1 and m >= 1");
  double sum = 0.0;
  for (int j = n; j >= 1; --j) sum += std::pow(static_cast<double>(j), -m);
  return sum;
}

double exact_ratio_to_double(const BigInt& num, const BigInt& den) {
  if (den <= 0) throw Error(Errc::InvalidInput, "ratio denominator must be positive");
  if (num < 0) return -exact_ratio_to_double(-num, den);
  if (num == 0) return 0.0;
  using boost::multiprecision::msb;
  // Scale so the integer quotient carries about 62 significant bits.
  const long shift = 62 - (static_cast<long>(msb(num)) - static_cast<long>(msb(den)));
  BigInt q, r;
  if (shift >= 0) {
    divide_qr(BigInt(num << static_cast<unsigned>(shift)), den, q, r);
  } else {
    divide_qr(num, BigInt(den << static_cast<unsigned>(-shift)), q, r);
  }
  const bool sticky = r != 0;
  const long bits = static_cast<long>(msb(q)) + 1;
  const long drop = bits - 53;
  BigInt mant = q >> static_cast<unsigned>(drop);
  const BigInt rest = q - (mant << static_cast<unsigned>(drop));
  const BigInt half = BigInt(1) << static_cast<unsigned>(drop - 1);
  if (rest > half || (rest == half && (sticky || (mant & 1) != 0))) mant += 1;
  return std::ldexp(mant.convert_to<double>(), static_cast<int>(drop - shift));
}

Stirling1Distribution stirling1_distribution(int n) {
  if (n < 1) throw Error(Errc::InvalidInput, "stirling1_distribution needs n >= 1");
  const StirlingTable table(n);
  const BigInt nf = factorial(n);
  Stirling1Distribution d;
  d.n = n;
  d.pmf.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) d.pmf.push_back(exact_ratio_to_double(table(n, k), nf));
  d.mean = harmonic(n, 1);
  d.variance = harmonic(n, 1) - harmonic(n, 2);
  return d;
}

double DiscreteLaw::fourth_central_moment() const {
  double m4 = 0.0;
  for (std::size_t v = 0; v < pmf.size(); ++v) {
    const double d = static_cast<double>(v) - mean;
    m4 += pmf[v] * d * d * d * d;
  }
  return m4;
}

DiscreteLaw pivot_law(int n) {
  const auto ups = stirling1_distribution(n);
  DiscreteLaw law;
  law.pmf.assign(static_cast<std::size_t>(n), 0.0);
  // m movements ⇔ Υ_n = n - m
  for (int m = 0; m < n; ++m) law.pmf[static_cast<std::size_t>(m)] = ups.pmf[static_cast<std::size_t>(n - m - 1)];
  law.mean = static_cast<double>(n) - ups.mean;
  law.stddev = std::sqrt(ups.variance);
  return law;
}

DiscreteLaw butterfly_pivot_law(int N) {
  if (log2_exact(N) < 1) throw Error(Errc::InvalidInput, "butterfly_pivot_law needs N = 2^n, n >= 1");
  const double Nd = static_cast<double>(N);
  DiscreteLaw law;
  law.pmf.assign(static_cast<std::size_t>(N), 0.0);
  law.pmf[0] = 1.0 / Nd;
  law.pmf[static_cast<std::size_t>(N / 2)] += 1.0 - 1.0 / Nd;
  law.mean = (Nd / 2.0) * (1.0 - 1.0 / Nd);
  law.stddev = (Nd / 2.0) * std::sqrt((1.0 - 1.0 / Nd) / Nd);
  return law;
}

}  // namespace pivotlab
