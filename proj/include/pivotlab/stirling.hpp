#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pivotlab {

using BigInt = boost::multiprecision::cpp_int;

/// Exact unsigned Stirling numbers of the first kind |s(n,k)|, 0 ≤ k ≤ n ≤ n_max.
class StirlingTable {
 public:
  explicit StirlingTable(int n_max);

  int n_max() const { return n_max_; }
  /// |s(n,k)|; zero outside 0 ≤ k ≤ n ≤ n_max except |s(0,0)| = 1.
  const BigInt& operator()(int n, int k) const;
  /// Row n as k = 0..n.
  const std::vector<BigInt>& row(int n) const;

 private:
  int n_max_;
  std::vector<std::vector<BigInt>> rows_;
};

/// Convenience for stirling_table(n_max) in the functional style.
inline StirlingTable stirling_table(int n_max) { return StirlingTable(n_max); }

BigInt factorial(int n);

/// H_n^(m) = Σ_{j=1}^n j^-m, summed from the smallest term up.
double harmonic(int n, int m = 1);

struct Stirling1Distribution {
  int n = 0;
  std::vector<double> pmf;  // pmf[k-1] = P(Υ_n = k)
  double mean = 0.0;        // H_n
  double variance = 0.0;    // H_n - H_n^(2)
};

Stirling1Distribution stirling1_distribution(int n);

/// A law on {0..n-1} together with its closed-form moments.
struct DiscreteLaw {
  std::vector<double> pmf;
  double mean = 0.0;
  double stddev = 0.0;

  /// Fourth central moment computed from the pmf.
  double fourth_central_moment() const;
};

/// Π(A) ~ n - Υ_n: P(m pivot movements) = |s(n, n-m)| / n!.
DiscreteLaw pivot_law(int n);

/// Π(B) ~ (N/2)·Bernoulli(1 - 1/N) for Haar-butterfly B, N = 2^n.
DiscreteLaw butterfly_pivot_law(int N);

/// |s(n,k)| / n! rounded to double from the exact rational.
double exact_ratio_to_double(const BigInt& num, const BigInt& den);

}  // namespace pivotlab
