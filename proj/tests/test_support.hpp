#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pivotlab/permutation.hpp"

namespace pivotlab::testing {

// Product of disjoint cycles on {1..n}.
inline Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) img[static_cast<std::size_t>(i - 1)] = i;
  for (const auto& c : cycles)
    for (std::size_t t = 0; t < c.size(); ++t)
      img[static_cast<std::size_t>(c[t] - 1)] = c[(t + 1) % c.size()];
  return Permutation(img);
}

// One-sample Kolmogorov–Smirnov statistic of samples in [0,1) against Uniform(0,1).
inline double ks_uniform(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    d = std::max({d, (i + 1) / n - u[i], u[i] - i / n});
  return d;
}

// Two-sample Kolmogorov–Smirnov statistic.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

// Asymptotic KS critical value c(α)·sqrt(1/n_eff).
inline double ks_critical(double alpha, double n_eff) { return std::sqrt(-std::log(alpha / 2.0) / 2.0 / n_eff); }

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace pivotlab::testing
