#include <doctest.h>

#include "pivotlab/ensembles.hpp"
#include "pivotlab/error.hpp"
#include "pivotlab/gepp.hpp"

using namespace pivotlab;

namespace {

Errc domain_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidInput;
}

}  // namespace

TEST_CASE("density ratio special values") {
  for (int n : {1, 2, 8, 100}) {
    CHECK(density_ratio(n, 0) == doctest::Approx(0.5 * (1.0 - 1.0 / n)));
    CHECK(density_ratio(n, n) == 1.0);
    CHECK(density_ratio(n, -n) == 0.0);
  }
  CHECK(density_ratio(8, -3) == 30.0 / 128.0);
  CHECK(domain_code([] { density_ratio(8, 8.5); }) == Errc::DomainError);
  CHECK(domain_code([] { density_ratio(8, -9); }) == Errc::DomainError);
}

TEST_CASE("density ratio counts entries at or below a negative diagonal") {
  for (int n : {3, 8, 17})
    for (int k = -n; k < 0; ++k) {
      int count = 0;
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) count += (j - i <= k);
      CHECK(density_ratio(n, k) == doctest::Approx(count / double(n * n)).epsilon(1e-15));
    }
}

TEST_CASE("density ratio is nondecreasing on the integers and on each piece") {
  for (int n : {4, 64}) {
    double prev = -1.0;
    for (int k = -n; k <= n; ++k) {
      const double g = density_ratio(n, k);
      CHECK(g >= prev);
      prev = g;
    }
    CHECK(density_ratio(n, -1) == density_ratio(n, 0));
    for (auto [lo, hi] : {std::pair{-double(n), -1.0}, std::pair{0.0, double(n)}}) {
      prev = -1.0;
      for (double k = lo; k <= hi; k += 0.125) {
        const double g = density_ratio(n, k);
        CHECK(g >= prev);
        prev = g;
      }
    }
  }
}

TEST_CASE("k_alpha values and round trip") {
  for (int n : {8, 256, 512}) {
    CHECK(k_alpha(n, 0.5) == 0.0);
    CHECK(k_alpha(n, 0.0) == doctest::Approx(n).epsilon(1e-14));
    for (double a = 0.0; a < 1.0; a += 1.0 / 64) {
      if (a == 0.5) continue;
      const double k = k_alpha(n, a);
      CAPTURE(n);
      CAPTURE(a);
      CHECK(k >= -n);
      CHECK(k <= n);
      CHECK(std::abs(density_ratio(n, k) - (1.0 - a)) < 1e-12);
    }
  }
  const double n = 256;
  CHECK(k_alpha(256, 0.75) == -n + 0.5 * (-1.0 + std::sqrt(1.0 + 8.0 * n * n * 0.25)));
  CHECK(domain_code([] { k_alpha(8, 1.0); }) == Errc::DomainError);
  CHECK(domain_code([] { k_alpha(8, -0.1); }) == Errc::DomainError);
}

TEST_CASE("PLmax always moves n-1 pivots without growth") {
  RandomStream rng = seed_stream(61, 0);
  for (int n = 2; n <= 64; n += 3)
    for (int t = 0; t < 20; ++t) {
      const RealMatrix a = std::get<RealMatrix>(sample_pl({PlVariant::Max}, {XiLaw::UniformSym}, n, rng));
      const auto f = gepp_factor(a);
      CHECK(f.pivot_count == n - 1);
      CHECK(f.growth == 1.0);
      CHECK(cycle_decomposition(f.perm.inverse()).cycle_count == 1);
    }
}

TEST_CASE("PL with n = 2 pivots with probability one half") {
  RandomStream rng = seed_stream(62, 0);
  const int draws = 20000;
  int moved = 0;
  for (int t = 0; t < draws; ++t)
    moved += gepp_factor(std::get<RealMatrix>(sample_pl({PlVariant::Uniform}, {XiLaw::UniformSym}, 2, rng))).pivot_count;
  CHECK(std::abs(moved / double(draws) - 0.5) <= 0.02);
}

TEST_CASE("PL factors recover P and L") {
  RandomStream rng = seed_stream(63, 0);
  for (int t = 0; t < 20; ++t) {
    const RealMatrix a = std::get<RealMatrix>(sample_pl({PlVariant::Uniform}, {XiLaw::UniformSym}, 12, rng));
    const auto f = gepp_factor(a);
    CHECK(f.upper == RealMatrix::Identity(12, 12));
    CHECK(f.perm.apply_rows(a) == f.lower);
    CHECK(max_norm(f.lower) <= 1.0);
  }
}

TEST_CASE("PLalpha at one half plus P is the uniform PL draw") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomStream r1 = seed_stream(64, seed), r2 = seed_stream(64, seed);
    const RealMatrix u = std::get<RealMatrix>(sample_pl({PlVariant::Uniform}, {XiLaw::UniformSym}, 10, r1));
    const RealMatrix a = std::get<RealMatrix>(sample_pl({PlVariant::Alpha, 0.5}, {XiLaw::UniformSym}, 10, r2));
    const RealMatrix p = u - a;
    CHECK_NOTHROW(Permutation::from_matrix(p));
    const RealMatrix l = Permutation::from_matrix(p).inverse().apply_rows(a);
    CHECK(l.triangularView<Eigen::Upper>().toDenseMatrix().isZero());
  }
}

TEST_CASE("PLalpha fills exactly the live band") {
  for (double alpha : {0.0, 0.25, 0.5, 0.75, 0.9})
    for (int n : {8, 64}) {
      RandomStream rng = seed_stream(65, static_cast<std::uint64_t>(n));
      const RealMatrix a = std::get<RealMatrix>(sample_pl({PlVariant::Alpha, alpha}, {XiLaw::StdNormal}, n, rng));
      const int cutoff = static_cast<int>(std::floor(k_alpha(n, alpha)));
      CAPTURE(alpha);
      CAPTURE(n);
      for (int j = 1; j <= n; ++j) {
        int live = 0;
        for (int i = 1; i <= n; ++i) live += (i + cutoff > j);
        CHECK((a.col(j - 1).array() != 0.0).count() == live);
      }
    }
}

TEST_CASE("PL entry laws and errors") {
  RandomStream rng(66);
  const AnyMatrix disk = sample_pl({PlVariant::Uniform}, {XiLaw::UniformDisk}, 6, rng);
  CHECK(is_complex_matrix(disk));
  const RealMatrix r = std::get<RealMatrix>(sample_pl({PlVariant::Max}, {XiLaw::Rademacher}, 6, rng));
  CHECK(((r.array() == 0.0) || (r.array().abs() == 1.0)).all());
  CHECK(domain_code([&] { sample_pl({PlVariant::Uniform}, {}, 1, rng); }) == Errc::InvalidParameter);
  CHECK(domain_code([&] { sample_pl({PlVariant::Alpha, 1.0}, {}, 4, rng); }) == Errc::InvalidParameter);
}
