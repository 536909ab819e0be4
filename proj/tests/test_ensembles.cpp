#include <doctest.h>

#include <numbers>
#include <set>

#include "pivotlab/ensembles.hpp"
#include "pivotlab/error.hpp"
#include "pivotlab/gepp.hpp"
#include "pivotlab/stirling.hpp"
#include "test_support.hpp"

using namespace pivotlab;

namespace {

template <typename M>
double orthogonality_defect(const M& q) {
  const auto n = q.rows();
  return max_norm(q.adjoint() * q - M::Identity(n, n));
}

int pivots_of(const AnyMatrix& m) {
  return std::visit([](const auto& a) { return gepp_factor(a).pivot_count; }, m);
}

Errc error_of(const EnsembleSpec& spec, int n) {
  RandomStream rng(1);
  try {
    sample(spec, n, rng);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidInput;
}

}  // namespace

TEST_CASE("Haar orthogonal and unitary draws are orthonormal") {
  RandomStream rng = seed_stream(31, 0);
  for (int n : {1, 2, 5, 16, 64, 128}) {
    CHECK(orthogonality_defect(haar_orthogonal(n, rng)) <= 64.0 * n * kEps);
    CHECK(orthogonality_defect(haar_unitary(n, rng)) <= 64.0 * n * kEps);
  }
}

TEST_CASE("Haar orthogonal n = 2 first-column angle is uniform") {
  std::vector<double> u;
  const int draws = 1000000;
  u.reserve(draws);
  RandomStream rng = seed_stream(32, 0);
  for (int t = 0; t < draws; ++t) {
    const RealMatrix q = haar_orthogonal(2, rng);
    const double phi = std::atan2(q(1, 0), q(0, 0));
    u.push_back((phi + std::numbers::pi) / (2.0 * std::numbers::pi));
  }
  CHECK(pivotlab::testing::ks_uniform(u) < pivotlab::testing::ks_critical(0.001, draws));
}

TEST_CASE("Haar orthogonal n = 16 mean pivot count") {
  RandomStream rng = seed_stream(33, 0);
  double sum = 0.0;
  const int draws = 10000;
  for (int t = 0; t < draws; ++t) sum += gepp_factor(haar_orthogonal(16, rng)).pivot_count;
  CHECK(std::abs(sum / draws - 12.619) <= 0.05);
}

TEST_CASE("GOE and GUE symmetry") {
  RandomStream rng(34);
  const RealMatrix g = goe(20, rng);
  CHECK(g == g.transpose());
  const ComplexMatrix h = gue(20, rng);
  CHECK(h == h.adjoint());
}

TEST_CASE("GOE 2x2 pivot probability") {
  RandomStream rng = seed_stream(35, 0);
  const int draws = 1000000;
  int moved = 0;
  for (int t = 0; t < draws; ++t) moved += gepp_factor(goe(2, rng)).pivot_count;
  const double expected = 2.0 / std::numbers::pi * std::atan(1.0 / std::numbers::sqrt2);
  CHECK(expected == doctest::Approx(0.391826552).epsilon(1e-9));
  CHECK(std::abs(moved / double(draws) - expected) <= 0.002);
}

TEST_CASE("Bernoulli 2x2 pivot law by exhaustion") {
  for (double p : {0.5, 0.3, 0.8}) {
    double moved = 0.0;
    for (int mask = 0; mask < 16; ++mask) {
      RealMatrix a(2, 2);
      int ones = 0;
      for (int b = 0; b < 4; ++b) {
        const double v = (mask >> b) & 1;
        ones += static_cast<int>(v);
        a(b % 2, b / 2) = v;
      }
      const double weight = std::pow(p, ones) * std::pow(1 - p, 4 - ones);
      moved += weight * gepp_factor(a).pivot_count;
    }
    CHECK(moved == doctest::Approx(p * (1 - p)).epsilon(1e-14));
  }
  RandomStream rng(36);
  const RealMatrix b = bernoulli_matrix(30, 0.5, rng);
  CHECK((b.array() == 0.0 || b.array() == 1.0).all());
  CHECK(bernoulli_matrix(5, 0.0, rng).isZero());
  CHECK(bernoulli_matrix(5, 1.0, rng) == RealMatrix::Ones(5, 5));
}

TEST_CASE("Walsh matrices") {
  for (int N : {2, 4, 16, 64}) {
    const RealMatrix w = walsh_matrix(N);
    CHECK(orthogonality_defect(w) <= 8.0 * kEps);
    for (int k = 0; k < N; ++k) {
      int changes = 0;
      for (int j = 1; j < N; ++j) changes += (w(k, j) > 0) != (w(k, j - 1) > 0);
      CHECK(changes == k);
    }
  }
  CHECK(gepp_factor(walsh_matrix(16, WalshOrdering::Natural)).pivot_count == 0);
}

TEST_CASE("signed Walsh and DCT pivot counts do not depend on the signs") {
  RandomStream rng = seed_stream(37, 0);
  for (int t = 0; t < 100; ++t) {
    CHECK(gepp_factor(walsh_signed(16, rng)).pivot_count == 6);
    CHECK(gepp_factor(dct_signed(16, rng)).pivot_count == 13);
  }
  for (int t = 0; t < 5; ++t) {
    CHECK(gepp_factor(walsh_signed(256, rng)).pivot_count == 120);
    CHECK(gepp_factor(dct_signed(256, rng)).pivot_count == 249);
  }
}

TEST_CASE("DCT matrix") {
  CHECK(dct_matrix(1) == RealMatrix::Ones(1, 1));
  for (int N : {2, 3, 8, 100}) CHECK(orthogonality_defect(dct_matrix(N)) <= 16.0 * N * kEps);
  const RealMatrix c = dct_matrix(4);
  CHECK(c(0, 0) == doctest::Approx(0.5));
  CHECK(c(1, 0) == doctest::Approx(std::sqrt(0.5) * std::cos(std::numbers::pi / 8)));
}

TEST_CASE("Wilkinson draws are deterministic") {
  RandomStream rng(38);
  const AnyMatrix m = sample({EnsembleKind::Wilkinson}, 7, rng);
  CHECK(std::get<RealMatrix>(m) == wilkinson_matrix(7));
}

TEST_CASE("every kind samples with the right shape and field") {
  for (int k = 0; k <= static_cast<int>(EnsembleKind::Wilkinson); ++k) {
    EnsembleSpec spec;
    spec.kind = static_cast<EnsembleKind>(k);
    spec.alpha = 0.25;
    RandomStream rng = seed_stream(39, static_cast<std::uint64_t>(k));
    const AnyMatrix m = sample(spec, 16, rng);
    CAPTURE(to_string(spec.kind));
    CHECK(rows_of(m) == 16);
    CHECK(cols_of(m) == 16);
    CHECK(is_complex_matrix(m) == spec.is_complex());
    CHECK(std::visit([](const auto& a) { return all_finite(a); }, m));
  }
  EnsembleSpec disk{EnsembleKind::PL};
  disk.xi.law = XiLaw::UniformDisk;
  CHECK(disk.is_complex());
}

TEST_CASE("orthogonal ensembles are orthonormal") {
  for (auto kind : {EnsembleKind::HaarOrthogonal, EnsembleKind::HaarUnitary, EnsembleKind::HaarButterflySS,
                    EnsembleKind::ButterflyScalar, EnsembleKind::ButterflySimpleDiag, EnsembleKind::ButterflyDiag,
                    EnsembleKind::WalshSigned, EnsembleKind::DctSigned})
    for (int n : {2, 8, 64}) {
      RandomStream rng = seed_stream(40, static_cast<std::uint64_t>(n));
      const AnyMatrix m = sample({kind}, n, rng);
      CAPTURE(to_string(kind));
      CHECK(std::visit([](const auto& a) { return orthogonality_defect(a); }, m) <= 64.0 * n * kEps);
    }
}

TEST_CASE("Haar-butterfly pivot counts lie on {0, N/2}") {
  for (int N : {16, 256}) {
    const int draws = N == 16 ? 10000 : 1000;
    RandomStream rng = seed_stream(41, static_cast<std::uint64_t>(N));
    for (int t = 0; t < draws; ++t) {
      const int p = pivots_of(sample({EnsembleKind::HaarButterflySS}, N, rng));
      REQUIRE((p == 0 || p == N / 2));
    }
  }
}

TEST_CASE("dimension and parameter errors") {
  CHECK(error_of({EnsembleKind::WalshSigned}, 3) == Errc::DimensionMismatch);
  CHECK(error_of({EnsembleKind::HaarButterflySS}, 6) == Errc::DimensionMismatch);
  CHECK(error_of({EnsembleKind::ButterflyDiag}, 1) == Errc::DimensionMismatch);
  CHECK(error_of({EnsembleKind::Ginibre}, 0) == Errc::DimensionMismatch);
  EnsembleSpec bern{EnsembleKind::Bernoulli};
  bern.p = 1.5;
  CHECK(error_of(bern, 4) == Errc::InvalidParameter);
  EnsembleSpec alpha{EnsembleKind::PLalpha};
  alpha.alpha = 1.0;
  CHECK(error_of(alpha, 4) == Errc::InvalidParameter);
  CHECK(error_of({EnsembleKind::PLmax}, 1) == Errc::DimensionMismatch);
  CHECK_NOTHROW(bern.check_dimension(7));
}

TEST_CASE("names round trip and accept aliases") {
  for (int k = 0; k <= static_cast<int>(EnsembleKind::Wilkinson); ++k) {
    const auto kind = static_cast<EnsembleKind>(k);
    CHECK(parse_ensemble_kind(to_string(kind)) == kind);
  }
  CHECK(parse_ensemble_kind("HaarButterflySS") == EnsembleKind::HaarButterflySS);
  CHECK(parse_ensemble_kind("haar_orthogonal") == EnsembleKind::HaarOrthogonal);
  CHECK(parse_ensemble_kind("GOE") == EnsembleKind::GOE);
  CHECK_FALSE(parse_ensemble_kind("circulant").has_value());
  for (auto law : {XiLaw::UniformSym, XiLaw::UniformDisk, XiLaw::Rademacher, XiLaw::StdNormal})
    CHECK(parse_xi_law(to_string(law)) == law);
  CHECK_FALSE(parse_xi_law("cauchy").has_value());
  CHECK(parse_walsh_ordering("natural") == WalshOrdering::Natural);
  CHECK(parse_walsh_ordering(to_string(WalshOrdering::Sequency)) == WalshOrdering::Sequency);
}

TEST_CASE("entry laws for xi") {
  RandomStream rng = seed_stream(42, 0);
  const int draws = 100000;
  for (auto law : {XiLaw::UniformSym, XiLaw::UniformDisk, XiLaw::Rademacher, XiLaw::StdNormal}) {
    const XiSpec xi{law};
    double second = 0.0;
    for (int t = 0; t < draws; ++t) {
      const auto z = xi.draw(rng);
      if (!xi.is_complex()) REQUIRE(z.imag() == 0.0);
      if (law == XiLaw::UniformSym || law == XiLaw::UniformDisk) REQUIRE(std::abs(z) <= 1.0);
      if (law == XiLaw::Rademacher) REQUIRE(std::abs(z.real()) == 1.0);
      second += std::norm(z);
    }
    CAPTURE(to_string(law));
    CHECK(std::abs(second / draws - xi.variance()) <= 0.01);
  }
}
