#pragma once

#include <complex>
#include <vector>

#include "pivotlab/ensembles.hpp"
#include "pivotlab/matrix.hpp"
#include "pivotlab/random.hpp"

namespace pivotlab {

using Spectrum = std::vector<std::complex<double>>;

/// All eigenvalues of a square matrix, with multiplicity.
///
/// Rows and columns that isolate an eigenvalue are permuted out first and
/// the remaining block is diagonally scaled by powers of two; the shifted
/// QR iteration then runs on that block. Five eigenvalues (all of them when
/// n < 5) are re-checked by inverse iteration against the input, requiring
/// ‖(A - λI)v‖₂ ≤ 10³·n·ε·‖A‖_F. Throws NoConvergence when the iteration
/// stalls or a residual check fails.
Spectrum eigenvalues(const AnyMatrix& a);

/// Largest residual ‖(A - λI)v‖₂ / ‖A‖_F over the checked eigenvalues.
double eigenvalue_residual(const AnyMatrix& a, const Spectrum& spectrum, int checks = 5);

struct SpectralSample {
  int n = 0;
  double alpha = 0.5;
  XiSpec xi{};
  Spectrum eigenvalues;  // divided by `scale`
  double scale = 1.0;    // sqrt(n·σ²·(1-α))
};

/// Eigenvalues of `a` divided by sqrt(n·σ²·(1-α)).
SpectralSample make_spectral_sample(const AnyMatrix& a, double alpha, const XiSpec& xi);

/// One PL draw and its scaled spectrum; the Max and Uniform variants scale
/// with α = 1/2.
SpectralSample scaled_esd(const PlSpec& variant, const XiSpec& xi, int n, RandomStream& rng);

struct RadialProfile {
  std::vector<double> radii;
  std::vector<double> cdf;
};

/// Empirical radial CDF on `grid_points` equally spaced radii over [0, max |λ|].
RadialProfile radial_profile(const SpectralSample& s, int grid_points);

/// Fraction of scaled eigenvalues with modulus ≤ r.
double radial_cdf(const SpectralSample& s, double r);

struct RankNullity {
  int numerical_rank = 0;
  int zero_eig_multiplicity = 0;
};

/// Rank by column-pivoted QR with threshold n·ε relative to the largest
/// pivot, and the count of eigenvalues below n·ε·‖A‖_max in modulus.
RankNullity rank_nullity(const AnyMatrix& a);

/// rank_nullity of one PL(ξ, α) draw.
RankNullity rank_nullity_probe(double alpha, const XiSpec& xi, int n, RandomStream& rng);

}  // namespace pivotlab
