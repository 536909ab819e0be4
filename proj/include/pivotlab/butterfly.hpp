#pragma once

#include <vector>

#include "pivotlab/gepp.hpp"
#include "pivotlab/matrix.hpp"
#include "pivotlab/permutation.hpp"
#include "pivotlab/random.hpp"

namespace pivotlab {

enum class ButterflyStructure { SimpleScalar, Scalar, SimpleDiagonal, Diagonal };

/// Angles of a butterfly matrix of order N = 2^n, one group per level.
///
/// `levels[j-1]` belongs to the level that builds blocks of order 2^j, so
/// `levels[n-1]` is the outermost step. Within a level, non-simple
/// structures store one group per block, blocks in top-to-bottom order; a
/// diagonal group holds 2^(j-1) angles, a scalar group holds one.
///
/// For SimpleScalar, levels[j-1][0] is θ_j in B(θ) = B(θ_n) ⊗ ··· ⊗ B(θ_1).
struct ButterflyAngles {
  ButterflyStructure structure = ButterflyStructure::SimpleScalar;
  int N = 2;
  std::vector<std::vector<double>> levels;

  /// Throws InvalidInput when the shape does not match `structure` and N.
  void validate() const;
  std::size_t total() const;
};

/// n, N-1, N-1 and (N/2)·n angles for the four structures.
std::size_t butterfly_angle_count(ButterflyStructure structure, int N);

/// θ_1..θ_n for a simple scalar butterfly.
ButterflyAngles simple_scalar_angles(const std::vector<double>& thetas);
std::vector<double> simple_scalar_thetas(const ButterflyAngles& angles);

/// [[cos θ, sin θ], [-sin θ, cos θ]].
RealMatrix rotation(double theta);

/// Materializes [[C A1, S A2], [-S A1, C A2]] recursively.
RealMatrix butterfly_matrix(const ButterflyAngles& angles);

struct ButterflySample {
  RealMatrix matrix;
  ButterflyAngles angles;
};

/// Iid Uniform[0, 2π) angles, drawn outermost level first.
ButterflySample sample_butterfly(ButterflyStructure structure, int N, RandomStream& rng);

struct ButterflyGeppPrediction {
  Permutation perm;
  RealMatrix lower;
  RealMatrix upper;
  int pivot_count = 0;
};

/// Closed-form GEPP factors of a simple scalar butterfly. Throws TieAngle
/// when some | |tan θ_j| - 1 | is within 4ε.
ButterflyGeppPrediction butterfly_gepp_prediction(const ButterflyAngles& angles);

/// Closed-form GENP factors L_θ, U_θ of a simple scalar butterfly. Throws
/// ZeroPivot when some cos θ_j is zero.
GenpResult<double> butterfly_genp_prediction(const ButterflyAngles& angles);

}  // namespace pivotlab
