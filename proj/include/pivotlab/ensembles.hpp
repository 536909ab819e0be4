#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include "pivotlab/matrix.hpp"
#include "pivotlab/random.hpp"

namespace pivotlab {

/// Entry law ξ for the PL ensembles.
enum class XiLaw { UniformSym, UniformDisk, Rademacher, StdNormal };

struct XiSpec {
  XiLaw law = XiLaw::UniformSym;

  /// E|ξ|²: 1/3, 1/2, 1, 1.
  double variance() const;
  bool is_complex() const { return law == XiLaw::UniformDisk; }
  std::complex<double> draw(RandomStream& rng) const;

  friend bool operator==(const XiSpec&, const XiSpec&) = default;
};

enum class EnsembleKind {
  Ginibre,
  GinibreComplex,
  GOE,
  GUE,
  Bernoulli,
  HaarOrthogonal,
  HaarUnitary,
  HaarButterflySS,      // B_s(N, Σ_S), the Haar-butterfly
  ButterflyScalar,      // B(N, Σ_S)
  ButterflySimpleDiag,  // B_s(N, Σ_D)
  ButterflyDiag,        // B(N, Σ_D)
  WalshSigned,
  DctSigned,
  PLmax,
  PL,
  PLalpha,
  Wilkinson,
};

enum class WalshOrdering { Sequency, Natural };

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Ginibre;
  double p = 0.5;      // Bernoulli
  double alpha = 0.0;  // PLalpha
  XiSpec xi{};         // PL kinds
  WalshOrdering ordering = WalshOrdering::Sequency;

  /// Throws InvalidParameter for out-of-range parameters.
  void validate() const;
  /// Throws DimensionMismatch when n does not suit the kind.
  void check_dimension(int n) const;
  bool requires_power_of_two() const;
  bool is_complex() const;
  bool is_deterministic() const { return kind == EnsembleKind::Wilkinson; }

  friend bool operator==(const EnsembleSpec&, const EnsembleSpec&) = default;
};

std::string_view to_string(EnsembleKind kind);
std::optional<EnsembleKind> parse_ensemble_kind(std::string_view name);
std::string_view to_string(XiLaw law);
std::optional<XiLaw> parse_xi_law(std::string_view name);
std::string_view to_string(WalshOrdering ordering);
std::optional<WalshOrdering> parse_walsh_ordering(std::string_view name);

/// One n×n draw from the law named by `spec`.
AnyMatrix sample(const EnsembleSpec& spec, int n, RandomStream& rng);

RealMatrix ginibre(int n, RandomStream& rng);
ComplexMatrix ginibre_complex(int n, RandomStream& rng);
/// (G + Gᵀ)/√2.
RealMatrix goe(int n, RandomStream& rng);
/// (H + H*)/√2.
ComplexMatrix gue(int n, RandomStream& rng);
RealMatrix bernoulli_matrix(int n, double p, RandomStream& rng);

/// Haar(O(n)) by Householder QR of a Ginibre draw, R with positive diagonal.
RealMatrix haar_orthogonal(int n, RandomStream& rng);
/// Haar(U(n)) by Householder QR of a complex Ginibre draw with phase correction.
ComplexMatrix haar_unitary(int n, RandomStream& rng);

/// Orthonormal Walsh–Hadamard matrix; sequency order puts k sign changes in row k.
RealMatrix walsh_matrix(int N, WalshOrdering ordering = WalshOrdering::Sequency);
/// W·D with D a uniform ±1 diagonal.
RealMatrix walsh_signed(int N, RandomStream& rng, WalshOrdering ordering = WalshOrdering::Sequency);
/// Orthonormal DCT-II matrix, C_kj = w_k cos(π(2j+1)k / 2N).
RealMatrix dct_matrix(int N);
/// C·D with D a uniform ±1 diagonal.
RealMatrix dct_signed(int N, RandomStream& rng);

// Sparsity arithmetic and the PL ensembles.

/// g_n(k): fraction of nonzero entries of a matrix that is zero above
/// diagonal k, using the quadratic extension for non-integral k.
double density_ratio(int n, double k);

/// The k ∈ [-n, n] with g_n(k) = 1 - α, with k_{1/2} = 0.
double k_alpha(int n, double alpha);

enum class PlVariant { Max, Uniform, Alpha };

struct PlSpec {
  PlVariant variant = PlVariant::Uniform;
  double alpha = 0.5;  // used by the Alpha variant only
};

/// P·L: P uniform over n-cycles (Max) or over S_n (Uniform, Alpha). For Max
/// and Uniform, L is unipotent lower triangular with iid ξ strictly below
/// the diagonal. For Alpha, L_ij ~ ξ where i + ⌊k_α⌋ > j and zero elsewhere.
AnyMatrix sample_pl(const PlSpec& variant, const XiSpec& xi, int n, RandomStream& rng);

}  // namespace pivotlab
