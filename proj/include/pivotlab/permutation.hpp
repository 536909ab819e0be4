#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pivotlab/matrix.hpp"

namespace pivotlab {

class RandomStream;

/// A permutation of {1..n}, stored by its one-line image σ(1)..σ(n).
class Permutation {
 public:
  Permutation() = default;
  /// Throws InvalidInput unless `image` is a bijection of {1..n}.
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int n);
  /// The transposition (a b) on {1..n}; a == b gives the identity.
  static Permutation transposition(int n, int a, int b);
  /// Reads σ off a permutation matrix, P e_i = e_{σ(i)}.
  static Permutation from_matrix(const RealMatrix& p);

  int size() const { return static_cast<int>(image_.size()); }
  /// σ(i), 1-based.
  int operator()(int i) const { return image_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& image() const { return image_; }

  bool is_identity() const;
  Permutation inverse() const;

  /// P_σ with P_σ e_i = e_{σ(i)}.
  template <typename Scalar = double>
  DenseMatrix<Scalar> matrix() const {
    const int n = size();
    DenseMatrix<Scalar> p = DenseMatrix<Scalar>::Zero(n, n);
    for (int i = 1; i <= n; ++i) p((*this)(i)-1, i - 1) = Scalar(1);
    return p;
  }

  /// Rows of P_σ·A: row σ(i) of the result is row i of `a`.
  template <typename Derived>
  DenseMatrix<typename Derived::Scalar> apply_rows(const Eigen::MatrixBase<Derived>& a) const {
    DenseMatrix<typename Derived::Scalar> out(a.rows(), a.cols());
    for (int i = 1; i <= size(); ++i) out.row((*this)(i)-1) = a.row(i - 1);
    return out;
  }

  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
};

/// Composition, (a * b)(x) = a(b(x)).
Permutation operator*(const Permutation& a, const Permutation& b);

/// The pivot rows i_1..i_{n-1} chosen by partial pivoting. Read as the
/// transposition normal form σ = (n-1 i_{n-1})···(2 i_2)(1 i_1); the vacuous
/// i_n = n is implicit and never stored.
struct PivotSequence {
  int n = 0;
  std::vector<int> indices;

  /// Throws InvalidSequence unless n ≥ 1, there are n-1 indices and k ≤ i_k ≤ n.
  void validate() const;
  /// #{k : i_k > k}.
  int movement_count() const;
  /// #{k ∈ [n] : i_k = k} counting i_n = n.
  int fixed_count() const;
  /// Steps k (1-based) with i_k > k.
  std::vector<int> movement_steps() const;

  friend bool operator==(const PivotSequence&, const PivotSequence&) = default;
};

struct CycleDecomposition {
  std::vector<std::vector<int>> cycles;  // each starts at its smallest element
  int cycle_count = 0;
};

Permutation from_pivot_sequence(const PivotSequence& s);
PivotSequence to_pivot_sequence(const Permutation& p);
CycleDecomposition cycle_decomposition(const Permutation& p);

/// Uniform on S_n via i_k ~ Uniform{k..n}.
Permutation sample_uniform(RandomStream& rng, int n);
/// Uniform on the n-cycles via i_k ~ Uniform{k+1..n}; n ≥ 2.
Permutation sample_uniform_ncycle(RandomStream& rng, int n);

/// All n! permutations of {1..n} in lexicographic order of their images.
std::vector<Permutation> all_permutations(int n);

/// The butterfly permutation group ⊗_{j} P_(1 2)^{e_j}, e ∈ {0,1}^log2(N).
/// Element m has e_j equal to bit (n-j) of m, which makes it the map
/// x ↦ ((x-1) XOR m) + 1; m = 0 is the identity.
std::vector<Permutation> butterfly_perm_group(int N);

struct PivotConfiguration {
  int n_power = 0;               // N = 2^n_power
  std::vector<int> pivot_steps;  // ascending, 1-based GE steps
  std::int64_t numerator = 0;    // multiplicity among the N group elements
  std::int64_t denominator = 1;  // N

  double probability() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  /// String of N-1 characters, '1' at position k-1 when step k moves a pivot.
  std::string mask() const;
};

/// Distinct pivot-step sets of the butterfly permutations, largest
/// probability first, ties broken by the step set.
std::vector<PivotConfiguration> pivot_configurations(int N);

/// log2(N) when N is a power of two ≥ 2, otherwise -1.
int log2_exact(long long N);

}  // namespace pivotlab
