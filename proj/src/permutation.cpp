#include "pivotlab/permutation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "pivotlab/error.hpp"
#include "pivotlab/random.hpp"

namespace pivotlab {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  const int n = size();
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int v : image_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
      throw Error(Errc::InvalidInput, "permutation image is not a bijection of {1..n}");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(int n, int a, int b) {
  if (a < 1 || b < 1 || a > n || b > n)
    throw Error(Errc::InvalidInput, "transposition entries outside {1..n}");
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  std::swap(img[static_cast<std::size_t>(a - 1)], img[static_cast<std::size_t>(b - 1)]);
  return Permutation(std::move(img));
}

Permutation Permutation::from_matrix(const RealMatrix& p) {
  if (p.rows() != p.cols())
    throw Error(Errc::DimensionMismatch, "permutation matrix must be square");
  const auto n = p.rows();
  std::vector<int> img(static_cast<std::size_t>(n), 0);
  for (Eigen::Index j = 0; j < n; ++j) {
    int hits = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (p(i, j) == 1.0) {
        img[static_cast<std::size_t>(j)] = static_cast<int>(i) + 1;
        ++hits;
      } else if (p(i, j) != 0.0) {
        hits = 2;
      }
    }
    if (hits != 1) throw Error(Errc::InvalidInput, "not a permutation matrix");
  }
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (int i = 1; i <= size(); ++i)
    if ((*this)(i) != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> img(image_.size());
  for (int i = 1; i <= size(); ++i) img[static_cast<std::size_t>((*this)(i)-1)] = i;
  return Permutation(std::move(img));
}

std::string Permutation::to_string() const {
  const auto dec = cycle_decomposition(*this);
  std::ostringstream os;
  bool any = false;
  for (const auto& c : dec.cycles) {
    if (c.size() < 2) continue;
    any = true;
    os << '(';
    for (std::size_t t = 0; t < c.size(); ++t) os << (t ? " " : "") << c[t];
    os << ')';
  }
  if (!any) os << "1";
  return os.str();
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size())
    throw Error(Errc::DimensionMismatch, "composing permutations of different degree");
  std::vector<int> img(static_cast<std::size_t>(a.size()));
  for (int i = 1; i <= a.size(); ++i) img[static_cast<std::size_t>(i - 1)] = a(b(i));
  return Permutation(std::move(img));
}

void PivotSequence::validate() const {
  if (n < 1) throw Error(Errc::InvalidSequence, "pivot sequence needs n >= 1");
  if (static_cast<int>(indices.size()) != n - 1)
    throw Error(Errc::InvalidSequence, "pivot sequence must hold n-1 indices");
  for (int k = 1; k < n; ++k) {
    const int ik = indices[static_cast<std::size_t>(k - 1)];
    if (ik < k || ik > n)
      throw Error(Errc::InvalidSequence,
                  "pivot index i_" + std::to_string(k) + " = " + std::to_string(ik) +
                      " outside {" + std::to_string(k) + ".." + std::to_string(n) + "}");
  }
}

int PivotSequence::movement_count() const {
  int count = 0;
  for (int k = 1; k < n; ++k)
    if (indices[static_cast<std::size_t>(k - 1)] > k) ++count;
  return count;
}

int PivotSequence::fixed_count() const { return n - movement_count(); }

std::vector<int> PivotSequence::movement_steps() const {
  std::vector<int> steps;
  for (int k = 1; k < n; ++k)
    if (indices[static_cast<std::size_t>(k - 1)] > k) steps.push_back(k);
  return steps;
}

Permutation from_pivot_sequence(const PivotSequence& s) {
  s.validate();
  // Apply (1 i_1) first, then (2 i_2), ...: track where each point is sent.
  std::vector<int> img(static_cast<std::size_t>(s.n));
  std::iota(img.begin(), img.end(), 1);
  // slot[p] = the original point currently at position p
  std::vector<int> slot = img;
  for (int k = 1; k < s.n; ++k) {
    const int ik = s.indices[static_cast<std::size_t>(k - 1)];
    std::swap(slot[static_cast<std::size_t>(k - 1)], slot[static_cast<std::size_t>(ik - 1)]);
  }
  for (int p = 1; p <= s.n; ++p) img[static_cast<std::size_t>(slot[static_cast<std::size_t>(p - 1)] - 1)] = p;
  return Permutation(std::move(img));
}

PivotSequence to_pivot_sequence(const Permutation& p) {
  const int n = p.size();
  PivotSequence s{n, {}};
  s.indices.reserve(static_cast<std::size_t>(std::max(0, n - 1)));
  // Position q must end up holding σ^{-1}(q).
  const Permutation inv = p.inverse();
  std::vector<int> slot(static_cast<std::size_t>(n));
  std::vector<int> where(static_cast<std::size_t>(n) + 1);
  std::iota(slot.begin(), slot.end(), 1);
  for (int q = 1; q <= n; ++q) where[static_cast<std::size_t>(q)] = q;
  for (int k = 1; k < n; ++k) {
    const int want = inv(k);
    const int at = where[static_cast<std::size_t>(want)];
    s.indices.push_back(at);
    const int displaced = slot[static_cast<std::size_t>(k - 1)];
    std::swap(slot[static_cast<std::size_t>(k - 1)], slot[static_cast<std::size_t>(at - 1)]);
    where[static_cast<std::size_t>(want)] = k;
    where[static_cast<std::size_t>(displaced)] = at;
  }
  return s;
}

CycleDecomposition cycle_decomposition(const Permutation& p) {
  CycleDecomposition out;
  std::vector<char> done(static_cast<std::size_t>(p.size()) + 1, 0);
  for (int start = 1; start <= p.size(); ++start) {
    if (done[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cycle;
    for (int x = start; !done[static_cast<std::size_t>(x)]; x = p(x)) {
      done[static_cast<std::size_t>(x)] = 1;
      cycle.push_back(x);
    }
    out.cycles.push_back(std::move(cycle));
  }
  out.cycle_count = static_cast<int>(out.cycles.size());
  return out;
}

Permutation sample_uniform(RandomStream& rng, int n) {
  if (n < 1) throw Error(Errc::InvalidInput, "sample_uniform needs n >= 1");
  PivotSequence s{n, {}};
  for (int k = 1; k < n; ++k) s.indices.push_back(rng.uniform_int(k, n));
  return from_pivot_sequence(s);
}

Permutation sample_uniform_ncycle(RandomStream& rng, int n) {
  if (n < 2) throw Error(Errc::InvalidInput, "n-cycle sampling needs n >= 2");
  PivotSequence s{n, {}};
  for (int k = 1; k < n; ++k) s.indices.push_back(rng.uniform_int(k + 1, n));
  return from_pivot_sequence(s);
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

int log2_exact(long long N) {
  if (N < 1 || (N & (N - 1)) != 0) return -1;
  int k = 0;
  while ((1LL << k) < N) ++k;
  return k;
}

std::vector<Permutation> butterfly_perm_group(int N) {
  if (log2_exact(N) < 1)
    throw Error(Errc::InvalidInput, "butterfly permutations need N = 2^n with n >= 1");
  std::vector<Permutation> group;
  group.reserve(static_cast<std::size_t>(N));
  for (int m = 0; m < N; ++m) {
    std::vector<int> img(static_cast<std::size_t>(N));
    for (int x = 0; x < N; ++x) img[static_cast<std::size_t>(x)] = (x ^ m) + 1;
    group.emplace_back(std::move(img));
  }
  return group;
}

std::string PivotConfiguration::mask() const {
  const int N = 1 << n_power;
  std::string m(static_cast<std::size_t>(N - 1), '0');
  for (int k : pivot_steps) m[static_cast<std::size_t>(k - 1)] = '1';
  return m;
}

std::vector<PivotConfiguration> pivot_configurations(int N) {
  const int n = log2_exact(N);
  if (n < 1) throw Error(Errc::InvalidInput, "pivot configurations need N = 2^n, n >= 1");
  std::map<std::vector<int>, std::int64_t> counts;
  for (const auto& p : butterfly_perm_group(N)) ++counts[to_pivot_sequence(p).movement_steps()];
  std::vector<PivotConfiguration> out;
  for (const auto& [steps, mult] : counts) out.push_back({n, steps, mult, N});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.numerator > b.numerator;
  });
  return out;
}

}  // namespace pivotlab
