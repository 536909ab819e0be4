#include "pivotlab/butterfly.hpp"

#include <cmath>
#include <numbers>

#include "pivotlab/error.hpp"

namespace pivotlab {

namespace {

bool is_simple(ButterflyStructure s) {
  return s == ButterflyStructure::SimpleScalar || s == ButterflyStructure::SimpleDiagonal;
}

bool is_diagonal(ButterflyStructure s) {
  return s == ButterflyStructure::SimpleDiagonal || s == ButterflyStructure::Diagonal;
}

// Angles held by level j (blocks of order 2^j).
std::size_t level_size(ButterflyStructure s, int N, int j) {
  const std::size_t blocks = is_simple(s) ? 1 : static_cast<std::size_t>(N >> j);
  const std::size_t per_block = is_diagonal(s) ? (std::size_t{1} << (j - 1)) : 1;
  return blocks * per_block;
}

int levels_for(int N) {
  const int n = log2_exact(N);
  if (n < 1) throw Error(Errc::DimensionMismatch, "butterfly order must be 2^n with n >= 1");
  return n;
}

RealMatrix build_block(const ButterflyAngles& a, int j, std::size_t block) {
  if (j == 0) return RealMatrix::Ones(1, 1);
  const bool simple = is_simple(a.structure);
  const RealMatrix a1 = build_block(a, j - 1, simple ? 0 : 2 * block);
  const RealMatrix a2 = simple ? a1 : build_block(a, j - 1, 2 * block + 1);
  const Eigen::Index half = Eigen::Index{1} << (j - 1);

  const auto& level = a.levels[static_cast<std::size_t>(j - 1)];
  Eigen::VectorXd c(half), s(half);
  if (is_diagonal(a.structure)) {
    const std::size_t base = simple ? 0 : block * static_cast<std::size_t>(half);
    for (Eigen::Index i = 0; i < half; ++i) {
      c(i) = std::cos(level[base + static_cast<std::size_t>(i)]);
      s(i) = std::sin(level[base + static_cast<std::size_t>(i)]);
    }
  } else {
    const double theta = level[simple ? 0 : block];
    c.setConstant(std::cos(theta));
    s.setConstant(std::sin(theta));
  }

  RealMatrix b(2 * half, 2 * half);
  b.topLeftCorner(half, half) = c.asDiagonal() * a1;
  b.topRightCorner(half, half) = s.asDiagonal() * a2;
  b.bottomLeftCorner(half, half) = -(s.asDiagonal() * a1);
  b.bottomRightCorner(half, half) = c.asDiagonal() * a2;
  return b;
}

// ⊗ over factors ordered θ_n (leftmost) down to θ_1.
RealMatrix kron_levels(const std::vector<RealMatrix>& by_theta) {
  RealMatrix out = RealMatrix::Ones(1, 1);
  for (auto it = by_theta.rbegin(); it != by_theta.rend(); ++it) out = kron<double>(out, *it);
  return out;
}

}  // namespace

std::size_t butterfly_angle_count(ButterflyStructure structure, int N) {
  const int n = levels_for(N);
  std::size_t total = 0;
  for (int j = 1; j <= n; ++j) total += level_size(structure, N, j);
  return total;
}

void ButterflyAngles::validate() const {
  const int n = levels_for(N);
  if (static_cast<int>(levels.size()) != n)
    throw Error(Errc::InvalidInput, "butterfly angles need one group per level");
  for (int j = 1; j <= n; ++j)
    if (levels[static_cast<std::size_t>(j - 1)].size() != level_size(structure, N, j))
      throw Error(Errc::InvalidInput, "butterfly level " + std::to_string(j) + " has the wrong angle count");
}

std::size_t ButterflyAngles::total() const {
  std::size_t t = 0;
  for (const auto& l : levels) t += l.size();
  return t;
}

ButterflyAngles simple_scalar_angles(const std::vector<double>& thetas) {
  if (thetas.empty() || thetas.size() > 30)
    throw Error(Errc::InvalidInput, "simple scalar butterfly needs 1..30 angles");
  ButterflyAngles a;
  a.structure = ButterflyStructure::SimpleScalar;
  a.N = 1 << thetas.size();
  for (double t : thetas) a.levels.push_back({t});
  return a;
}

std::vector<double> simple_scalar_thetas(const ButterflyAngles& angles) {
  if (angles.structure != ButterflyStructure::SimpleScalar)
    throw Error(Errc::InvalidInput, "closed forms need a simple scalar butterfly");
  angles.validate();
  std::vector<double> t;
  for (const auto& l : angles.levels) t.push_back(l[0]);
  return t;
}

RealMatrix rotation(double theta) {
  RealMatrix r(2, 2);
  const double c = std::cos(theta), s = std::sin(theta);
  r << c, s, -s, c;
  return r;
}

RealMatrix butterfly_matrix(const ButterflyAngles& angles) {
  angles.validate();
  return build_block(angles, static_cast<int>(angles.levels.size()), 0);
}

ButterflySample sample_butterfly(ButterflyStructure structure, int N, RandomStream& rng) {
  const int n = levels_for(N);
  ButterflySample out;
  out.angles.structure = structure;
  out.angles.N = N;
  out.angles.levels.resize(static_cast<std::size_t>(n));
  for (int j = n; j >= 1; --j) {
    auto& level = out.angles.levels[static_cast<std::size_t>(j - 1)];
    level.resize(level_size(structure, N, j));
    for (double& t : level) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }
  out.matrix = butterfly_matrix(out.angles);
  return out;
}

ButterflyGeppPrediction butterfly_gepp_prediction(const ButterflyAngles& angles) {
  const auto thetas = simple_scalar_thetas(angles);
  std::vector<RealMatrix> p, l, u;
  for (double t : thetas) {
    const double c = std::cos(t), s = std::sin(t);
    if (std::abs(std::abs(s) - std::abs(c)) <= 4.0 * kEps)
      throw Error(Errc::TieAngle, "butterfly angle with |tan θ| = 1 has no unique GEPP factorization");
    const bool swap = std::abs(s) > std::abs(c);
    // θ' = θ without a swap, π/2 - θ with one; cos θ' and sin θ' trade places.
    const double cp = swap ? s : c;
    const double sp = swap ? c : s;
    RealMatrix pj = RealMatrix::Identity(2, 2);
    if (swap) pj << 0, 1, 1, 0;
    RealMatrix lj(2, 2), uj(2, 2);
    lj << 1, 0, -sp / cp, 1;
    uj << cp, sp, 0, 1.0 / cp;
    // D_θ = (-1)^{e} ⊕ 1 flips the first column after a swap.
    if (swap) uj.col(0) *= -1.0;
    p.push_back(pj);
    l.push_back(lj);
    u.push_back(uj);
  }
  ButterflyGeppPrediction out;
  out.perm = Permutation::from_matrix(kron_levels(p));
  out.lower = kron_levels(l);
  out.upper = kron_levels(u);
  out.pivot_count = to_pivot_sequence(out.perm).movement_count();
  return out;
}

GenpResult<double> butterfly_genp_prediction(const ButterflyAngles& angles) {
  const auto thetas = simple_scalar_thetas(angles);
  std::vector<RealMatrix> l, u;
  for (std::size_t j = 0; j < thetas.size(); ++j) {
    const double c = std::cos(thetas[j]), s = std::sin(thetas[j]);
    if (c == 0.0) throw Error(Errc::ZeroPivot, "cos θ_" + std::to_string(j + 1) + " = 0");
    RealMatrix lj(2, 2), uj(2, 2);
    lj << 1, 0, -s / c, 1;
    uj << c, s, 0, 1.0 / c;
    l.push_back(lj);
    u.push_back(uj);
  }
  return {kron_levels(l), kron_levels(u)};
}

}  // namespace pivotlab
