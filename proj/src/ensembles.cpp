#include "pivotlab/ensembles.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>

#include "pivotlab/butterfly.hpp"
#include "pivotlab/error.hpp"
#include "pivotlab/gepp.hpp"
#include "pivotlab/permutation.hpp"

namespace pivotlab {

namespace {

std::string normalize(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != '-' && c != '_') out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

struct KindName {
  EnsembleKind kind;
  std::string_view name;
  std::string_view alias;
};

constexpr std::array<KindName, 17> kKindNames{{
    {EnsembleKind::Ginibre, "ginibre", "ginibre"},
    {EnsembleKind::GinibreComplex, "ginibre-complex", "complexginibre"},
    {EnsembleKind::GOE, "goe", "goe"},
    {EnsembleKind::GUE, "gue", "gue"},
    {EnsembleKind::Bernoulli, "bernoulli", "bernoulli"},
    {EnsembleKind::HaarOrthogonal, "haar-orthogonal", "haaro"},
    {EnsembleKind::HaarUnitary, "haar-unitary", "haaru"},
    {EnsembleKind::HaarButterflySS, "haar-butterfly", "haarbutterflyss"},
    {EnsembleKind::ButterflyScalar, "butterfly-scalar", "butterflyscalar"},
    {EnsembleKind::ButterflySimpleDiag, "butterfly-simple-diag", "butterflysimplediag"},
    {EnsembleKind::ButterflyDiag, "butterfly-diag", "butterflydiag"},
    {EnsembleKind::WalshSigned, "walsh", "walshsigned"},
    {EnsembleKind::DctSigned, "dct", "dctsigned"},
    {EnsembleKind::PLmax, "plmax", "plmax"},
    {EnsembleKind::PL, "pl", "pl"},
    {EnsembleKind::PLalpha, "plalpha", "plalpha"},
    {EnsembleKind::Wilkinson, "wilkinson", "wilkinson"},
}};

struct XiName {
  XiLaw law;
  std::string_view name;
  std::string_view alias;
};

constexpr std::array<XiName, 4> kXiNames{{
    {XiLaw::UniformSym, "uniform", "uniformsym"},
    {XiLaw::UniformDisk, "disk", "uniformdisk"},
    {XiLaw::Rademacher, "rademacher", "rademacher"},
    {XiLaw::StdNormal, "normal", "stdnormal"},
}};

bool is_butterfly(EnsembleKind k) {
  return k == EnsembleKind::HaarButterflySS || k == EnsembleKind::ButterflyScalar ||
         k == EnsembleKind::ButterflySimpleDiag || k == EnsembleKind::ButterflyDiag;
}

bool is_pl(EnsembleKind k) {
  return k == EnsembleKind::PLmax || k == EnsembleKind::PL || k == EnsembleKind::PLalpha;
}

ButterflyStructure structure_of(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::HaarButterflySS: return ButterflyStructure::SimpleScalar;
    case EnsembleKind::ButterflyScalar: return ButterflyStructure::Scalar;
    case EnsembleKind::ButterflySimpleDiag: return ButterflyStructure::SimpleDiagonal;
    default: return ButterflyStructure::Diagonal;
  }
}

template <typename Scalar>
DenseMatrix<Scalar> haar_from_qr(DenseMatrix<Scalar> g) {
  const auto n = g.rows();
  Eigen::HouseholderQR<DenseMatrix<Scalar>> qr(g);
  DenseMatrix<Scalar> q = qr.householderQ();
  const auto& r = qr.matrixQR();
  // Q·diag(r_ii / |r_ii|) is the Q of the QR factorization with positive R diagonal.
  for (Eigen::Index j = 0; j < n; ++j) {
    const double m = std::abs(r(j, j));
    if (m > 0.0) q.col(j) *= r(j, j) / m;
  }
  return q;
}

RealMatrix random_signs(RealMatrix m, RandomStream& rng) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) *= rng.rademacher();
  return m;
}

int require_power_of_two(int N, const char* what) {
  const int n = log2_exact(N);
  if (n < 1) throw Error(Errc::DimensionMismatch, std::string(what) + " needs N = 2^n with n >= 1");
  return n;
}

}  // namespace

double XiSpec::variance() const {
  switch (law) {
    case XiLaw::UniformSym: return 1.0 / 3.0;
    case XiLaw::UniformDisk: return 0.5;
    case XiLaw::Rademacher: return 1.0;
    case XiLaw::StdNormal: return 1.0;
  }
  return 1.0;
}

std::complex<double> XiSpec::draw(RandomStream& rng) const {
  switch (law) {
    case XiLaw::UniformSym: return rng.uniform(-1.0, 1.0);
    case XiLaw::UniformDisk:
      for (;;) {
        const double x = rng.uniform(-1.0, 1.0);
        const double y = rng.uniform(-1.0, 1.0);
        if (x * x + y * y <= 1.0) return {x, y};
      }
    case XiLaw::Rademacher: return rng.rademacher();
    case XiLaw::StdNormal: return rng.normal();
  }
  return 0.0;
}

std::string_view to_string(EnsembleKind kind) {
  for (const auto& e : kKindNames)
    if (e.kind == kind) return e.name;
  return "unknown";
}

std::optional<EnsembleKind> parse_ensemble_kind(std::string_view name) {
  const auto key = normalize(name);
  for (const auto& e : kKindNames)
    if (key == normalize(e.name) || key == e.alias) return e.kind;
  return std::nullopt;
}

std::string_view to_string(XiLaw law) {
  for (const auto& e : kXiNames)
    if (e.law == law) return e.name;
  return "unknown";
}

std::optional<XiLaw> parse_xi_law(std::string_view name) {
  const auto key = normalize(name);
  for (const auto& e : kXiNames)
    if (key == e.name || key == e.alias) return e.law;
  return std::nullopt;
}

std::string_view to_string(WalshOrdering ordering) {
  return ordering == WalshOrdering::Sequency ? "sequency" : "natural";
}

std::optional<WalshOrdering> parse_walsh_ordering(std::string_view name) {
  const auto key = normalize(name);
  if (key == "sequency") return WalshOrdering::Sequency;
  if (key == "natural" || key == "hadamard") return WalshOrdering::Natural;
  return std::nullopt;
}

void EnsembleSpec::validate() const {
  if (kind == EnsembleKind::Bernoulli && !(p >= 0.0 && p <= 1.0))
    throw Error(Errc::InvalidParameter, "Bernoulli p must lie in [0, 1]");
  if (kind == EnsembleKind::PLalpha && !(alpha >= 0.0 && alpha < 1.0))
    throw Error(Errc::InvalidParameter, "alpha must lie in [0, 1)");
}

bool EnsembleSpec::requires_power_of_two() const {
  return is_butterfly(kind) || kind == EnsembleKind::WalshSigned;
}

void EnsembleSpec::check_dimension(int n) const {
  if (n < 1) throw Error(Errc::DimensionMismatch, "dimension must be positive");
  if (requires_power_of_two() && log2_exact(n) < 1)
    throw Error(Errc::DimensionMismatch, std::string(to_string(kind)) + " needs a power-of-two dimension >= 2");
  if (is_pl(kind) && n < 2)
    throw Error(Errc::DimensionMismatch, std::string(to_string(kind)) + " needs n >= 2");
}

bool EnsembleSpec::is_complex() const {
  switch (kind) {
    case EnsembleKind::GinibreComplex:
    case EnsembleKind::GUE:
    case EnsembleKind::HaarUnitary: return true;
    case EnsembleKind::PLmax:
    case EnsembleKind::PL:
    case EnsembleKind::PLalpha: return xi.is_complex();
    default: return false;
  }
}

AnyMatrix sample(const EnsembleSpec& spec, int n, RandomStream& rng) {
  spec.validate();
  spec.check_dimension(n);
  switch (spec.kind) {
    case EnsembleKind::Ginibre: return ginibre(n, rng);
    case EnsembleKind::GinibreComplex: return ginibre_complex(n, rng);
    case EnsembleKind::GOE: return goe(n, rng);
    case EnsembleKind::GUE: return gue(n, rng);
    case EnsembleKind::Bernoulli: return bernoulli_matrix(n, spec.p, rng);
    case EnsembleKind::HaarOrthogonal: return haar_orthogonal(n, rng);
    case EnsembleKind::HaarUnitary: return haar_unitary(n, rng);
    case EnsembleKind::HaarButterflySS:
    case EnsembleKind::ButterflyScalar:
    case EnsembleKind::ButterflySimpleDiag:
    case EnsembleKind::ButterflyDiag: return sample_butterfly(structure_of(spec.kind), n, rng).matrix;
    case EnsembleKind::WalshSigned: return walsh_signed(n, rng, spec.ordering);
    case EnsembleKind::DctSigned: return dct_signed(n, rng);
    case EnsembleKind::PLmax: return sample_pl({PlVariant::Max, 0.5}, spec.xi, n, rng);
    case EnsembleKind::PL: return sample_pl({PlVariant::Uniform, 0.5}, spec.xi, n, rng);
    case EnsembleKind::PLalpha: return sample_pl({PlVariant::Alpha, spec.alpha}, spec.xi, n, rng);
    case EnsembleKind::Wilkinson: return wilkinson_matrix(n);
  }
  throw Error(Errc::InvalidParameter, "unknown ensemble kind");
}

RealMatrix ginibre(int n, RandomStream& rng) {
  RealMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.normal();
  return g;
}

ComplexMatrix ginibre_complex(int n, RandomStream& rng) {
  ComplexMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  return g;
}

RealMatrix goe(int n, RandomStream& rng) {
  const RealMatrix g = ginibre(n, rng);
  return (g + g.transpose()) * (1.0 / std::numbers::sqrt2);
}

ComplexMatrix gue(int n, RandomStream& rng) {
  const ComplexMatrix h = ginibre_complex(n, rng);
  return (h + h.adjoint()) * (1.0 / std::numbers::sqrt2);
}

RealMatrix bernoulli_matrix(int n, double p, RandomStream& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::InvalidParameter, "Bernoulli p must lie in [0, 1]");
  RealMatrix b(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) b(i, j) = rng.bernoulli(p) ? 1.0 : 0.0;
  return b;
}

RealMatrix haar_orthogonal(int n, RandomStream& rng) { return haar_from_qr(ginibre(n, rng)); }

ComplexMatrix haar_unitary(int n, RandomStream& rng) { return haar_from_qr(ginibre_complex(n, rng)); }

RealMatrix walsh_matrix(int N, WalshOrdering ordering) {
  require_power_of_two(N, "walsh_matrix");
  const double s = 1.0 / std::sqrt(static_cast<double>(N));
  const int bits = log2_exact(N);
  RealMatrix w(N, N);
  for (int k = 0; k < N; ++k) {
    unsigned r = static_cast<unsigned>(k);
    if (ordering == WalshOrdering::Sequency) {
      // Sequency row k is Hadamard row bitreverse(gray(k)).
      const unsigned g = r ^ (r >> 1);
      r = 0;
      for (int b = 0; b < bits; ++b)
        if (g & (1u << b)) r |= 1u << (bits - 1 - b);
    }
    for (int j = 0; j < N; ++j) w(k, j) = (std::popcount(r & static_cast<unsigned>(j)) & 1) ? -s : s;
  }
  return w;
}

RealMatrix walsh_signed(int N, RandomStream& rng, WalshOrdering ordering) {
  return random_signs(walsh_matrix(N, ordering), rng);
}

RealMatrix dct_matrix(int N) {
  if (N < 1) throw Error(Errc::DimensionMismatch, "dct_matrix needs N >= 1");
  const double nd = static_cast<double>(N);
  RealMatrix c(N, N);
  for (int k = 0; k < N; ++k) {
    const double w = k == 0 ? std::sqrt(1.0 / nd) : std::sqrt(2.0 / nd);
    for (int j = 0; j < N; ++j) c(k, j) = w * std::cos(std::numbers::pi * (2.0 * j + 1.0) * k / (2.0 * nd));
  }
  return c;
}

RealMatrix dct_signed(int N, RandomStream& rng) { return random_signs(dct_matrix(N), rng); }

}  // namespace pivotlab
