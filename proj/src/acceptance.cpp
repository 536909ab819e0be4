#include "pivotlab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "pivotlab/butterfly.hpp"
#include "pivotlab/ensembles.hpp"
#include "pivotlab/error.hpp"
#include "pivotlab/esd.hpp"
#include "pivotlab/experiments.hpp"
#include "pivotlab/gepp.hpp"
#include "pivotlab/permutation.hpp"
#include "pivotlab/stirling.hpp"

namespace pivotlab {

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& text) {
    if (!detail.str().empty()) detail << "; ";
    detail << text << (cond ? "" : " [FAILED]");
    ok = ok && cond;
  }
};

std::string fmt(double x, int prec = 6) {
  std::ostringstream os;
  os << std::setprecision(prec) << x;
  return os.str();
}

ExperimentConfig config(Model model, EnsembleKind kind, int n, int trials, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.model = model;
  cfg.ensemble.kind = kind;
  cfg.n = n;
  cfg.trials = trials;
  cfg.master_seed = seed;
  return cfg;
}

double max_abs_diff(const RealMatrix& a, const RealMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// sup over r in [lo, hi] of |F(r) - r²| for the empirical radial CDF F.
double sup_distance_to_disk(const SpectralSample& s, double lo, double hi) {
  std::vector<double> mod;
  for (const auto& l : s.eigenvalues) mod.push_back(std::abs(l));
  std::sort(mod.begin(), mod.end());
  const double count = static_cast<double>(mod.size());
  auto cdf_at = [&](double r) {
    return static_cast<double>(std::upper_bound(mod.begin(), mod.end(), r) - mod.begin()) / count;
  };
  auto cdf_before = [&](double r) {
    return static_cast<double>(std::lower_bound(mod.begin(), mod.end(), r) - mod.begin()) / count;
  };
  double sup = std::max(std::abs(cdf_at(lo) - lo * lo), std::abs(cdf_at(hi) - hi * hi));
  for (double m : mod) {
    if (m < lo || m > hi) continue;
    sup = std::max({sup, std::abs(cdf_at(m) - m * m), std::abs(cdf_before(m) - m * m)});
  }
  return sup;
}

void criterion_stirling(Check& c) {
  const StirlingTable t(20);
  bool sums = true;
  for (int n = 0; n <= 20; ++n) {
    BigInt s = 0;
    for (const auto& v : t.row(n)) s += v;
    sums = sums && s == factorial(n);
  }
  c.expect(sums, "row sums of |s(n,k)| equal n! for n <= 20");

  bool enumeration = true;
  for (int n = 1; n <= 7; ++n) {
    std::vector<long long> counts(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& p : all_permutations(n)) ++counts[static_cast<std::size_t>(cycle_decomposition(p).cycle_count)];
    for (int k = 0; k <= n; ++k) enumeration = enumeration && BigInt(counts[static_cast<std::size_t>(k)]) == t(n, k);
  }
  c.expect(enumeration, "|s(n,k)| equals the S_n cycle-count census for n <= 7");
}

void criterion_ginibre_law(Check& c, int workers) {
  const auto cfg = config(Model::Naive, EnsembleKind::Ginibre, 6, 100000, 1001);
  const auto res = run_experiment(cfg, workers);
  const auto cmp = compare_to_theory(res.stats, pivot_law(6));
  c.expect(cmp.tv_distance < 0.01, "Ginibre n=6, 1e5 trials: TV distance " + fmt(cmp.tv_distance) + " < 0.01");
}

void criterion_butterfly_law(Check& c, int workers) {
  for (const int N : {16, 256}) {
    const auto cfg = config(Model::Naive, EnsembleKind::HaarButterflySS, N, 10000, 1002 + N);
    const auto res = run_experiment(cfg, workers);
    const auto& h = res.stats.histogram;
    long long outside = 0;
    for (std::size_t k = 0; k < h.size(); ++k)
      if (k != 0 && k != static_cast<std::size_t>(N / 2)) outside += h[k];
    const auto law = butterfly_pivot_law(N);
    const double se = law.stddev / std::sqrt(static_cast<double>(res.stats.count_used));
    const double p0 = static_cast<double>(h[0]) / res.stats.count_used;
    const std::string tag = "N=" + std::to_string(N) + ": ";
    c.expect(outside == 0 && res.stats.count_excluded == 0,
             tag + "support in {0," + std::to_string(N / 2) + "} (" + std::to_string(outside) + " outside)");
    c.expect(std::abs(res.stats.mean - law.mean) <= 3.0 * se,
             tag + "mean " + fmt(res.stats.mean) + " vs " + fmt(law.mean) + " (3 SE = " + fmt(3 * se, 3) + ")");
    c.expect(std::abs(p0 - 1.0 / N) <= 0.01, tag + "P(0) " + fmt(p0) + " vs " + fmt(1.0 / N));
  }
}

void criterion_haar_orthogonal(Check& c, int workers) {
  const auto cfg = config(Model::Naive, EnsembleKind::HaarOrthogonal, 16, 10000, 1004);
  const auto res = run_experiment(cfg, workers);
  const double mean = 12.619271006771006, sd = 1.340291930806123;
  const double se = sd / std::sqrt(static_cast<double>(res.stats.count_used));
  c.expect(std::abs(res.stats.mean - mean) <= 3.0 * se,
           "mean " + fmt(res.stats.mean) + " vs " + fmt(mean, 10) + " (3 SE = " + fmt(3 * se, 3) + ")");
  c.expect(std::abs(res.stats.std - sd) <= 0.1, "std " + fmt(res.stats.std) + " vs " + fmt(sd, 10) + " +/- 0.1");
}

void criterion_transforms(Check& c, int workers) {
  struct Case {
    EnsembleKind kind;
    int N;
    int expected;
  };
  for (const Case k : {Case{EnsembleKind::WalshSigned, 16, 6}, Case{EnsembleKind::WalshSigned, 256, 120},
                       Case{EnsembleKind::DctSigned, 16, 13}, Case{EnsembleKind::DctSigned, 256, 249}}) {
    const auto cfg = config(Model::Naive, k.kind, k.N, 100, 1005);
    const auto res = run_experiment(cfg, workers);
    const bool all = std::all_of(res.records.begin(), res.records.end(),
                                 [&](const TrialRecord& r) { return r.pivot_count == k.expected; });
    c.expect(all && res.stats.std == 0.0, std::string(to_string(k.kind)) + " N=" + std::to_string(k.N) +
                                              ": median " + fmt(res.stats.median) + ", std " +
                                              fmt(res.stats.std) + " (expected " + std::to_string(k.expected) +
                                              ", 0)");
  }
}

void criterion_small(Check& c, int workers) {
  auto frequency = [&](EnsembleKind kind, std::uint64_t seed) {
    const auto res = run_experiment(config(Model::Naive, kind, 2, 1000000, seed), workers);
    long long moved = 0;
    for (const auto& r : res.records) moved += r.pivot_count;
    return static_cast<double>(moved) / static_cast<double>(res.records.size());
  };
  const double goe = frequency(EnsembleKind::GOE, 1006);
  const double gue = frequency(EnsembleKind::GUE, 1007);
  const double ber = frequency(EnsembleKind::Bernoulli, 1008);
  c.expect(std::abs(goe - 0.391826552) <= 0.005, "GOE(2) " + fmt(goe) + " vs 0.391826552");
  c.expect(std::abs(gue - 0.577350269) <= 0.005, "GUE(2) " + fmt(gue) + " vs 0.577350269");
  c.expect(std::abs(ber - 0.25) <= 0.005, "Bernoulli(1/2) 2x2 " + fmt(ber) + " vs 0.25");
}

void criterion_butterfly_closed_forms(Check& c) {
  for (const int N : {4, 8, 16}) {
    const double tol = 32.0 * N * kEps;
    int perm_mismatch = 0, gepp_bad = 0, genp_bad = 0, ties = 0;
    double worst_l = 0.0, worst_u = 0.0, worst_genp = 0.0;
    for (int t = 0; t < 1000; ++t) {
      RandomStream rng = seed_stream(1007 + N, static_cast<std::uint64_t>(t));
      const auto b = sample_butterfly(ButterflyStructure::SimpleScalar, N, rng);
      const auto f = gepp_factor(b.matrix);
      try {
        const auto pred = butterfly_gepp_prediction(b.angles);
        if (!(pred.perm == f.perm)) ++perm_mismatch;
        const double dl = max_abs_diff(pred.lower, f.lower), du = max_abs_diff(pred.upper, f.upper);
        worst_l = std::max(worst_l, dl);
        worst_u = std::max(worst_u, du);
        if (dl > tol || du > tol) ++gepp_bad;
      } catch (const Error& e) {
        if (e.code() != Errc::TieAngle) throw;
        ++ties;
      }
      const auto g = genp_factor(b.matrix);
      const auto gp = butterfly_genp_prediction(b.angles);
      // GENP multipliers are unbounded, so the comparison is relative to the factor sizes.
      const double rel = std::max(max_abs_diff(g.lower, gp.lower) / max_norm(gp.lower),
                                  max_abs_diff(g.upper, gp.upper) / max_norm(gp.upper));
      worst_genp = std::max(worst_genp, rel);
      if (rel > tol) ++genp_bad;
    }
    const std::string tag = "N=" + std::to_string(N) + ": ";
    c.expect(perm_mismatch == 0, tag + std::to_string(perm_mismatch) + " permutation mismatches");
    c.expect(gepp_bad == 0, tag + "GEPP |dL| " + fmt(worst_l, 3) + ", |dU| " + fmt(worst_u, 3) + " <= " +
                                fmt(tol, 3) + " (" + std::to_string(ties) + " tie draws)");
    c.expect(genp_bad == 0, tag + "GENP worst relative gap " + fmt(worst_genp, 3) + " <= " + fmt(tol, 3));
  }
}

void criterion_worst_case(Check& c, int workers) {
  const auto cfg = config(Model::WorstCase, EnsembleKind::HaarOrthogonal, 256, 1000, 1009);
  const auto res = run_experiment(cfg, workers);
  const double mean = 249.8756550371827;
  const double se = pivot_law(256).stddev / std::sqrt(static_cast<double>(res.stats.count_used));
  c.expect(std::abs(res.stats.mean - mean) <= 3.0 * se,
           "U A_256 V^T mean " + fmt(res.stats.mean, 8) + " vs " + fmt(mean, 12) + " (3 SE = " + fmt(3 * se, 3) + ")");
  bool wilkinson = true;
  for (int n = 1; n <= 30; ++n) wilkinson = wilkinson && gepp_factor(wilkinson_matrix(n)).growth == std::ldexp(1.0, n - 1);
  c.expect(wilkinson, "rho(A_n) = 2^(n-1) exactly for n <= 30");
}

void criterion_max_movement(Check& c, int workers) {
  int bad = 0;
  for (int t = 0; t < 1000; ++t) {
    RandomStream rng = seed_stream(1010, static_cast<std::uint64_t>(t));
    const auto pl = std::get<RealMatrix>(sample_pl({PlVariant::Max, 0.5}, XiSpec{XiLaw::UniformSym}, 256, rng));
    const auto f = gepp_factor(pl);
    if (f.pivot_count != 255 || f.growth != 1.0) ++bad;
  }
  c.expect(bad == 0, "PLmax n=256: " + std::to_string(bad) + " of 1000 draws miss Pi = 255, rho = 1");

  const auto law = pivot_law(16);
  for (const auto kind : {EnsembleKind::HaarOrthogonal, EnsembleKind::HaarButterflySS, EnsembleKind::ButterflyScalar,
                          EnsembleKind::ButterflySimpleDiag, EnsembleKind::ButterflyDiag, EnsembleKind::WalshSigned,
                          EnsembleKind::DctSigned}) {
    const auto res = run_experiment(config(Model::MaxMove, kind, 16, 10000, 1011), workers);
    const double se = law.stddev / std::sqrt(static_cast<double>(res.stats.count_used));
    c.expect(std::abs(res.stats.mean - law.mean) <= 3.0 * se,
             std::string(to_string(kind)) + " mean " + fmt(res.stats.mean) + " (3 SE = " + fmt(3 * se, 3) + ")");
  }
}

void criterion_esd(Check& c) {
  const int n = 512;
  const XiSpec normal{XiLaw::StdNormal};
  {
    RandomStream rng = seed_stream(1012, 0);
    const auto s = scaled_esd({PlVariant::Alpha, 0.0}, normal, n, rng);
    const double sup = sup_distance_to_disk(s, 0.2, 0.9);
    c.expect(sup <= 0.05, "(a) alpha=0 sup |F(r) - r^2| on [0.2, 0.9] = " + fmt(sup, 4));
  }
  bool monotone = true;
  std::ostringstream cdfs;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    double prev = -1.0;
    cdfs << (seed ? " | " : "");
    for (const double alpha : {0.0, 0.25, 0.5, 0.75}) {
      RandomStream rng = seed_stream(1013 + seed, static_cast<std::uint64_t>(alpha * 4));
      const double v = radial_cdf(scaled_esd({PlVariant::Alpha, alpha}, normal, n, rng), 0.5);
      cdfs << (alpha > 0 ? "," : "") << fmt(v, 3);
      monotone = monotone && v >= prev;
      prev = v;
    }
  }
  c.expect(monotone, "(b) cdf(1/2) over alpha 0,1/4,1/2,3/4: " + cdfs.str());

  RandomStream rng = seed_stream(1016, 0);
  const auto rn = rank_nullity_probe(0.75, normal, n, rng);
  const double rank_target = std::sqrt(2.0 * 0.25) * n, zero_target = 0.5 * n;
  c.expect(std::abs(rn.numerical_rank - rank_target) <= 0.05 * rank_target,
           "(c) rank " + std::to_string(rn.numerical_rank) + " vs " + fmt(rank_target, 5) + " +/- 5%");
  c.expect(std::abs(rn.zero_eig_multiplicity - zero_target) <= 0.05 * zero_target,
           "(c) zero eigenvalues " + std::to_string(rn.zero_eig_multiplicity) + " vs " + fmt(zero_target, 5) +
               " +/- 5%");
}

void criterion_reproducibility(Check& c) {
  for (const auto& cfg : {config(Model::Naive, EnsembleKind::Ginibre, 8, 2000, 1017),
                          config(Model::WorstCase, EnsembleKind::ButterflyDiag, 16, 1000, 1018),
                          config(Model::MaxMove, EnsembleKind::HaarOrthogonal, 16, 1000, 1019)}) {
    const std::string ref = records_csv(cfg, run_experiment(cfg, 1).records);
    bool same = true;
    for (const int w : {2, 3, 8}) same = same && records_csv(cfg, run_experiment(cfg, w).records) == ref;
    c.expect(same, std::string(to_string(cfg.model)) + "/" + std::string(to_string(cfg.ensemble.kind)) +
                       " CSV identical for 1, 2, 3, 8 workers");
  }
}

struct Criterion {
  int id;
  const char* name;
  double limit;
};

constexpr Criterion kCriteria[] = {
    {1, "stirling-exactness", 10},      {2, "ginibre-pivot-law", 60},     {3, "butterfly-pivot-law", 300},
    {4, "haar-orthogonal-law", 120},    {5, "deterministic-transforms", 60}, {6, "small-matrix-probabilities", 60},
    {7, "butterfly-closed-forms", 60},  {8, "worst-case-model", 0},       {9, "max-movement-model", 0},
    {10, "esd-probes", 600},            {11, "reproducibility", 0},
};

}  // namespace

std::vector<int> acceptance_ids() {
  std::vector<int> ids;
  for (const auto& c : kCriteria) ids.push_back(c.id);
  return ids;
}

CriterionResult run_criterion(int id, int workers) {
  const Criterion* meta = nullptr;
  for (const auto& c : kCriteria)
    if (c.id == id) meta = &c;
  if (!meta) throw Error(Errc::InvalidInput, "no acceptance criterion " + std::to_string(id));

  CriterionResult r;
  r.id = id;
  r.name = meta->name;
  r.time_limit = meta->limit;
  Check c;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: criterion_stirling(c); break;
      case 2: criterion_ginibre_law(c, workers); break;
      case 3: criterion_butterfly_law(c, workers); break;
      case 4: criterion_haar_orthogonal(c, workers); break;
      case 5: criterion_transforms(c, workers); break;
      case 6: criterion_small(c, workers); break;
      case 7: criterion_butterfly_closed_forms(c); break;
      case 8: criterion_worst_case(c, workers); break;
      case 9: criterion_max_movement(c, workers); break;
      case 10: criterion_esd(c); break;
      case 11: criterion_reproducibility(c); break;
    }
  } catch (const Error& e) {
    c.expect(false, std::string(e.name()) + ": " + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.time_limit > 0.0)
    c.expect(r.seconds < r.time_limit, "runtime " + fmt(r.seconds, 3) + " s < " + fmt(r.time_limit) + " s");
  r.passed = c.ok;
  r.detail = c.detail.str();
  return r;
}

std::vector<CriterionResult> run_acceptance(int workers, const std::vector<int>& only) {
  std::vector<CriterionResult> out;
  for (const int id : only.empty() ? acceptance_ids() : only) out.push_back(run_criterion(id, workers));
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << " ("
     << std::fixed << std::setprecision(2) << r.seconds << " s)";
  return os.str();
}

}  // namespace pivotlab
