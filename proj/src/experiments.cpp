#include "pivotlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "pivotlab/error.hpp"
#include "pivotlab/gepp.hpp"
#include "pivotlab/random.hpp"

namespace pivotlab {

namespace {

template <typename Scalar>
DenseMatrix<Scalar> as_field(const AnyMatrix& m) {
  if constexpr (is_complex_v<Scalar>) {
    if (const auto* c = std::get_if<ComplexMatrix>(&m)) return *c;
    return std::get<RealMatrix>(m).cast<std::complex<double>>();
  } else {
    return std::get<RealMatrix>(m);
  }
}

TrialRecord record_of(int index, const AnyMatrix& a) {
  TrialRecord r;
  r.trial_index = index;
  std::visit(
      [&](const auto& m) {
        const auto f = gepp_factor(m);
        r.pivot_count = f.pivot_count;
        r.growth = f.growth;
        r.singular = f.singular;
      },
      a);
  return r;
}

template <typename Scalar>
AnyMatrix two_sided(const DenseMatrix<Scalar>& u, const AnyMatrix& middle, const DenseMatrix<Scalar>& v) {
  const DenseMatrix<Scalar> m = as_field<Scalar>(middle);
  return DenseMatrix<Scalar>(u * m * v.adjoint());
}

}  // namespace

std::string_view to_string(Model model) {
  switch (model) {
    case Model::Naive: return "naive";
    case Model::WorstCase: return "worstcase";
    case Model::MaxMove: return "maxmove";
  }
  return "unknown";
}

std::optional<Model> parse_model(std::string_view name) {
  if (name == "naive") return Model::Naive;
  if (name == "worstcase" || name == "worst-case") return Model::WorstCase;
  if (name == "maxmove" || name == "max-movement") return Model::MaxMove;
  return std::nullopt;
}

bool is_transform_ensemble(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::HaarOrthogonal:
    case EnsembleKind::HaarButterflySS:
    case EnsembleKind::ButterflyScalar:
    case EnsembleKind::ButterflySimpleDiag:
    case EnsembleKind::ButterflyDiag:
    case EnsembleKind::WalshSigned:
    case EnsembleKind::DctSigned: return true;
    default: return false;
  }
}

void ExperimentConfig::validate() const {
  if (n < 1) throw Error(Errc::ConfigError, "n must be positive");
  if (trials < 1) throw Error(Errc::ConfigError, "trials must be positive");
  if (model != Model::Naive && !is_transform_ensemble(ensemble.kind))
    throw Error(Errc::ConfigError, std::string(to_string(model)) + " model does not accept ensemble " +
                                       std::string(to_string(ensemble.kind)));
  if (model == Model::MaxMove && n < 2) throw Error(Errc::ConfigError, "maxmove needs n >= 2");
  try {
    ensemble.validate();
    ensemble.check_dimension(n);
  } catch (const Error& e) {
    throw Error(Errc::ConfigError, e.what());
  }
}

TrialRecord run_trial(const ExperimentConfig& cfg, int index) {
  RandomStream rng = seed_stream(cfg.master_seed, static_cast<std::uint64_t>(index));
  switch (cfg.model) {
    case Model::Naive: return record_of(index, sample(cfg.ensemble, cfg.n, rng));
    case Model::WorstCase: {
      const AnyMatrix u = sample(cfg.ensemble, cfg.n, rng);
      const AnyMatrix v = sample(cfg.ensemble, cfg.n, rng);
      const AnyMatrix a = wilkinson_matrix(cfg.n);
      return record_of(index, two_sided(std::get<RealMatrix>(u), a, std::get<RealMatrix>(v)));
    }
    case Model::MaxMove: {
      const AnyMatrix pl = sample_pl({PlVariant::Max, 0.5}, XiSpec{XiLaw::UniformSym}, cfg.n, rng);
      const AnyMatrix u = sample(cfg.ensemble, cfg.n, rng);
      const AnyMatrix v = sample(cfg.ensemble, cfg.n, rng);
      return record_of(index, two_sided(std::get<RealMatrix>(u), pl, std::get<RealMatrix>(v)));
    }
  }
  throw Error(Errc::ConfigError, "unknown model");
}

int default_workers() {
  int w = static_cast<int>(std::thread::hardware_concurrency());
  if (w < 1) w = 1;
  if (const char* env = std::getenv("PIVOTLAB_THREADS")) {
    int cap = 0;
    const std::string_view s(env);
    if (std::from_chars(s.data(), s.data() + s.size(), cap).ec == std::errc{} && cap >= 1) w = std::min(w, cap);
  }
  return w;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, int workers) {
  cfg.validate();
  if (workers <= 0) workers = default_workers();
  workers = std::min(workers, cfg.trials);

  ExperimentResult out;
  out.records.resize(static_cast<std::size_t>(cfg.trials));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= cfg.trials) return;
      try {
        out.records[static_cast<std::size_t>(i)] = run_trial(cfg, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(cfg.trials);
        return;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  out.stats = summarize(out.records, cfg.n);
  return out;
}

SummaryStats summarize(const std::vector<TrialRecord>& records, int n) {
  SummaryStats s;
  s.histogram.assign(static_cast<std::size_t>(std::max(n, 1)), 0);
  std::vector<int> used;
  used.reserve(records.size());
  for (const auto& r : records) {
    if (r.singular) {
      ++s.count_excluded;
      continue;
    }
    if (r.pivot_count < 0 || r.pivot_count >= static_cast<int>(s.histogram.size()))
      throw Error(Errc::InvalidInput, "pivot count outside {0..n-1}");
    used.push_back(r.pivot_count);
    ++s.histogram[static_cast<std::size_t>(r.pivot_count)];
  }
  s.count_used = static_cast<int>(used.size());
  if (used.empty()) throw Error(Errc::EmptySample, "no non-singular records to summarize");

  std::sort(used.begin(), used.end());
  s.median = used[(used.size() - 1) / 2];
  double sum = 0.0;
  for (int v : used) sum += v;
  s.mean = sum / static_cast<double>(used.size());
  if (used.size() > 1) {
    double ss = 0.0;
    for (int v : used) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(used.size() - 1));
  }
  return s;
}

TheoryComparison compare_to_theory(const SummaryStats& stats, const DiscreteLaw& law) {
  TheoryComparison c;
  const double count = static_cast<double>(stats.count_used);
  const double sigma = law.stddev;

  if (sigma > 0.0) {
    c.z_mean = (stats.mean - law.mean) / (sigma / std::sqrt(count));
    // Standard error of s from the delta method, sqrt((μ4 - σ⁴) / (4σ²N)).
    const double se_std = std::sqrt(std::max(law.fourth_central_moment() - sigma * sigma * sigma * sigma, 0.0) /
                                    (4.0 * sigma * sigma * count));
    c.z_std = se_std > 0.0 ? (stats.std - sigma) / se_std : 0.0;
  } else {
    c.z_mean = stats.mean == law.mean ? 0.0 : std::copysign(INFINITY, stats.mean - law.mean);
    c.z_std = stats.std == 0.0 ? 0.0 : INFINITY;
  }

  const std::size_t support = std::max(stats.histogram.size(), law.pmf.size());
  double tv = 0.0;
  for (std::size_t k = 0; k < support; ++k) {
    const double emp = k < stats.histogram.size() ? static_cast<double>(stats.histogram[k]) / count : 0.0;
    const double th = k < law.pmf.size() ? law.pmf[k] : 0.0;
    tv += std::abs(emp - th);
  }
  c.tv_distance = 0.5 * tv;
  return c;
}

std::optional<DiscreteLaw> theory_for(const ExperimentConfig& cfg) {
  const auto kind = cfg.ensemble.kind;
  switch (cfg.model) {
    case Model::Naive:
      if (kind == EnsembleKind::HaarButterflySS) return butterfly_pivot_law(cfg.n);
      if (kind == EnsembleKind::Ginibre || kind == EnsembleKind::GinibreComplex ||
          kind == EnsembleKind::HaarOrthogonal || kind == EnsembleKind::HaarUnitary)
        return pivot_law(cfg.n);
      return std::nullopt;
    case Model::WorstCase:
      if (kind == EnsembleKind::HaarOrthogonal) return pivot_law(cfg.n);
      return std::nullopt;
    case Model::MaxMove: return pivot_law(cfg.n);
  }
  return std::nullopt;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string records_csv(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records) {
  std::ostringstream os;
  os << "# pivotlab " << PIVOTLAB_VERSION << " model=" << to_string(cfg.model)
     << " ensemble=" << to_string(cfg.ensemble.kind) << " n=" << cfg.n << " trials=" << cfg.trials
     << " seed=" << cfg.master_seed << "\n";
  os << "trial,pivot_count,growth,singular\n";
  for (const auto& r : records)
    os << r.trial_index << ',' << r.pivot_count << ',' << format_double(r.growth) << ',' << (r.singular ? 1 : 0)
       << '\n';
  return os.str();
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json e;
  e["kind"] = std::string(to_string(cfg.ensemble.kind));
  e["p"] = cfg.ensemble.p;
  e["alpha"] = cfg.ensemble.alpha;
  e["xi"] = std::string(to_string(cfg.ensemble.xi.law));
  e["ordering"] = std::string(to_string(cfg.ensemble.ordering));
  nlohmann::json j;
  j["model"] = std::string(to_string(cfg.model));
  j["ensemble"] = e;
  j["n"] = cfg.n;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.master_seed;
  j["out"] = cfg.output_path;
  return j;
}

nlohmann::json summary_to_json(const ExperimentConfig& cfg, const SummaryStats& stats) {
  nlohmann::json j;
  j["version"] = PIVOTLAB_VERSION;
  j["config"] = config_to_json(cfg);
  j["count_used"] = stats.count_used;
  j["count_excluded"] = stats.count_excluded;
  j["median"] = stats.median;
  j["mean"] = stats.mean;
  j["std"] = stats.std;
  j["histogram"] = stats.histogram;
  if (const auto law = theory_for(cfg)) {
    const auto c = compare_to_theory(stats, *law);
    j["theory"] = {{"mean", law->mean},
                   {"std", law->stddev},
                   {"z_mean", c.z_mean},
                   {"z_std", c.z_std},
                   {"tv_distance", c.tv_distance}};
  } else {
    j["theory"] = nullptr;
  }
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  try {
    ExperimentConfig cfg;
    const auto model = parse_model(j.at("model").get<std::string>());
    if (!model) throw Error(Errc::ConfigError, "unknown model " + j.at("model").get<std::string>());
    cfg.model = *model;

    const auto& e = j.at("ensemble");
    const std::string kind_name = e.is_string() ? e.get<std::string>() : e.at("kind").get<std::string>();
    const auto kind = parse_ensemble_kind(kind_name);
    if (!kind) throw Error(Errc::ConfigError, "unknown ensemble " + kind_name);
    cfg.ensemble.kind = *kind;
    if (e.is_object()) {
      if (e.contains("p")) cfg.ensemble.p = e["p"].get<double>();
      if (e.contains("alpha")) cfg.ensemble.alpha = e["alpha"].get<double>();
      if (e.contains("xi")) {
        const auto xi = parse_xi_law(e["xi"].get<std::string>());
        if (!xi) throw Error(Errc::ConfigError, "unknown xi law");
        cfg.ensemble.xi.law = *xi;
      }
      if (e.contains("ordering")) {
        const auto o = parse_walsh_ordering(e["ordering"].get<std::string>());
        if (!o) throw Error(Errc::ConfigError, "unknown Walsh ordering");
        cfg.ensemble.ordering = *o;
      }
    }
    cfg.n = j.at("n").get<int>();
    cfg.trials = j.value("trials", 10000);
    cfg.master_seed = j.value("seed", std::uint64_t{0});
    cfg.output_path = j.value("out", std::string{});
    return cfg;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::ConfigError, std::string("bad experiment config: ") + ex.what());
  }
}

void write_experiment(const ExperimentConfig& cfg, const ExperimentResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output_path);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create " + dir.string() + ": " + ec.message());
  {
    std::ofstream f(dir / "records.csv", std::ios::binary);
    if (!f) throw Error(Errc::IoError, "cannot write " + (dir / "records.csv").string());
    f << records_csv(cfg, result.records);
  }
  std::ofstream f(dir / "summary.json", std::ios::binary);
  if (!f) throw Error(Errc::IoError, "cannot write " + (dir / "summary.json").string());
  f << summary_to_json(cfg, result.stats).dump(2) << '\n';
}

}  // namespace pivotlab
