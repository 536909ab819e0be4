#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pivotlab/ensembles.hpp"
#include "pivotlab/stirling.hpp"

namespace pivotlab {

enum class Model { Naive, WorstCase, MaxMove };

std::string_view to_string(Model model);
std::optional<Model> parse_model(std::string_view name);

struct ExperimentConfig {
  Model model = Model::Naive;
  EnsembleSpec ensemble{};
  int n = 16;
  int trials = 10000;
  std::uint64_t master_seed = 0;
  std::string output_path;

  /// Throws ConfigError for a bad model/ensemble pairing or sizes.
  void validate() const;
};

struct TrialRecord {
  int trial_index = 0;
  int pivot_count = 0;
  double growth = 1.0;
  bool singular = false;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct SummaryStats {
  int count_used = 0;
  int count_excluded = 0;
  double median = 0.0;
  double mean = 0.0;
  double std = 0.0;
  std::vector<long long> histogram;  // index = pivot count, 0..n-1
};

struct ExperimentResult {
  std::vector<TrialRecord> records;  // sorted by trial_index
  SummaryStats stats;
};

/// The seven orthogonal transform ensembles of the 2-sided models.
bool is_transform_ensemble(EnsembleKind kind);

/// One trial of `cfg`, drawn from seed_stream(master_seed, index).
TrialRecord run_trial(const ExperimentConfig& cfg, int index);

/// Runs every trial on up to `workers` threads; 0 picks the hardware
/// concurrency capped by PIVOTLAB_THREADS. The result does not depend on
/// the worker count.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int workers = 0);

/// Worker count used when run_experiment is given 0.
int default_workers();

/// Lower median, mean and sample std (divisor count-1) of the non-singular
/// records, with a histogram over {0..n-1}. Throws EmptySample when every
/// record is excluded.
SummaryStats summarize(const std::vector<TrialRecord>& records, int n);

struct TheoryComparison {
  double z_mean = 0.0;
  double z_std = 0.0;
  double tv_distance = 0.0;
};

TheoryComparison compare_to_theory(const SummaryStats& stats, const DiscreteLaw& law);

/// The theoretical pivot law implied by the config, when there is one.
std::optional<DiscreteLaw> theory_for(const ExperimentConfig& cfg);

/// `trial,pivot_count,growth,singular` CSV preceded by one `#` line naming
/// the version and resolved config.
std::string records_csv(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
nlohmann::json summary_to_json(const ExperimentConfig& cfg, const SummaryStats& stats);

/// Reads {model, ensemble, n, trials, seed, out}; `ensemble` is a kind name
/// or an object with `kind` and optional `p`, `alpha`, `xi`, `ordering`.
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Writes records.csv and summary.json into cfg.output_path.
void write_experiment(const ExperimentConfig& cfg, const ExperimentResult& result);

/// Shortest round-trip decimal form.
std::string format_double(double x);

}  // namespace pivotlab
