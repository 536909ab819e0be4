#include <doctest.h>

#include <filesystem>

#include "pivotlab/error.hpp"
#include "pivotlab/experiments.hpp"
#include "pivotlab/gepp.hpp"
#include "test_support.hpp"

using namespace pivotlab;

namespace {

ExperimentConfig config(Model model, EnsembleKind kind, int n, int trials, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.model = model;
  cfg.ensemble.kind = kind;
  cfg.n = n;
  cfg.trials = trials;
  cfg.master_seed = seed;
  return cfg;
}

std::vector<TrialRecord> records_of(std::initializer_list<int> counts) {
  std::vector<TrialRecord> out;
  int i = 0;
  for (int c : counts) out.push_back({i++, c, 1.0, false});
  return out;
}

Errc config_error(const ExperimentConfig& cfg) {
  try {
    cfg.validate();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidInput;
}

}  // namespace

TEST_CASE("summary of constant and two-point samples") {
  const auto s = summarize(records_of({3, 3, 3}), 4);
  CHECK(s.median == 3.0);
  CHECK(s.mean == 3.0);
  CHECK(s.std == 0.0);
  CHECK(s.histogram == std::vector<long long>{0, 0, 0, 3});

  const auto t = summarize(records_of({0, 8}), 9);
  CHECK(t.mean == 4.0);
  CHECK(t.std == doctest::Approx(std::sqrt(32.0)).epsilon(1e-15));
  CHECK(t.median == 0.0);
}

TEST_CASE("summary excludes singular records") {
  auto r = records_of({1, 2, 5});
  r[2].singular = true;
  const auto s = summarize(r, 6);
  CHECK(s.count_used == 2);
  CHECK(s.count_excluded == 1);
  CHECK(s.mean == 1.5);
  r[0].singular = r[1].singular = true;
  try {
    summarize(r, 6);
    FAIL("expected EmptySample");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptySample);
  }
  CHECK_THROWS_AS(summarize({}, 3), Error);
}

TEST_CASE("model and ensemble compatibility") {
  for (int k = 0; k <= static_cast<int>(EnsembleKind::Wilkinson); ++k) {
    const auto kind = static_cast<EnsembleKind>(k);
    const int n = 16;
    CHECK_NOTHROW(config(Model::Naive, kind, n, 1, 0).validate());
    if (is_transform_ensemble(kind)) {
      CHECK_NOTHROW(config(Model::WorstCase, kind, n, 1, 0).validate());
      CHECK_NOTHROW(config(Model::MaxMove, kind, n, 1, 0).validate());
    } else {
      CHECK(config_error(config(Model::WorstCase, kind, n, 1, 0)) == Errc::ConfigError);
      CHECK(config_error(config(Model::MaxMove, kind, n, 1, 0)) == Errc::ConfigError);
    }
  }
  int transforms = 0;
  for (int k = 0; k <= static_cast<int>(EnsembleKind::Wilkinson); ++k)
    transforms += is_transform_ensemble(static_cast<EnsembleKind>(k));
  CHECK(transforms == 7);
  CHECK(config_error(config(Model::Naive, EnsembleKind::Ginibre, 16, 0, 0)) == Errc::ConfigError);
  CHECK(config_error(config(Model::Naive, EnsembleKind::WalshSigned, 12, 10, 0)) == Errc::ConfigError);
}

TEST_CASE("model names") {
  CHECK(parse_model("naive") == Model::Naive);
  CHECK(parse_model("worstcase") == Model::WorstCase);
  CHECK(parse_model("maxmove") == Model::MaxMove);
  CHECK(parse_model(to_string(Model::MaxMove)) == Model::MaxMove);
  CHECK_FALSE(parse_model("random").has_value());
}

TEST_CASE("Wilkinson single trial needs no pivoting") {
  const auto r = run_trial(config(Model::Naive, EnsembleKind::Wilkinson, 12, 1, 0), 0);
  CHECK(r.pivot_count == 0);
  CHECK(r.growth == 2048.0);
}

TEST_CASE("naive Haar-butterfly experiment at N = 16") {
  const auto cfg = config(Model::Naive, EnsembleKind::HaarButterflySS, 16, 10000, 71);
  const auto res = run_experiment(cfg);
  for (const auto& r : res.records) REQUIRE((r.pivot_count == 0 || r.pivot_count == 8));
  CHECK(std::abs(res.stats.mean - 7.5) <= 0.06);
  const auto law = theory_for(cfg);
  REQUIRE(law.has_value());
  const auto cmp = compare_to_theory(res.stats, *law);
  CHECK(std::abs(cmp.z_mean) < 3.0);
}

TEST_CASE("naive Walsh experiment has zero spread") {
  const auto res = run_experiment(config(Model::Naive, EnsembleKind::WalshSigned, 16, 500, 72));
  CHECK(res.stats.std == 0.0);
  CHECK(res.stats.mean == 6.0);
}

TEST_CASE("degenerate law comparison") {
  const auto s = summarize(records_of({0, 0, 0, 0}), 1);
  const auto cmp = compare_to_theory(s, pivot_law(1));
  CHECK(cmp.tv_distance == 0.0);
}

TEST_CASE("Ginibre n = 6 matches the exact law") {
  const auto cfg = config(Model::Naive, EnsembleKind::Ginibre, 6, 100000, 73);
  const auto res = run_experiment(cfg);
  CHECK(compare_to_theory(res.stats, *theory_for(cfg)).tv_distance < 0.01);
}

TEST_CASE("Haar orthogonal naive runs match the exact law") {
  for (int n : {16, 256}) {
    const auto cfg = config(Model::Naive, EnsembleKind::HaarOrthogonal, n, 10000, 74);
    const auto res = run_experiment(cfg);
    CAPTURE(n);
    CHECK(compare_to_theory(res.stats, *theory_for(cfg)).tv_distance < 0.05);
  }
}

TEST_CASE("worst-case Haar orthogonal experiment at N = 256") {
  const auto res = run_experiment(config(Model::WorstCase, EnsembleKind::HaarOrthogonal, 256, 10000, 75));
  CHECK(std::abs(res.stats.mean - 249.88) <= 0.07);
  CHECK(std::abs(res.stats.std - 2.13) <= 0.1);
}

TEST_CASE("max-movement inputs move every pivot before transformation") {
  const auto cfg = config(Model::MaxMove, EnsembleKind::HaarOrthogonal, 16, 20, 76);
  for (int t = 0; t < 20; ++t) {
    RandomStream rng = seed_stream(cfg.master_seed, static_cast<std::uint64_t>(t));
    const AnyMatrix pl = sample_pl({PlVariant::Max}, {XiLaw::UniformSym}, cfg.n, rng);
    CHECK(gepp_factor(std::get<RealMatrix>(pl)).pivot_count == cfg.n - 1);
    const auto r = run_trial(cfg, t);
    CHECK(r.pivot_count >= 0);
    CHECK(r.pivot_count <= cfg.n - 1);
  }
}

TEST_CASE("Bernoulli exclusions are accounted for") {
  const auto cfg = config(Model::Naive, EnsembleKind::Bernoulli, 16, 10000, 77);
  const auto res = run_experiment(cfg);
  CHECK(res.stats.count_used + res.stats.count_excluded == cfg.trials);
  CHECK(res.stats.count_excluded > 0);
  CHECK(res.stats.count_excluded / double(cfg.trials) < 0.02);
  for (const auto& r : res.records) {
    CHECK(r.pivot_count >= 0);
    CHECK(r.pivot_count <= 15);
  }
}

TEST_CASE("trial streams are deterministic and independent") {
  RandomStream a = seed_stream(78, 0), b = seed_stream(78, 0);
  for (int i = 0; i < 1000; ++i) REQUIRE(a() == b());
  RandomStream s0 = seed_stream(78, 0), s1 = seed_stream(78, 1);
  std::vector<double> x, y;
  for (int i = 0; i < 10000; ++i) {
    x.push_back(s0.uniform());
    y.push_back(s1.uniform());
  }
  CHECK(x != y);
  CHECK(pivotlab::testing::ks_two_sample(x, y) < pivotlab::testing::ks_critical(0.001, 5000.0));
}

TEST_CASE("results do not depend on the worker count") {
  for (auto model : {Model::Naive, Model::MaxMove}) {
    auto cfg = config(model, EnsembleKind::HaarOrthogonal, 16, 300, 79);
    const auto one = run_experiment(cfg, 1);
    const auto four = run_experiment(cfg, 4);
    CHECK(one.records == four.records);
    CHECK(records_csv(cfg, one.records) == records_csv(cfg, four.records));
  }
}

TEST_CASE("records CSV layout") {
  const auto cfg = config(Model::Naive, EnsembleKind::Ginibre, 4, 3, 80);
  const auto res = run_experiment(cfg, 1);
  const std::string csv = records_csv(cfg, res.records);
  CHECK(csv.rfind("# pivotlab ", 0) == 0);
  CHECK(csv.find("seed=80") != std::string::npos);
  CHECK(csv.find("\ntrial,pivot_count,growth,singular\n") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("config JSON round trip") {
  auto cfg = config(Model::MaxMove, EnsembleKind::DctSigned, 32, 123, 81);
  cfg.output_path = "out/dir";
  const auto back = config_from_json(config_to_json(cfg));
  CHECK(back.model == cfg.model);
  CHECK(back.ensemble == cfg.ensemble);
  CHECK(back.n == cfg.n);
  CHECK(back.trials == cfg.trials);
  CHECK(back.master_seed == cfg.master_seed);
  CHECK(back.output_path == cfg.output_path);

  const auto j = nlohmann::json::parse(R"({"model":"naive","ensemble":{"kind":"bernoulli","p":0.25},"n":8,"seed":5})");
  const auto c2 = config_from_json(j);
  CHECK(c2.ensemble.kind == EnsembleKind::Bernoulli);
  CHECK(c2.ensemble.p == 0.25);
  CHECK(c2.trials == 10000);
  try {
    config_from_json(nlohmann::json::parse(R"({"model":"sideways","ensemble":"ginibre","n":8})"));
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConfigError);
  }
}

TEST_CASE("experiment output files") {
  const auto dir = std::filesystem::temp_directory_path() / "pivotlab_test_experiment";
  std::filesystem::remove_all(dir);
  auto cfg = config(Model::Naive, EnsembleKind::GOE, 8, 50, 82);
  cfg.output_path = dir.string();
  const auto res = run_experiment(cfg, 2);
  write_experiment(cfg, res);
  CHECK(pivotlab::testing::read_file((dir / "records.csv").string()) == records_csv(cfg, res.records));
  const auto summary = nlohmann::json::parse(pivotlab::testing::read_file((dir / "summary.json").string()));
  CHECK(summary["count_used"].get<int>() + summary["count_excluded"].get<int>() == 50);
  CHECK(summary["theory"].is_null());
  std::filesystem::remove_all(dir);
}

TEST_CASE("format_double round trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 12345.678, -0.0}) CHECK(std::stod(format_double(x)) == x);
  CHECK(format_double(2.0) == "2");
}
