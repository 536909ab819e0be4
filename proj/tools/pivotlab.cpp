#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pivotlab/acceptance.hpp"
#include "pivotlab/ensembles.hpp"
#include "pivotlab/error.hpp"
#include "pivotlab/esd.hpp"
#include "pivotlab/experiments.hpp"
#include "pivotlab/gepp.hpp"
#include "pivotlab/matrix_io.hpp"
#include "pivotlab/permutation.hpp"
#include "pivotlab/stirling.hpp"

using nlohmann::json;
using namespace pivotlab;

namespace {

/// Bad flag values found after CLI11 has parsed; reported with exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EnsembleFlags {
  std::string kind;
  double p = 0.5;
  double alpha = 0.0;
  std::string xi = "uniform";
  std::string ordering = "sequency";

  void add_to(CLI::App* cmd, bool kind_required) {
    auto* e = cmd->add_option("--ensemble", kind, "Ensemble kind (ginibre, haar-orthogonal, walsh, plalpha, ...)");
    if (kind_required) e->required();
    cmd->add_option("--p", p, "Bernoulli success probability");
    cmd->add_option("--alpha", alpha, "Sparsity for plalpha");
    cmd->add_option("--xi", xi, "Entry law for PL kinds: uniform, disk, rademacher, normal");
    cmd->add_option("--ordering", ordering, "Walsh row ordering: sequency or natural");
  }

  EnsembleSpec resolve(EnsembleSpec spec, const CLI::App* cmd) const {
    if (cmd->count("--ensemble")) {
      const auto k = parse_ensemble_kind(kind);
      if (!k) throw UsageError("unknown ensemble '" + kind + "'");
      spec.kind = *k;
    }
    if (cmd->count("--p")) spec.p = p;
    if (cmd->count("--alpha")) spec.alpha = alpha;
    if (cmd->count("--xi")) {
      const auto x = parse_xi_law(xi);
      if (!x) throw UsageError("unknown xi law '" + xi + "'");
      spec.xi.law = *x;
    }
    if (cmd->count("--ordering")) {
      const auto o = parse_walsh_ordering(ordering);
      if (!o) throw UsageError("unknown ordering '" + ordering + "'");
      spec.ordering = *o;
    }
    return spec;
  }
};

json matrix_json(const auto& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if constexpr (is_complex_v<typename std::decay_t<decltype(m)>::Scalar>) {
        row.push_back({m(i, j).real(), m(i, j).imag()});
      } else {
        row.push_back(m(i, j));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(Errc::IoError, "cannot write " + out);
  f << text;
}

Metadata ensemble_metadata(const EnsembleSpec& spec, int n, std::uint64_t seed) {
  Metadata md{{"ensemble", std::string(to_string(spec.kind))},
              {"n", std::to_string(n)},
              {"seed", std::to_string(seed)},
              {"version", PIVOTLAB_VERSION}};
  if (spec.kind == EnsembleKind::Bernoulli) md["p"] = format_double(spec.p);
  if (spec.kind == EnsembleKind::PLalpha) md["alpha"] = format_double(spec.alpha);
  if (spec.kind == EnsembleKind::PLmax || spec.kind == EnsembleKind::PL || spec.kind == EnsembleKind::PLalpha)
    md["xi"] = std::string(to_string(spec.xi.law));
  if (spec.kind == EnsembleKind::WalshSigned) md["ordering"] = std::string(to_string(spec.ordering));
  return md;
}

int run(int argc, char** argv) {
  CLI::App app{"Partial pivoting statistics over random matrix ensembles"};
  app.set_version_flag("--version", PIVOTLAB_VERSION);
  app.require_subcommand(1);

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "Draw one matrix and write it as CSV");
  EnsembleFlags sample_ens;
  int sample_n = 0;
  std::uint64_t sample_seed = 0;
  std::string sample_out;
  sample_ens.add_to(sample_cmd, true);
  sample_cmd->add_option("--n", sample_n, "Dimension")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", sample_seed, "Seed");
  sample_cmd->add_option("--out", sample_out, "Output CSV path (stdout when omitted)");

  // factor
  auto* factor_cmd = app.add_subcommand("factor", "Partial pivoting LU of a matrix CSV, as JSON");
  std::string factor_in, factor_out;
  factor_cmd->add_option("--in", factor_in, "Input matrix CSV")->required();
  factor_cmd->add_option("--out", factor_out, "Output JSON path (stdout when omitted)");

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Run a Monte Carlo pivot-count experiment");
  EnsembleFlags exp_ens;
  std::string exp_model, exp_config, exp_out;
  int exp_n = 0, exp_trials = 10000, exp_threads = 0;
  std::uint64_t exp_seed = 0;
  exp_cmd->add_option("--config", exp_config, "JSON config with model, ensemble, n, trials, seed, out");
  exp_cmd->add_option("--model", exp_model, "naive, worstcase or maxmove");
  exp_ens.add_to(exp_cmd, false);
  exp_cmd->add_option("--n", exp_n, "Dimension")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--trials", exp_trials, "Number of trials")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--seed", exp_seed, "Master seed");
  exp_cmd->add_option("--threads", exp_threads, "Worker threads (0: automatic)")->check(CLI::NonNegativeNumber);
  exp_cmd->add_option("--out", exp_out, "Output directory for records.csv and summary.json");

  // stirling
  auto* stir_cmd = app.add_subcommand("stirling", "Print |s(n,k)| and P(cycles = k) as CSV");
  int stir_n = 0;
  bool stir_upto = false;
  stir_cmd->add_option("--n", stir_n, "Order")->required()->check(CLI::PositiveNumber);
  stir_cmd->add_flag("--upto", stir_upto, "Print every row 1..n");

  // configs
  auto* conf_cmd = app.add_subcommand("configs", "Butterfly pivot-step configurations and their probabilities");
  int conf_N = 0;
  conf_cmd->add_option("--N", conf_N, "Order, a power of two")->required();

  // esd
  auto* esd_cmd = app.add_subcommand("esd", "Scaled eigenvalues of one PL draw");
  std::string esd_variant = "alpha", esd_xi = "uniform", esd_out;
  double esd_alpha = 0.5;
  int esd_n = 0, esd_grid = 50;
  std::uint64_t esd_seed = 0;
  esd_cmd->add_option("--variant", esd_variant, "max, uniform or alpha");
  esd_cmd->add_option("--alpha", esd_alpha, "Sparsity for the alpha variant");
  esd_cmd->add_option("--xi", esd_xi, "Entry law: uniform, disk, rademacher, normal");
  esd_cmd->add_option("--n", esd_n, "Dimension")->required()->check(CLI::Range(2, 2048));
  esd_cmd->add_option("--seed", esd_seed, "Seed");
  esd_cmd->add_option("--grid", esd_grid, "Radial profile grid points")->check(CLI::PositiveNumber);
  esd_cmd->add_option("--out", esd_out, "Output directory for eigenvalues.csv and esd.json")->required();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance criteria");
  std::vector<int> verify_only;
  int verify_threads = 0;
  verify_cmd->add_option("--only", verify_only, "Criterion ids to run");
  verify_cmd->add_option("--threads", verify_threads, "Worker threads (0: automatic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*sample_cmd) {
      const EnsembleSpec spec = sample_ens.resolve({}, sample_cmd);
      RandomStream rng = seed_stream(sample_seed, 0);
      const AnyMatrix m = sample(spec, sample_n, rng);
      emit(sample_out, matrix_to_csv(m, ensemble_metadata(spec, sample_n, sample_seed)));
    } else if (*factor_cmd) {
      const MatrixFile file = read_matrix_csv(factor_in);
      json j;
      j["version"] = PIVOTLAB_VERSION;
      j["input"] = factor_in;
      const auto seed = file.metadata.find("seed");
      j["seed"] = seed == file.metadata.end() ? json(nullptr) : json(seed->second);
      j["field"] = std::string(field_name(file.matrix));
      j["n"] = rows_of(file.matrix);
      std::visit(
          [&](const auto& a) {
            const auto f = gepp_factor(a);
            j["perm"] = f.perm.image();
            j["pivots"] = f.pivots.indices;
            j["pivot_count"] = f.pivot_count;
            j["growth"] = f.growth;
            j["singular"] = f.singular;
            j["lower"] = matrix_json(f.lower);
            j["upper"] = matrix_json(f.upper);
          },
          file.matrix);
      emit(factor_out, j.dump(2) + "\n");
    } else if (*exp_cmd) {
      ExperimentConfig cfg;
      if (!exp_config.empty()) {
        std::ifstream f(exp_config);
        if (!f) throw Error(Errc::IoError, "cannot read " + exp_config);
        json j;
        try {
          f >> j;
        } catch (const json::exception& ex) {
          throw Error(Errc::ConfigError, std::string("bad config JSON: ") + ex.what());
        }
        cfg = config_from_json(j);
      } else if (!exp_cmd->count("--model") || !exp_cmd->count("--ensemble") || !exp_cmd->count("--n")) {
        throw UsageError("experiment needs --config or --model, --ensemble and --n");
      }
      if (exp_cmd->count("--model")) {
        const auto m = parse_model(exp_model);
        if (!m) throw UsageError("unknown model '" + exp_model + "'");
        cfg.model = *m;
      }
      cfg.ensemble = exp_ens.resolve(cfg.ensemble, exp_cmd);
      if (exp_cmd->count("--n")) cfg.n = exp_n;
      if (exp_cmd->count("--trials")) cfg.trials = exp_trials;
      if (exp_cmd->count("--seed")) cfg.master_seed = exp_seed;
      if (exp_cmd->count("--out")) cfg.output_path = exp_out;
      const auto result = run_experiment(cfg, exp_threads);
      if (!cfg.output_path.empty()) write_experiment(cfg, result);
      std::cout << summary_to_json(cfg, result.stats).dump(2) << "\n";
    } else if (*stir_cmd) {
      const StirlingTable t(stir_n);
      std::cout << "n,k,numerator,pmf\n";
      for (int n = stir_upto ? 1 : stir_n; n <= stir_n; ++n) {
        const auto d = stirling1_distribution(n);
        for (int k = 1; k <= n; ++k)
          std::cout << n << ',' << k << ',' << t(n, k).str() << ','
                    << format_double(d.pmf[static_cast<std::size_t>(k - 1)]) << '\n';
      }
    } else if (*conf_cmd) {
      if (log2_exact(conf_N) < 1) throw Error(Errc::InvalidInput, "--N must be a power of two >= 2");
      std::cout << "mask,numerator,denominator\n";
      for (const auto& c : pivot_configurations(conf_N))
        std::cout << c.mask() << ',' << c.numerator << ',' << c.denominator << '\n';
    } else if (*esd_cmd) {
      PlSpec pl;
      if (esd_variant == "max") {
        pl.variant = PlVariant::Max;
      } else if (esd_variant == "uniform") {
        pl.variant = PlVariant::Uniform;
      } else if (esd_variant == "alpha") {
        pl.variant = PlVariant::Alpha;
        pl.alpha = esd_alpha;
      } else {
        throw UsageError("unknown variant '" + esd_variant + "'");
      }
      const auto xi = parse_xi_law(esd_xi);
      if (!xi) throw UsageError("unknown xi law '" + esd_xi + "'");
      RandomStream rng = seed_stream(esd_seed, 0);
      const auto s = scaled_esd(pl, XiSpec{*xi}, esd_n, rng);
      const auto profile = radial_profile(s, esd_grid);

      namespace fs = std::filesystem;
      fs::create_directories(esd_out);
      std::ostringstream csv;
      csv << "# pivotlab " << PIVOTLAB_VERSION << " variant=" << esd_variant << " seed=" << esd_seed << "\n";
      csv << "re,im\n";
      for (const auto& l : s.eigenvalues) csv << format_double(l.real()) << ',' << format_double(l.imag()) << '\n';
      emit((fs::path(esd_out) / "eigenvalues.csv").string(), csv.str());
      json j;
      j["version"] = PIVOTLAB_VERSION;
      j["seed"] = esd_seed;
      j["variant"] = esd_variant;
      j["n"] = s.n;
      j["alpha"] = s.alpha;
      j["xi"] = std::string(to_string(s.xi.law));
      j["scale"] = s.scale;
      j["radial_profile"] = {{"radii", profile.radii}, {"cdf", profile.cdf}};
      emit((fs::path(esd_out) / "esd.json").string(), j.dump(2) + "\n");
    } else if (*verify_cmd) {
      bool all = true;
      for (const int id : verify_only.empty() ? acceptance_ids() : verify_only) {
        const auto r = run_criterion(id, verify_threads);
        std::cout << format_result(r) << std::endl;
        all = all && r.passed;
      }
      return all ? 0 : 2;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
