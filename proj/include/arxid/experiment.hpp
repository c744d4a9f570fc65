#ifndef ARXID_EXPERIMENT_HPP
#define ARXID_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "arxid/arx.hpp"
#include "arxid/ltisys.hpp"
#include "arxid/recover.hpp"
#include "arxid/simulate.hpp"

namespace arxid {

struct GridSpec {
  double omega_min = 1e-2;
  double omega_max = 3.141592653589793;
  std::size_t points = 200;
  bool log_spaced = true;

  FreqGrid build() const;
};

struct ExperimentConfig {
  SystemSpec system = example_system();
  std::size_t N = 100000;
  ArxOrders orders{15, 15};
  std::size_t runs = 50;
  std::uint64_t master_seed = 1;
  GridSpec grid;
  std::size_t warmup = kDefaultWarmup;
  std::string output_dir = "out";
  unsigned workers = 1;

  void validate() const;
};

/// Single-run defaults: N = 100000, n_a = n_b = 15.
ExperimentConfig default_single_config();
/// Monte Carlo defaults: N = 10000, n_a = n_b = 15, 50 runs.
ExperimentConfig default_montecarlo_config();

void to_json(nlohmann::json& j, const ExperimentConfig& cfg);
void from_json(const nlohmann::json& j, ExperimentConfig& cfg);
ExperimentConfig load_config(const std::filesystem::path& path);

/// simulate -> estimate -> recover for one run index. Library errors are
/// captured in `error` instead of propagating.
struct RunOutcome {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
  ArxEstimate estimate;
  RecoveredModel model;
};

/// Run `run` uses seed derive_seed(master_seed, run).
RunOutcome run_pipeline(const ExperimentConfig& cfg, std::size_t run);

struct SingleResult {
  RunOutcome outcome;
  ModelComparison comparison;
};

/// Run 0 of the configuration; throws if the run fails.
SingleResult run_single(const ExperimentConfig& cfg);

/// Writes summary.json, comparison.csv and bode_{G,G_hat,H,H_hat,H_uncorr}.csv.
void write_single_artifacts(const ExperimentConfig& cfg, const SingleResult& result,
                            const std::filesystem::path& dir);

nlohmann::json single_summary_json(const ExperimentConfig& cfg, const SingleResult& result);

struct RootStats {
  double mean_re = 0.0;
  double std_re = 0.0;
  double mean_im = 0.0;
  double std_im = 0.0;
  std::size_t samples = 0;
};

/// Pooled statistics over Monte Carlo runs.
///
/// Anti-stable roots are tracked by slot. K is the modal anti-stable count
/// over successful runs. Each run with at least K anti-stable roots keeps its
/// K largest in modulus, sorted by descending imaginary part, then descending
/// real part; slot k collects the k-th of these. Runs with another count are
/// reported in mismatched_runs; those with fewer than K are left out.
/// Stable roots are pooled into one cloud; its spread is
/// sqrt((var re + var im) / 2). Standard deviations use n - 1 and are zero for
/// a single sample.
struct MonteCarloSummary {
  ArxOrders orders;
  std::size_t N = 0;
  std::uint64_t master_seed = 0;
  std::vector<RunOutcome> runs;
  std::size_t failed = 0;
  std::size_t antistable_count = 0;  // modal count per run
  std::size_t mismatched_runs = 0;   // successful runs whose count differs from K
  std::vector<RootStats> antistable;
  double antistable_pooled_std = 0.0;
  double stable_pooled_std = 0.0;
  double lambda_mean = 0.0;
  double lambda_std = 0.0;
  double J_mean = 0.0;
  double J_std = 0.0;
};

/// Runs cfg.runs pipelines on cfg.workers threads. Results are ordered by run
/// index. Throws RunFailures when more than 10% of runs fail.
MonteCarloSummary run_montecarlo(const ExperimentConfig& cfg);

/// Recomputes the pooled statistics from summary.runs.
void summarize(MonteCarloSummary& summary);

nlohmann::json montecarlo_summary_json(const MonteCarloSummary& summary);

/// CSV "run,re,im,class" with every root of every successful run's A.
void write_poles_csv(const MonteCarloSummary& summary, std::ostream& os);

/// Writes poles_n{n_a}.csv and mc_summary.json.
void write_montecarlo_artifacts(const MonteCarloSummary& summary,
                                const std::filesystem::path& dir);

struct BodeCurve {
  std::string name;
  std::vector<double> omega;
  std::vector<double> mag_db;
  std::vector<double> phase_deg;  // unwrapped along the grid
};

BodeCurve bode_curve(std::string name, const RationalTF& tf, const FreqGrid& grid);

/// CSV "omega,mag_db,phase_deg".
void write_csv(const BodeCurve& curve, std::ostream& os);

/// Named transfer functions of the configured system: G, H, S, GS, HS, KHS and
/// allpass (F_a / F_a*).
RationalTF named_transfer_function(const SystemSpec& spec, const std::string& name);

/// Writes bode_<name>.csv for each requested name.
std::vector<BodeCurve> run_bode(const ExperimentConfig& cfg, const std::vector<std::string>& names,
                                const std::filesystem::path& dir);

}  // namespace arxid

#endif  // ARXID_EXPERIMENT_HPP
