// arxid: closed-loop ARX identification experiments.
//
//   arxid single     [--config cfg.json] [--out dir] [--seed s] [--na k --nb k]
//   arxid montecarlo [--config cfg.json] [--out dir] [--seed s] [--runs k] [--na k --nb k]
//   arxid bode       [--config cfg.json] [--out dir] [--tf G,H,...]
//
// Without --config the built-in example system is used.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "arxid/error.hpp"
#include "arxid/experiment.hpp"

namespace {

struct Overrides {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> runs;
  std::optional<std::size_t> na;
  std::optional<std::size_t> nb;
  std::optional<std::size_t> samples;
  std::optional<unsigned> workers;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON experiment configuration")->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "output directory (overrides config output_dir)");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--na", o.na, "order of A");
  cmd->add_option("--nb", o.nb, "order of B");
  cmd->add_option("--N", o.samples, "samples per run");
  cmd->add_option("--workers", o.workers, "worker threads");
}

arxid::ExperimentConfig resolve(const Overrides& o, arxid::ExperimentConfig cfg) {
  if (!o.config.empty()) cfg = arxid::load_config(o.config);
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.runs) cfg.runs = *o.runs;
  if (o.na) cfg.orders.n_a = *o.na;
  if (o.nb) cfg.orders.n_b = *o.nb;
  if (o.samples) cfg.N = *o.samples;
  if (o.workers) cfg.workers = *o.workers;
  cfg.validate();
  return cfg;
}

int cmd_single(const Overrides& o) {
  const auto cfg = resolve(o, arxid::default_single_config());
  const auto result = arxid::run_single(cfg);
  arxid::write_single_artifacts(cfg, result, cfg.output_dir);
  const auto& out = result.outcome;
  fmt::print("seed        {}\n", out.seed);
  fmt::print("J_hat       {:.6f}\n", out.estimate.J_hat);
  fmt::print("gain        {:.6f}\n", out.model.gain);
  fmt::print("lambda_hat  {:.6f}\n", out.model.lambda_hat);
  for (const auto& z : out.model.A_roots.subset(arxid::RootClass::kAntiStable).values())
    fmt::print("A_a root    {:+.6f} {:+.6f}i\n", z.real(), z.imag());
  fmt::print("max |G| err {:.4f} dB, max |H| err {:.4f} dB\n",
             result.comparison.max_abs_G_db_error(), result.comparison.max_abs_H_db_error());
  fmt::print("artifacts   {}\n", cfg.output_dir);
  return 0;
}

int cmd_montecarlo(const Overrides& o) {
  const auto cfg = resolve(o, arxid::default_montecarlo_config());
  const auto summary = arxid::run_montecarlo(cfg);
  arxid::write_montecarlo_artifacts(summary, cfg.output_dir);
  fmt::print("runs {} (failed {}), n_a = {}, n_b = {}, N = {}\n", summary.runs.size(),
             summary.failed, cfg.orders.n_a, cfg.orders.n_b, cfg.N);
  for (const auto& st : summary.antistable)
    fmt::print("unstable root  mean {:+.5f} {:+.5f}i  std {:.5f} {:.5f}\n", st.mean_re,
               st.mean_im, st.std_re, st.std_im);
  fmt::print("stable cloud std {:.5f}, unstable pooled std {:.5f}\n", summary.stable_pooled_std,
             summary.antistable_pooled_std);
  fmt::print("lambda_hat mean {:.5f} std {:.5f}\n", summary.lambda_mean, summary.lambda_std);
  fmt::print("artifacts   {}\n", cfg.output_dir);
  return 0;
}

int cmd_bode(const Overrides& o, const std::vector<std::string>& names) {
  const auto cfg = resolve(o, arxid::default_single_config());
  const auto curves = arxid::run_bode(cfg, names, cfg.output_dir);
  for (const auto& c : curves) fmt::print("wrote bode_{}.csv\n", c.name);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-loop ARX identification of possibly unstable plants"};
  app.require_subcommand(1);

  Overrides single_opts;
  auto* single = app.add_subcommand("single", "one simulate/estimate/recover run with Bode data");
  add_common(single, single_opts);

  Overrides mc_opts;
  auto* mc = app.add_subcommand("montecarlo", "repeated runs and root statistics");
  add_common(mc, mc_opts);
  mc->add_option("--runs", mc_opts.runs, "number of Monte Carlo runs");

  Overrides bode_opts;
  std::vector<std::string> names{"G", "H"};
  auto* bode = app.add_subcommand("bode", "Bode data of the configured system");
  add_common(bode, bode_opts);
  bode->add_option("--tf", names, "transfer functions: G,H,S,GS,HS,KHS,allpass")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*single) return cmd_single(single_opts);
    if (*mc) return cmd_montecarlo(mc_opts);
    if (*bode) return cmd_bode(bode_opts, names);
  } catch (const arxid::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
  return 1;
}
