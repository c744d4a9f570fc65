#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "arxid/error.hpp"
#include "arxid/experiment.hpp"

namespace arxid {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("arxid_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_mc(std::size_t runs, unsigned workers) {
  ExperimentConfig cfg = default_montecarlo_config();
  cfg.N = 3000;
  cfg.orders = {8, 8};
  cfg.runs = runs;
  cfg.workers = workers;
  cfg.master_seed = 99;
  return cfg;
}

TEST(Config, Defaults) {
  const ExperimentConfig single = default_single_config();
  EXPECT_EQ(single.N, 100000u);
  EXPECT_EQ(single.orders.n_a, 15u);
  EXPECT_EQ(single.orders.n_b, 15u);
  const ExperimentConfig mc = default_montecarlo_config();
  EXPECT_EQ(mc.N, 10000u);
  EXPECT_EQ(mc.runs, 50u);
  EXPECT_EQ(mc.grid.points, 200u);
  EXPECT_DOUBLE_EQ(mc.grid.omega_min, 1e-2);
}

TEST(Config, JsonRoundTrip) {
  ExperimentConfig cfg = default_single_config();
  cfg.system.F = Poly{1.0, -0.5, 0.3};
  cfg.system.K = RationalTF(Poly{0.4}, Poly{1.0, -0.2});
  cfg.master_seed = 1234567890123ULL;
  cfg.orders = {7, 9};
  cfg.grid.log_spaced = false;
  const nlohmann::json j = cfg;
  const ExperimentConfig back = j.get<ExperimentConfig>();
  EXPECT_EQ(nlohmann::json(back), j);
  EXPECT_EQ(back.master_seed, cfg.master_seed);
  EXPECT_EQ(back.system.K.den(), cfg.system.K.den());
  EXPECT_EQ(back.orders.n_b, 9u);
}

TEST(Config, LoadFromFile) {
  const fs::path dir = scratch("load");
  std::ofstream(dir / "cfg.json") << R"({"N": 20000, "n_a": 10, "n_b": 12, "master_seed": 5,
    "system": {"L": [0, 1, -1.7], "F": [1, -2, 2], "C": [1, 0.2], "D": [1, -0.9],
               "K_num": [1], "K_den": [1], "lambda_e": 1, "lambda_r": 1}})";
  const ExperimentConfig cfg = load_config(dir / "cfg.json");
  EXPECT_EQ(cfg.N, 20000u);
  EXPECT_EQ(cfg.orders.n_a, 10u);
  EXPECT_EQ(cfg.orders.n_b, 12u);
  EXPECT_EQ(cfg.master_seed, 5u);
  EXPECT_EQ(cfg.system.F, (Poly{1.0, -2.0, 2.0}));
  EXPECT_THROW(load_config(dir / "missing.json"), Error);
}

TEST(Config, Validation) {
  ExperimentConfig cfg = default_single_config();
  cfg.runs = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = default_single_config();
  cfg.N = 60;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = default_single_config();
  cfg.grid.omega_max = 4.0;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Pipeline, SeedDerivation) {
  const ExperimentConfig cfg = small_mc(1, 1);
  const RunOutcome a = run_pipeline(cfg, 3);
  EXPECT_EQ(a.seed, derive_seed(cfg.master_seed, 3));
  EXPECT_FALSE(a.failed);
  EXPECT_EQ(run_pipeline(cfg, 3).estimate.J_hat, a.estimate.J_hat);
}

TEST(Pipeline, FailureIsCaptured) {
  ExperimentConfig cfg = small_mc(1, 1);
  cfg.system.K = RationalTF(Poly{3.0});  // not stabilizing
  const RunOutcome out = run_pipeline(cfg, 0);
  EXPECT_TRUE(out.failed);
  EXPECT_NE(out.error.find("UnstableClosedLoop"), std::string::npos);
  EXPECT_THROW(run_montecarlo(cfg), Error);
}

TEST(Single, ArtifactsWritten) {
  ExperimentConfig cfg = default_single_config();
  cfg.N = 20000;
  const SingleResult res = run_single(cfg);
  const fs::path dir = scratch("single");
  write_single_artifacts(cfg, res, dir);
  for (const char* f : {"summary.json", "comparison.csv", "bode_G.csv", "bode_G_hat.csv",
                        "bode_H.csv", "bode_H_hat.csv", "bode_H_uncorr.csv"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  for (const char* key : {"J_hat", "lambda_hat", "gain", "A_a_roots"})
    EXPECT_TRUE(summary.contains(key)) << key;
  EXPECT_EQ(summary["A_a_roots"].size(), 2u);
  EXPECT_DOUBLE_EQ(summary["lambda_hat"].get<double>() * summary["gain"].get<double>(),
                   summary["J_hat"].get<double>());
}

TEST(Pipeline, ZeroNoiseFitsExactly) {
  ExperimentConfig cfg = default_single_config();
  cfg.system.lambda_e = 0.0;
  cfg.N = 5000;
  cfg.orders = {2, 2};
  const RunOutcome out = run_pipeline(cfg, 0);
  ASSERT_FALSE(out.failed) << out.error;
  EXPECT_LT(out.estimate.J_hat, 1e-10);
  // Larger orders make the noise-free regressors exactly collinear.
  cfg.orders = {6, 6};
  const RunOutcome over = run_pipeline(cfg, 0);
  EXPECT_TRUE(over.failed);
  EXPECT_NE(over.error.find("RankDeficient"), std::string::npos) << over.error;
}

TEST(Single, UncorrectedNoiseModelSitsSixDbLow) {
  const SingleResult res = run_single(default_single_config());
  const ModelComparison& cmp = res.comparison;
  for (std::size_t k = 0; k < cmp.omega.size(); ++k) {
    // Exactly -10 log10(gain) against the corrected model.
    EXPECT_NEAR(cmp.mag_H_uncorr_db[k] - cmp.mag_H_hat_db[k],
                -10.0 * std::log10(res.outcome.model.gain), 1e-9);
    EXPECT_NEAR(cmp.mag_H_uncorr_db[k] - cmp.mag_H_hat_db[k], -6.02, 0.1);
  }
}

TEST(MonteCarlo, SingleRunSummaryMatchesRun) {
  const ExperimentConfig cfg = small_mc(1, 1);
  const MonteCarloSummary s = run_montecarlo(cfg);
  const RunOutcome run = run_pipeline(cfg, 0);
  ASSERT_EQ(s.runs.size(), 1u);
  EXPECT_EQ(s.lambda_mean, run.model.lambda_hat);
  EXPECT_EQ(s.J_mean, run.estimate.J_hat);
  EXPECT_EQ(s.lambda_std, 0.0);
  EXPECT_EQ(s.J_std, 0.0);
  for (const auto& slot : s.antistable) {
    EXPECT_EQ(slot.std_re, 0.0);
    EXPECT_EQ(slot.std_im, 0.0);
  }
}

TEST(MonteCarlo, SummaryIsRecomputable) {
  MonteCarloSummary s = run_montecarlo(small_mc(6, 2));
  const nlohmann::json before = montecarlo_summary_json(s);
  s.lambda_mean = s.J_mean = 0.0;
  s.antistable.clear();
  summarize(s);
  EXPECT_EQ(montecarlo_summary_json(s), before);
  EXPECT_EQ(s.antistable_count, 2u);
  ASSERT_EQ(s.antistable.size(), 2u);
  EXPECT_GT(s.antistable[0].mean_im, 0.0);
  EXPECT_LT(s.antistable[1].mean_im, 0.0);
}

TEST(MonteCarlo, UnstableRootMeanIndependentOfSeed) {
  for (std::uint64_t master : {1u, 2u, 3u, 4u, 5u}) {
    ExperimentConfig cfg = default_montecarlo_config();
    cfg.master_seed = master;
    cfg.workers = 4;
    const MonteCarloSummary s = run_montecarlo(cfg);
    ASSERT_EQ(s.antistable.size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) {
      const RootStats& st = s.antistable[k];
      const double n = std::sqrt(double(st.samples));
      EXPECT_LT(std::abs(st.mean_re - 1.0), 3.0 * st.std_re / n) << master;
      EXPECT_LT(std::abs(std::abs(st.mean_im) - 1.0), 3.0 * st.std_im / n) << master;
    }
  }
}

TEST(MonteCarlo, ArtifactsIndependentOfWorkerCount) {
  const fs::path d1 = scratch("mc_w1");
  const fs::path d4 = scratch("mc_w4");
  write_montecarlo_artifacts(run_montecarlo(small_mc(8, 1)), d1);
  write_montecarlo_artifacts(run_montecarlo(small_mc(8, 4)), d4);
  for (const char* f : {"poles_n8.csv", "mc_summary.json"}) {
    ASSERT_TRUE(fs::exists(d1 / f)) << f;
    EXPECT_EQ(slurp(d1 / f), slurp(d4 / f)) << f;
  }
  const std::string poles = slurp(d1 / "poles_n8.csv");
  EXPECT_EQ(poles.substr(0, poles.find('\n')), "run,re,im,class");
}

TEST(MonteCarlo, SingleArtifactsReproducible) {
  ExperimentConfig cfg = default_single_config();
  cfg.N = 5000;
  const fs::path a = scratch("rep_a");
  const fs::path b = scratch("rep_b");
  write_single_artifacts(cfg, run_single(cfg), a);
  write_single_artifacts(cfg, run_single(cfg), b);
  for (const auto& entry : fs::directory_iterator(a))
    EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path();
}

TEST(Bode, IdentityIsFlat) {
  const BodeCurve c = bode_curve("one", RationalTF::identity(), GridSpec{}.build());
  ASSERT_EQ(c.omega.size(), 200u);
  for (std::size_t k = 0; k < c.omega.size(); ++k) {
    EXPECT_EQ(c.mag_db[k], 0.0);
    EXPECT_EQ(c.phase_deg[k], 0.0);
  }
}

TEST(Bode, NoiseModelLowFrequency) {
  GridSpec g;
  g.omega_min = 1e-4;
  const BodeCurve c = bode_curve("H", make_H(example_system()), g.build());
  EXPECT_NEAR(c.mag_db.front(), 21.58, 0.01);
}

TEST(Bode, AllpassIsSixDb) {
  const RationalTF ap = named_transfer_function(example_system(), "allpass");
  const BodeCurve c = bode_curve("allpass", ap, GridSpec{}.build());
  for (double m : c.mag_db) EXPECT_NEAR(m, 6.0206, 1e-4);
}

TEST(Bode, PhaseIsUnwrapped) {
  // Pure delay q^-3: phase -3 omega, crossing -180 degrees inside the grid.
  const BodeCurve c = bode_curve("d", RationalTF(Poly{0.0, 0.0, 0.0, 1.0}), GridSpec{}.build());
  for (std::size_t k = 0; k < c.omega.size(); ++k)
    EXPECT_NEAR(c.phase_deg[k], -3.0 * c.omega[k] * 180.0 / 3.141592653589793, 1e-9);
}

TEST(Bode, RunWritesNamedFiles) {
  ExperimentConfig cfg = default_single_config();
  const fs::path dir = scratch("bode");
  run_bode(cfg, {"G", "KHS"}, dir);
  EXPECT_TRUE(fs::exists(dir / "bode_G.csv"));
  EXPECT_TRUE(fs::exists(dir / "bode_KHS.csv"));
  const std::string text = slurp(dir / "bode_G.csv");
  EXPECT_EQ(text.substr(0, text.find('\n')), "omega,mag_db,phase_deg");
  EXPECT_THROW(named_transfer_function(cfg.system, "nope"), Error);
}

}  // namespace
}  // namespace arxid
