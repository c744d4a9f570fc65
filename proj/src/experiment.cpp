#include "arxid/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "arxid/error.hpp"
#include "arxid/serialize.hpp"

namespace arxid {

using nlohmann::json;

FreqGrid GridSpec::build() const {
  return log_spaced ? FreqGrid::log_spaced(omega_min, omega_max, points)
                    : FreqGrid::linear(omega_min, omega_max, points);
}

void ExperimentConfig::validate() const {
  arxid::validate(system);
  if (runs < 1) throw Error(ErrorCode::kInvalidArgument, "runs must be at least 1");
  if (orders.n_a < 1 || orders.n_b < 1)
    throw Error(ErrorCode::kInvalidArgument, "ARX orders must be at least 1");
  if (N <= 2 * orders.parameters())
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("N = {} must exceed 2 (n_a + n_b) = {}", N, 2 * orders.parameters()));
  if (!(grid.omega_min > 0.0) || grid.omega_max > std::numbers::pi ||
      !(grid.omega_max > grid.omega_min))
    throw Error(ErrorCode::kInvalidArgument, "frequency range must lie within (0, pi]");
  if (workers < 1) throw Error(ErrorCode::kInvalidArgument, "workers must be at least 1");
}

ExperimentConfig default_single_config() { return ExperimentConfig{}; }

ExperimentConfig default_montecarlo_config() {
  ExperimentConfig cfg;
  cfg.N = 10000;
  return cfg;
}

void to_json(json& j, const ExperimentConfig& cfg) {
  j = json{{"system", cfg.system},
           {"N", cfg.N},
           {"n_a", cfg.orders.n_a},
           {"n_b", cfg.orders.n_b},
           {"runs", cfg.runs},
           {"master_seed", cfg.master_seed},
           {"warmup", cfg.warmup},
           {"grid",
            {{"omega_min", cfg.grid.omega_min},
             {"omega_max", cfg.grid.omega_max},
             {"points", cfg.grid.points},
             {"log_spaced", cfg.grid.log_spaced}}},
           {"output_dir", cfg.output_dir},
           {"workers", cfg.workers}};
}

void from_json(const json& j, ExperimentConfig& cfg) {
  cfg = ExperimentConfig{};
  if (j.contains("system")) cfg.system = j.at("system").get<SystemSpec>();
  cfg.N = j.value("N", cfg.N);
  cfg.orders.n_a = j.value("n_a", cfg.orders.n_a);
  cfg.orders.n_b = j.value("n_b", cfg.orders.n_b);
  cfg.runs = j.value("runs", cfg.runs);
  cfg.master_seed = j.value("master_seed", cfg.master_seed);
  cfg.warmup = j.value("warmup", cfg.warmup);
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    cfg.grid.omega_min = g.value("omega_min", cfg.grid.omega_min);
    cfg.grid.omega_max = g.value("omega_max", cfg.grid.omega_max);
    cfg.grid.points = g.value("points", cfg.grid.points);
    cfg.grid.log_spaced = g.value("log_spaced", cfg.grid.log_spaced);
  }
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  cfg.workers = j.value("workers", cfg.workers);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open config " + path.string());
  try {
    return json::parse(in).get<ExperimentConfig>();
  } catch (const json::exception& err) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("bad config {}: {}", path.string(), err.what()));
  }
}

RunOutcome run_pipeline(const ExperimentConfig& cfg, std::size_t run) {
  RunOutcome out;
  out.run = run;
  out.seed = derive_seed(cfg.master_seed, run);
  try {
    const SignalRecord rec = simulate_closed_loop(cfg.system, cfg.N, out.seed, cfg.warmup);
    out.estimate = estimate_arx(rec.y, rec.u, cfg.orders);
    out.model = recover(out.estimate);
  } catch (const Error& err) {
    out.failed = true;
    out.error = err.what();
  }
  return out;
}

SingleResult run_single(const ExperimentConfig& cfg) {
  cfg.validate();
  SingleResult result;
  result.outcome = run_pipeline(cfg, 0);
  if (result.outcome.failed)
    throw Error(ErrorCode::kRunFailures, "single run failed: " + result.outcome.error);
  result.comparison = compare_models(result.outcome.model, cfg.system, cfg.grid.build());
  return result;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  return os;
}

void write_json(const json& j, const std::filesystem::path& path) {
  auto os = open_for_write(path);
  os << j.dump(2) << '\n';
}

void write_curve(const BodeCurve& curve, const std::filesystem::path& dir) {
  auto os = open_for_write(dir / ("bode_" + curve.name + ".csv"));
  write_csv(curve, os);
}

json root_list(const RootSet& set) {
  json out = json::array();
  for (const auto& z : set.values()) out.push_back({{"re", z.real()}, {"im", z.imag()}});
  return out;
}

}  // namespace

json single_summary_json(const ExperimentConfig& cfg, const SingleResult& result) {
  const RunOutcome& o = result.outcome;
  return json{{"J_hat", o.estimate.J_hat},
              {"lambda_hat", o.model.lambda_hat},
              {"gain", o.model.gain},
              {"A_a_roots", root_list(o.model.A_roots.subset(RootClass::kAntiStable))},
              {"seed", o.seed},
              {"N", cfg.N},
              {"n_a", cfg.orders.n_a},
              {"n_b", cfg.orders.n_b},
              {"max_G_db_error", result.comparison.max_abs_G_db_error()},
              {"max_H_db_error", result.comparison.max_abs_H_db_error()},
              {"estimate", o.estimate},
              {"recovered", o.model}};
}

void write_single_artifacts(const ExperimentConfig& cfg, const SingleResult& result,
                            const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_json(single_summary_json(cfg, result), dir / "summary.json");
  {
    auto os = open_for_write(dir / "comparison.csv");
    write_csv(result.comparison, os);
  }
  const FreqGrid grid = cfg.grid.build();
  const RecoveredModel& m = result.outcome.model;
  write_curve(bode_curve("G", make_G(cfg.system), grid), dir);
  write_curve(bode_curve("G_hat", m.G_hat, grid), dir);
  write_curve(bode_curve("H", make_H(cfg.system), grid), dir);
  write_curve(bode_curve("H_hat", m.H_hat, grid), dir);
  write_curve(bode_curve("H_uncorr", m.H_uncorrected, grid), dir);
}

namespace {

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  if (v.empty()) return m;
  for (double x : v) m.mean += x;
  m.mean /= double(v.size());
  if (v.size() < 2) return m;
  double ss = 0.0;
  for (double x : v) ss += (x - m.mean) * (x - m.mean);
  m.stddev = std::sqrt(ss / double(v.size() - 1));
  return m;
}

// The `keep` largest-modulus anti-stable roots, ordered by slot.
std::vector<std::complex<double>> slotted_antistable(const RecoveredModel& model,
                                                     std::size_t keep) {
  std::vector<std::complex<double>> v = model.A_roots.subset(RootClass::kAntiStable).values();
  std::stable_sort(v.begin(), v.end(),
                   [](const auto& a, const auto& b) { return std::abs(a) > std::abs(b); });
  if (v.size() > keep) v.resize(keep);
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    return a.imag() != b.imag() ? a.imag() > b.imag() : a.real() > b.real();
  });
  return v;
}

}  // namespace

void summarize(MonteCarloSummary& s) {
  s.failed = 0;
  std::map<std::size_t, std::size_t> count_histogram;
  std::vector<double> lambdas;
  std::vector<double> costs;
  std::vector<double> stable_re;
  std::vector<double> stable_im;
  for (const RunOutcome& r : s.runs) {
    if (r.failed) {
      ++s.failed;
      continue;
    }
    lambdas.push_back(r.model.lambda_hat);
    costs.push_back(r.estimate.J_hat);
    ++count_histogram[r.model.A_roots.subset(RootClass::kAntiStable).count()];
    for (const auto& z : r.model.A_roots.subset(RootClass::kStable).values()) {
      stable_re.push_back(z.real());
      stable_im.push_back(z.imag());
    }
  }
  const Moments lm = moments(lambdas);
  const Moments jm = moments(costs);
  s.lambda_mean = lm.mean;
  s.lambda_std = lm.stddev;
  s.J_mean = jm.mean;
  s.J_std = jm.stddev;
  const Moments sre = moments(stable_re);
  const Moments sim = moments(stable_im);
  s.stable_pooled_std =
      std::sqrt((sre.stddev * sre.stddev + sim.stddev * sim.stddev) / 2.0);

  s.antistable_count = 0;
  std::size_t best = 0;
  for (const auto& [count, runs] : count_histogram)
    if (runs > best) {
      best = runs;
      s.antistable_count = count;
    }
  s.mismatched_runs = 0;
  std::vector<std::vector<double>> re(s.antistable_count);
  std::vector<std::vector<double>> im(s.antistable_count);
  for (const RunOutcome& r : s.runs) {
    if (r.failed) continue;
    const auto roots = slotted_antistable(r.model, s.antistable_count);
    if (r.model.A_roots.subset(RootClass::kAntiStable).count() != s.antistable_count)
      ++s.mismatched_runs;
    if (roots.size() < s.antistable_count) continue;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      re[k].push_back(roots[k].real());
      im[k].push_back(roots[k].imag());
    }
  }
  s.antistable.clear();
  double pooled = 0.0;
  for (std::size_t k = 0; k < s.antistable_count; ++k) {
    const Moments mr = moments(re[k]);
    const Moments mi = moments(im[k]);
    s.antistable.push_back({mr.mean, mr.stddev, mi.mean, mi.stddev, re[k].size()});
    pooled += (mr.stddev * mr.stddev + mi.stddev * mi.stddev) / 2.0;
  }
  s.antistable_pooled_std =
      s.antistable_count > 0 ? std::sqrt(pooled / double(s.antistable_count)) : 0.0;
}

MonteCarloSummary run_montecarlo(const ExperimentConfig& cfg) {
  cfg.validate();
  MonteCarloSummary s;
  s.orders = cfg.orders;
  s.N = cfg.N;
  s.master_seed = cfg.master_seed;
  s.runs.resize(cfg.runs);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < cfg.runs; k = next++) s.runs[k] = run_pipeline(cfg, k);
  };
  const unsigned n_threads = std::min<unsigned>(cfg.workers, static_cast<unsigned>(cfg.runs));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  summarize(s);
  if (10 * s.failed > cfg.runs)
    throw Error(ErrorCode::kRunFailures,
                fmt::format("{} of {} Monte Carlo runs failed; first: {}", s.failed, cfg.runs,
                            std::find_if(s.runs.begin(), s.runs.end(), [](const RunOutcome& r) {
                              return r.failed;
                            })->error));
  return s;
}

json montecarlo_summary_json(const MonteCarloSummary& s) {
  json runs = json::array();
  for (const RunOutcome& r : s.runs) {
    json entry{{"run", r.run}, {"seed", r.seed}, {"failed", r.failed}};
    if (r.failed) {
      entry["error"] = r.error;
    } else {
      entry["J_hat"] = r.estimate.J_hat;
      entry["lambda_hat"] = r.model.lambda_hat;
      entry["gain"] = r.model.gain;
      entry["A_a_roots"] = root_list(r.model.A_roots.subset(RootClass::kAntiStable));
    }
    runs.push_back(std::move(entry));
  }
  json slots = json::array();
  for (const RootStats& st : s.antistable)
    slots.push_back({{"mean_re", st.mean_re},
                     {"std_re", st.std_re},
                     {"mean_im", st.mean_im},
                     {"std_im", st.std_im},
                     {"samples", st.samples}});
  return json{{"n_a", s.orders.n_a},
              {"n_b", s.orders.n_b},
              {"N", s.N},
              {"master_seed", s.master_seed},
              {"runs", s.runs.size()},
              {"failed", s.failed},
              {"antistable_count", s.antistable_count},
              {"mismatched_runs", s.mismatched_runs},
              {"antistable_roots", slots},
              {"antistable_pooled_std", s.antistable_pooled_std},
              {"stable_pooled_std", s.stable_pooled_std},
              {"lambda_hat_mean", s.lambda_mean},
              {"lambda_hat_std", s.lambda_std},
              {"J_hat_mean", s.J_mean},
              {"J_hat_std", s.J_std},
              {"per_run", runs}};
}

void write_poles_csv(const MonteCarloSummary& s, std::ostream& os) {
  os << "run,re,im,class\n";
  for (const RunOutcome& r : s.runs) {
    if (r.failed) continue;
    for (const Root& root : r.model.A_roots.roots())
      for (int k = 0; k < root.multiplicity; ++k)
        os << fmt::format("{},{:.17g},{:.17g},{}\n", r.run, root.value.real(), root.value.imag(),
                          to_string(root.cls));
  }
}

void write_montecarlo_artifacts(const MonteCarloSummary& s, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    auto os = open_for_write(dir / fmt::format("poles_n{}.csv", s.orders.n_a));
    write_poles_csv(s, os);
  }
  write_json(montecarlo_summary_json(s), dir / "mc_summary.json");
}

BodeCurve bode_curve(std::string name, const RationalTF& tf, const FreqGrid& grid) {
  BodeCurve c;
  c.name = std::move(name);
  c.omega = grid.omegas;
  double previous = 0.0;
  for (std::size_t k = 0; k < grid.omegas.size(); ++k) {
    const auto v = tf.freq(grid.omegas[k]);
    c.mag_db.push_back(to_db(v));
    double phase = std::arg(v) * 180.0 / std::numbers::pi;
    if (k > 0) phase += 360.0 * std::round((previous - phase) / 360.0);
    c.phase_deg.push_back(phase);
    previous = phase;
  }
  return c;
}

void write_csv(const BodeCurve& curve, std::ostream& os) {
  os << "omega,mag_db,phase_deg\n";
  for (std::size_t k = 0; k < curve.omega.size(); ++k)
    os << fmt::format("{:.17g},{:.17g},{:.17g}\n", curve.omega[k], curve.mag_db[k],
                      curve.phase_deg[k]);
}

RationalTF named_transfer_function(const SystemSpec& spec, const std::string& name) {
  if (name == "G") return make_G(spec);
  if (name == "H") return make_H(spec);
  if (name == "S" || name == "GS" || name == "HS" || name == "KHS") {
    const ClosedLoop loop = closed_loop(spec);
    if (name == "S") return loop.S;
    if (name == "GS") return loop.GS;
    if (name == "HS") return loop.HS;
    return loop.KHS;
  }
  if (name == "allpass") {
    const Poly f_a = factor_stable_antistable(spec.F).antistable;
    return f_a.degree() == 0 ? RationalTF::identity() : RationalTF(f_a, mirror(f_a));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown transfer function '" + name + "'");
}

std::vector<BodeCurve> run_bode(const ExperimentConfig& cfg, const std::vector<std::string>& names,
                                const std::filesystem::path& dir) {
  validate(cfg.system);
  const FreqGrid grid = cfg.grid.build();
  std::filesystem::create_directories(dir);
  std::vector<BodeCurve> curves;
  for (const std::string& name : names) {
    curves.push_back(bode_curve(name, named_transfer_function(cfg.system, name), grid));
    write_curve(curves.back(), dir);
  }
  return curves;
}

}  // namespace arxid
