#include "arxid/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include <fmt/format.h>

#include "arxid/error.hpp"

namespace arxid {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<double> gaussian_white(std::size_t n, double variance, std::uint64_t seed) {
  if (variance < 0.0) throw Error(ErrorCode::kInvalidArgument, "negative variance");
  std::vector<double> out(n, 0.0);
  if (variance == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, std::sqrt(variance));
  for (double& v : out) v = dist(rng);
  return out;
}

std::vector<double> filter(const RationalTF& tf, std::span<const double> x) {
  const auto b = tf.num().coeffs();
  const auto a = tf.den().coeffs();
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t t = 0; t < x.size(); ++t) {
    double acc = 0.0;
    const std::size_t nb = std::min(b.size(), t + 1);
    for (std::size_t k = 0; k < nb; ++k) acc += b[k] * x[t - k];
    const std::size_t na = std::min(a.size(), t + 1);
    for (std::size_t k = 1; k < na; ++k) acc -= a[k] * y[t - k];
    y[t] = acc;
  }
  return y;
}

namespace {

void require_stable(const RationalTF& tf, const char* name) {
  bool stable = false;
  try {
    stable = is_stable(tf);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kRootOnUnitCircle) throw;
  }
  if (!stable)
    throw Error(ErrorCode::kUnstableClosedLoop,
                fmt::format("closed-loop map {} = {} is not stable", name, tf.to_string()));
}

std::vector<double> tail(std::vector<double> v, std::size_t warmup) {
  v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(warmup));
  return v;
}

}  // namespace

SignalRecord simulate_closed_loop(const SystemSpec& spec, std::span<const double> r,
                                  std::span<const double> e, std::size_t warmup) {
  if (r.size() != e.size())
    throw Error(ErrorCode::kInvalidArgument, "reference and innovation lengths differ");
  if (r.size() <= warmup)
    throw Error(ErrorCode::kInvalidArgument, "record shorter than the warmup");

  const ClosedLoop loop = closed_loop(spec);
  require_stable(loop.GS, "GS");
  require_stable(loop.HS, "HS");
  require_stable(loop.S, "S");
  require_stable(loop.KHS, "KHS");

  const std::vector<double> gs_r = filter(loop.GS, r);
  const std::vector<double> hs_e = filter(loop.HS, e);
  const std::vector<double> s_r = filter(loop.S, r);
  const std::vector<double> khs_e = filter(loop.KHS, e);

  SignalRecord rec;
  rec.y.resize(r.size());
  rec.u.resize(r.size());
  for (std::size_t t = 0; t < r.size(); ++t) {
    rec.y[t] = gs_r[t] + hs_e[t];
    rec.u[t] = s_r[t] - khs_e[t];
  }
  rec.y = tail(std::move(rec.y), warmup);
  rec.u = tail(std::move(rec.u), warmup);
  rec.r = tail({r.begin(), r.end()}, warmup);
  rec.e = tail({e.begin(), e.end()}, warmup);
  return rec;
}

SignalRecord simulate_closed_loop(const SystemSpec& spec, std::size_t n, std::uint64_t seed,
                                  std::size_t warmup) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "sample count must be positive");
  const std::vector<double> r = gaussian_white(n + warmup, spec.lambda_r, derive_seed(seed, 0));
  const std::vector<double> e = gaussian_white(n + warmup, spec.lambda_e, derive_seed(seed, 1));
  SignalRecord rec = simulate_closed_loop(spec, r, e, warmup);
  rec.seed = seed;
  return rec;
}

void write_csv(const SignalRecord& record, std::ostream& os) {
  os << "t,y,u,r,e\n";
  for (std::size_t t = 0; t < record.size(); ++t)
    os << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g}\n", t, record.y[t], record.u[t],
                      record.r[t], record.e[t]);
}

}  // namespace arxid
