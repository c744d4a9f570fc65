#include "arxid/ltisys.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "arxid/error.hpp"

namespace arxid {

namespace {

constexpr double kPoleOnGrid = 1e-12;

}  // namespace

RationalTF::RationalTF(Poly num, Poly den) {
  if (den.is_zero()) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  const double c0 = den[0];
  if (c0 == 0.0)
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("improper denominator {}", den.to_string()));
  num_ = c0 == 1.0 ? std::move(num) : num.scaled(1.0 / c0);
  den_ = c0 == 1.0 ? std::move(den) : den.scaled(1.0 / c0);
}

std::complex<double> RationalTF::freq(double omega) const {
  const std::complex<double> d = den_.freq(omega);
  if (std::abs(d) < kPoleOnGrid)
    throw Error(ErrorCode::kPoleOnGrid, fmt::format("denominator vanishes at omega = {}", omega));
  return num_.freq(omega) / d;
}

std::string RationalTF::to_string() const {
  return fmt::format("({}) / ({})", num_.to_string(), den_.to_string());
}

RationalTF operator*(const RationalTF& a, const RationalTF& b) {
  return {a.num() * b.num(), a.den() * b.den()};
}

RationalTF operator+(const RationalTF& a, const RationalTF& b) {
  return {a.num() * b.den() + b.num() * a.den(), a.den() * b.den()};
}

SystemSpec example_system() {
  SystemSpec spec;
  spec.L = Poly{0.0, 1.0, -1.7};
  spec.Gamma = Poly::one();
  spec.F = Poly{1.0, -2.0, 2.0};
  spec.C = Poly{1.0, 0.2};
  spec.D = Poly{1.0, -0.9};
  spec.K = RationalTF::identity();
  spec.lambda_e = 1.0;
  spec.lambda_r = 1.0;
  return spec;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

bool all_stable(const Poly& p) {
  const RootSet rs = roots(p);
  for (const Root& r : rs.roots())
    if (r.cls != RootClass::kStable) return false;
  return true;
}

}  // namespace

void validate(const SystemSpec& spec) {
  require(spec.Gamma.is_monic(), "Gamma must be monic");
  require(spec.F.is_monic(), "F must be monic");
  require(spec.C.is_monic(), "C must be monic");
  require(spec.D.is_monic(), "D must be monic");
  require(all_stable(spec.C), "C must be stable, got " + spec.C.to_string());
  require(all_stable(spec.D), "D must be stable, got " + spec.D.to_string());
  require(!roots(spec.F).any(RootClass::kOnCircle),
          "F must not have roots on the unit circle, got " + spec.F.to_string());
  const RootSet f_roots = roots(spec.F);
  const RootSet d_roots = roots(spec.D);
  for (const Root& f : f_roots.roots())
    for (const Root& d : d_roots.roots())
      require(std::abs(f.value - d.value) >= tol::kCluster, "F and D share a root");
  require(spec.lambda_r > 0.0, "lambda_r must be positive");
  require(spec.lambda_e >= 0.0, "lambda_e must be nonnegative");
}

RationalTF make_G(const SystemSpec& spec) { return {spec.L, spec.Gamma * spec.F}; }

RationalTF make_H(const SystemSpec& spec) { return {spec.C, spec.Gamma * spec.D}; }

RationalTF sensitivity(const RationalTF& G, const RationalTF& K) {
  const Poly open = G.den() * K.den();
  const Poly den = open + K.num() * G.num();
  if (den[0] == 0.0)
    throw Error(ErrorCode::kAlgebraicLoop,
                "1 + K G has no direct term; the loop is not well posed");
  return {open, den};
}

ClosedLoop closed_loop(const SystemSpec& spec) {
  const Poly& kn = spec.K.num();
  const Poly& kd = spec.K.den();
  const Poly plant_den = spec.Gamma * spec.F;
  const Poly characteristic = plant_den * kd + kn * spec.L;
  if (characteristic[0] == 0.0)
    throw Error(ErrorCode::kAlgebraicLoop,
                "1 + K G has no direct term; the loop is not well posed");
  const Poly noise_den = spec.D * characteristic;
  return {
      RationalTF(plant_den * kd, characteristic),
      RationalTF(spec.L * kd, characteristic),
      RationalTF(spec.C * spec.F * kd, noise_den),
      RationalTF(kn * spec.C * spec.F, noise_den),
  };
}

bool is_stable(const RationalTF& tf) {
  const RootSet rs = roots(tf.den());
  bool stable = true;
  for (const Root& r : rs.roots()) {
    if (r.cls == RootClass::kOnCircle)
      throw Error(ErrorCode::kRootOnUnitCircle,
                  fmt::format("pole ({}, {}) lies on the unit circle", r.value.real(),
                              r.value.imag()));
    if (r.cls == RootClass::kAntiStable) stable = false;
  }
  return stable;
}

FreqGrid FreqGrid::log_spaced(double omega_min, double omega_max, std::size_t points) {
  if (points < 2 || !(omega_min > 0.0) || !(omega_max > omega_min))
    throw Error(ErrorCode::kInvalidArgument, "log grid needs 0 < omega_min < omega_max, points >= 2");
  FreqGrid grid;
  grid.omegas.resize(points);
  const double lo = std::log10(omega_min);
  const double hi = std::log10(omega_max);
  for (std::size_t k = 0; k < points; ++k)
    grid.omegas[k] = std::pow(10.0, lo + (hi - lo) * double(k) / double(points - 1));
  grid.omegas.back() = omega_max;
  grid.validate();
  return grid;
}

FreqGrid FreqGrid::linear(double omega_min, double omega_max, std::size_t points) {
  if (points < 2 || !(omega_max > omega_min))
    throw Error(ErrorCode::kInvalidArgument, "linear grid needs omega_min < omega_max, points >= 2");
  FreqGrid grid;
  grid.omegas.resize(points);
  for (std::size_t k = 0; k < points; ++k)
    grid.omegas[k] = omega_min + (omega_max - omega_min) * double(k) / double(points - 1);
  grid.validate();
  return grid;
}

void FreqGrid::validate() const {
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    if (!(omegas[k] > 0.0) || omegas[k] > std::numbers::pi)
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("grid frequency {} outside (0, pi]", omegas[k]));
    if (k > 0 && !(omegas[k] > omegas[k - 1]))
      throw Error(ErrorCode::kInvalidArgument, "grid frequencies must be strictly increasing");
  }
}

std::vector<std::complex<double>> freq_response(const RationalTF& tf, const FreqGrid& grid) {
  std::vector<std::complex<double>> out;
  out.reserve(grid.omegas.size());
  for (double w : grid.omegas) out.push_back(tf.freq(w));
  return out;
}

}  // namespace arxid
