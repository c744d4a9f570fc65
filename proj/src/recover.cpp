#include "arxid/recover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

#include "arxid/error.hpp"

namespace arxid {

RecoveredModel recover(const ArxEstimate& est) {
  RecoveredModel out;
  out.A_roots = roots(est.A);
  for (const Root& r : out.A_roots.roots())
    if (r.cls == RootClass::kOnCircle)
      throw Error(ErrorCode::kRootOnUnitCircle,
                  fmt::format("A has root ({}, {}) with modulus {} on the unit circle",
                              r.value.real(), r.value.imag(), std::abs(r.value)));

  const RootSet stable = out.A_roots.subset(RootClass::kStable);
  const RootSet antistable = out.A_roots.subset(RootClass::kAntiStable);

  out.G_hat = RationalTF(est.B, est.A);
  out.H_uncorrected = RationalTF(Poly::one(), est.A);
  if (antistable.empty()) {
    out.H_hat = out.H_uncorrected;
    out.gain = 1.0;
    out.lambda_hat = est.J_hat;
    return out;
  }

  out.A_a = antistable.expand();
  out.A_a_mirror = mirror(out.A_a);
  out.gain = allpass_gain(out.A_a);
  // A_a cancels against its own roots inside A: the corrected denominator is
  // the stable roots of A plus the reciprocals of the anti-stable ones.
  out.H_hat = RationalTF(Poly::one(), stable.merged(antistable.reciprocal()).expand());
  out.lambda_hat = est.J_hat / out.gain;
  return out;
}

Minimizers theoretical_minimizers(const SystemSpec& spec) {
  const RootSet c_roots = roots(spec.C);
  if (c_roots.any(RootClass::kAntiStable) || c_roots.any(RootClass::kOnCircle))
    throw Error(ErrorCode::kInverselyUnstableH,
                "noise model zeros must lie inside the unit circle, C = " + spec.C.to_string());
  validate(spec);
  const StableAntiStable f = factor_stable_antistable(spec.F);
  const Poly f_a_mirror = f.antistable.degree() == 0 ? Poly::one() : mirror(f.antistable);
  const double gain = f.antistable.degree() == 0 ? 1.0 : allpass_gain(f.antistable);
  Minimizers m;
  m.A_bar = RationalTF(spec.Gamma * spec.D * f.antistable, spec.C * f_a_mirror);
  m.B_bar = RationalTF(spec.D * spec.L, spec.C * f.stable * f_a_mirror);
  m.J_star = gain * spec.lambda_e;
  return m;
}

double to_db(std::complex<double> v) { return 20.0 * std::log10(std::abs(v)); }

namespace {

double wrapped_phase_deg(std::complex<double> estimate, std::complex<double> truth) {
  return std::arg(estimate / truth) * 180.0 / std::numbers::pi;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace

double ModelComparison::max_abs_G_db_error() const {
  return max_abs_diff(mag_G_hat_db, mag_G_true_db);
}

double ModelComparison::max_abs_H_db_error() const {
  return max_abs_diff(mag_H_hat_db, mag_H_true_db);
}

ModelComparison compare_models(const RecoveredModel& recovered, const SystemSpec& spec,
                               const FreqGrid& grid) {
  grid.validate();
  const RationalTF G = make_G(spec);
  const RationalTF H = make_H(spec);
  ModelComparison cmp;
  cmp.omega = grid.omegas;
  for (double w : grid.omegas) {
    const auto g = G.freq(w);
    const auto g_hat = recovered.G_hat.freq(w);
    const auto h = H.freq(w);
    const auto h_hat = recovered.H_hat.freq(w);
    const auto h_unc = recovered.H_uncorrected.freq(w);
    cmp.mag_G_true_db.push_back(to_db(g));
    cmp.mag_G_hat_db.push_back(to_db(g_hat));
    cmp.phase_G_err_deg.push_back(wrapped_phase_deg(g_hat, g));
    cmp.mag_H_true_db.push_back(to_db(h));
    cmp.mag_H_hat_db.push_back(to_db(h_hat));
    cmp.phase_H_err_deg.push_back(wrapped_phase_deg(h_hat, h));
    cmp.mag_H_uncorr_db.push_back(to_db(h_unc));
    cmp.uncorrected_ratio.push_back(std::abs(h_unc) / std::abs(h));
  }
  return cmp;
}

void write_csv(const ModelComparison& cmp, std::ostream& os) {
  os << "omega,mag_G_true_db,mag_G_hat_db,mag_H_true_db,mag_H_hat_db,mag_H_uncorr_db\n";
  for (std::size_t k = 0; k < cmp.omega.size(); ++k)
    os << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", cmp.omega[k],
                      cmp.mag_G_true_db[k], cmp.mag_G_hat_db[k], cmp.mag_H_true_db[k],
                      cmp.mag_H_hat_db[k], cmp.mag_H_uncorr_db[k]);
}

}  // namespace arxid
