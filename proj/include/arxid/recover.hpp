#ifndef ARXID_RECOVER_HPP
#define ARXID_RECOVER_HPP

#include <iosfwd>
#include <vector>

#include "arxid/arx.hpp"
#include "arxid/ltisys.hpp"
#include "arxid/poly.hpp"

namespace arxid {

/// Plant, noise model and noise variance recovered from an ARX estimate.
///
/// A_a collects the anti-stable roots of A; its mirror A_a_mirror has the
/// reciprocal roots. The all-pass A_a / A_a_mirror has constant squared gain
/// `gain` on the unit circle, which inflates the attained cost and deflates
/// 1/A. Both effects are undone here:
///   G_hat = B / A
///   H_hat = (1/A) (A_a / A_a_mirror) = 1 / (A_s A_a_mirror)
///   lambda_hat = J_hat / gain
struct RecoveredModel {
  RationalTF G_hat;
  RationalTF H_hat;
  RationalTF H_uncorrected;  // 1 / A
  double lambda_hat = 0.0;
  double gain = 1.0;
  Poly A_a = Poly::one();
  Poly A_a_mirror = Poly::one();
  RootSet A_roots;
};

/// Throws RootOnUnitCircle if A has a root within tol::kUnitCircle of the unit
/// circle.
RecoveredModel recover(const ArxEstimate& est);

/// Asymptotic ARX limits for a known system:
///   A_bar = (Gamma D / C) (F_a / F_a*),  B_bar = (D / C) L / (F_s F_a*),
///   J_star = allpass_gain(F_a) lambda_e.
struct Minimizers {
  RationalTF A_bar;
  RationalTF B_bar;
  double J_star = 0.0;
};

/// Throws InverselyUnstableH when C has roots outside the unit circle.
Minimizers theoretical_minimizers(const SystemSpec& spec);

/// Frequency-wise agreement of a recovered model with the true system.
struct ModelComparison {
  std::vector<double> omega;
  std::vector<double> mag_G_true_db;
  std::vector<double> mag_G_hat_db;
  std::vector<double> phase_G_err_deg;
  std::vector<double> mag_H_true_db;
  std::vector<double> mag_H_hat_db;
  std::vector<double> phase_H_err_deg;
  std::vector<double> mag_H_uncorr_db;
  std::vector<double> uncorrected_ratio;  // |H_uncorrected| / |H|

  double max_abs_G_db_error() const;
  double max_abs_H_db_error() const;
};

ModelComparison compare_models(const RecoveredModel& recovered, const SystemSpec& spec,
                               const FreqGrid& grid);

/// CSV "omega,mag_G_true_db,mag_G_hat_db,mag_H_true_db,mag_H_hat_db,mag_H_uncorr_db".
void write_csv(const ModelComparison& cmp, std::ostream& os);

double to_db(std::complex<double> v);

}  // namespace arxid

#endif  // ARXID_RECOVER_HPP
