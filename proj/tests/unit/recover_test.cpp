#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "arxid/error.hpp"
#include "arxid/oracle.hpp"
#include "arxid/recover.hpp"

namespace arxid {
namespace {

ArxEstimate synthetic(Poly A, Poly B, double J) {
  ArxEstimate est;
  est.orders = {A.degree(), std::max<std::size_t>(B.degree(), 1)};
  est.A = std::move(A);
  est.B = std::move(B);
  est.J_hat = J;
  return est;
}

TEST(Recover, UnstablePairQuartersTheCost) {
  // (1 - 2q^-1 + 2q^-2)(1 - 0.5 q^-1)
  const Poly A = Poly{1.0, -2.0, 2.0} * Poly{1.0, -0.5};
  const RecoveredModel m = recover(synthetic(A, Poly{0.0, 1.0}, 4.0));
  EXPECT_NEAR(m.gain, 4.0, 1e-12);
  EXPECT_NEAR(m.lambda_hat, 1.0, 1e-12);
  EXPECT_NEAR(m.A_a[1], -2.0, 1e-12);
  EXPECT_NEAR(m.A_a[2], 2.0, 1e-12);
  EXPECT_NEAR(m.A_a_mirror[1], -1.0, 1e-12);
  EXPECT_NEAR(m.A_a_mirror[2], 0.5, 1e-12);
  EXPECT_TRUE(is_stable(m.H_hat));
  // H_hat = 1 / ((1 - 0.5 q^-1)(1 - q^-1 + 0.5 q^-2))
  const Poly den = Poly{1.0, -0.5} * Poly{1.0, -1.0, 0.5};
  for (std::size_t k = 0; k <= 3; ++k) EXPECT_NEAR(m.H_hat.den()[k], den[k], 1e-12);
  EXPECT_EQ(m.H_hat.num(), Poly::one());
  for (double w : {0.1, 1.0, 2.5})
    EXPECT_NEAR(std::abs(m.H_uncorrected.freq(w)) / std::abs(m.H_hat.freq(w)), 0.5, 1e-12);
}

TEST(Recover, StableAIsUntouched) {
  const RecoveredModel m = recover(synthetic(Poly{1.0, -0.9, 0.2}, Poly{0.0, 1.0}, 2.5));
  EXPECT_EQ(m.gain, 1.0);
  EXPECT_EQ(m.lambda_hat, 2.5);
  EXPECT_EQ(m.A_a, Poly::one());
  EXPECT_EQ(m.H_hat.den(), m.H_uncorrected.den());
  EXPECT_EQ(m.H_hat.num(), m.H_uncorrected.num());
}

TEST(Recover, RootOnUnitCircle) {
  try {
    recover(synthetic(Poly{1.0, -1.0}, Poly{0.0, 1.0}, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRootOnUnitCircle);
  }
}

TEST(TheoreticalMinimizers, ExampleSystem) {
  const Minimizers mins = theoretical_minimizers(example_system());
  EXPECT_EQ(mins.J_star, 4.0);
  const RootSet rs = roots(mins.A_bar.num());
  int near_pair = 0;
  for (const auto& p : rs.subset(RootClass::kAntiStable).values())
    if (std::abs(std::abs(p.imag()) - 1.0) < 1e-9 && std::abs(p.real() - 1.0) < 1e-9) ++near_pair;
  EXPECT_EQ(near_pair, 2);
  EXPECT_EQ(rs.subset(RootClass::kAntiStable).count(), 2u);
}

TEST(TheoreticalMinimizers, StablePlantReducesToInverseNoiseModel) {
  SystemSpec spec = example_system();
  spec.F = Poly{1.0, -0.5, 0.3};
  spec.lambda_e = 0.7;
  const Minimizers mins = theoretical_minimizers(spec);
  EXPECT_EQ(mins.J_star, 0.7);
  const RationalTF G = make_G(spec);
  const RationalTF H = make_H(spec);
  for (double w : {0.05, 0.8, 2.0}) {
    EXPECT_NEAR(std::abs(mins.A_bar.freq(w) - 1.0 / H.freq(w)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(mins.B_bar.freq(w) - G.freq(w) / H.freq(w)), 0.0, 1e-12);
  }
}

TEST(TheoreticalMinimizers, NonMinimumPhaseNoiseRejected) {
  SystemSpec spec = example_system();
  spec.C = Poly{1.0, -1.5};
  try {
    theoretical_minimizers(spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInverselyUnstableH);
  }
}

TEST(Recover, OracleAgreementAtTruncationOrder50) {
  const SystemSpec spec = example_system();
  const Minimizers mins = theoretical_minimizers(spec);
  const ArxEstimate est =
      synthetic(power_series(mins.A_bar, 50), power_series(mins.B_bar, 50), mins.J_star);
  const RecoveredModel m = recover(est);
  EXPECT_NEAR(m.lambda_hat, spec.lambda_e, 1e-3);
  const RationalTF G = make_G(spec);
  const RationalTF H = make_H(spec);
  const FreqGrid grid = FreqGrid::log_spaced(1e-2, std::numbers::pi, 200);
  for (double w : grid.omegas) {
    EXPECT_LT(std::abs(m.G_hat.freq(w) - G.freq(w)) / std::abs(G.freq(w)), 1e-3) << w;
    EXPECT_LT(std::abs(m.H_hat.freq(w) - H.freq(w)) / std::abs(H.freq(w)), 1e-3) << w;
  }
  const ModelComparison cmp = compare_models(m, spec, grid);
  EXPECT_LT(cmp.max_abs_G_db_error(), 1e-2);
  EXPECT_LT(cmp.max_abs_H_db_error(), 1e-2);
  for (double r : cmp.uncorrected_ratio) EXPECT_NEAR(r, 0.5, 1e-3);
}

TEST(CompareModels, TruncationErrorDecaysWithOrder) {
  const SystemSpec spec = example_system();
  const Minimizers mins = theoretical_minimizers(spec);
  const FreqGrid grid = FreqGrid::log_spaced(1e-2, std::numbers::pi, 50);
  double previous = INFINITY;
  for (std::size_t order : {10u, 20u, 40u}) {
    const RecoveredModel m = recover(synthetic(power_series(mins.A_bar, order),
                                               power_series(mins.B_bar, order), mins.J_star));
    const ModelComparison cmp = compare_models(m, spec, grid);
    const double err = std::max(cmp.max_abs_G_db_error(), cmp.max_abs_H_db_error());
    EXPECT_LT(err, previous) << order;
    previous = err;
  }
}

TEST(CompareModels, CsvHeader) {
  const SystemSpec spec = example_system();
  const RecoveredModel m = recover(synthetic(Poly{1.0, -2.0, 2.0}, Poly{0.0, 1.0}, 4.0));
  std::ostringstream os;
  write_csv(compare_models(m, spec, FreqGrid::linear(0.5, 1.0, 3)), os);
  const std::string text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "omega,mag_G_true_db,mag_G_hat_db,mag_H_true_db,mag_H_hat_db,mag_H_uncorr_db");
}

TEST(ToDb, Values) {
  EXPECT_NEAR(to_db(12.0), 21.583624920952495, 1e-12);
  EXPECT_NEAR(to_db(0.5), -6.020599913279624, 1e-12);
}

}  // namespace
}  // namespace arxid
