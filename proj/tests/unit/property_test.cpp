#include <gtest/gtest.h>

#include "properties.hpp"

namespace arxid::testing {
namespace {

constexpr int kCases = 200;

void check(const PropertyReport& r) {
  EXPECT_EQ(r.cases, kCases) << r.name;
  EXPECT_EQ(r.failures, 0) << r.name << ": " << r.first_failure;
}

TEST(Property, RootRoundTrip) { check(prop_root_roundtrip(kCases, 1)); }
TEST(Property, MirrorReciprocal) { check(prop_mirror_reciprocal(kCases, 2)); }
TEST(Property, AllpassConstancy) { check(prop_allpass_constancy(kCases, 3)); }
TEST(Property, FactorizationRoundTrip) { check(prop_factorization_roundtrip(kCases, 4)); }
TEST(Property, SensitivityIdentity) { check(prop_sensitivity_identity(kCases, 5)); }
TEST(Property, FreqResponseProduct) { check(prop_freq_response_product(kCases, 6)); }
TEST(Property, ResidualOrthogonality) { check(prop_residual_orthogonality(kCases, 7)); }
TEST(Property, CostMonotoneCommonWindow) { check(prop_cost_monotone_common_window(kCases, 8)); }
TEST(Property, CostMonotoneClosedLoop) { check(prop_cost_monotone_closed_loop(kCases, 9)); }
TEST(Property, LambdaGainIdentity) { check(prop_lambda_gain_identity(kCases, 10)); }
TEST(Property, StableCaseNoop) { check(prop_stable_case_noop(kCases, 11)); }
TEST(Property, SimulationSuperposition) { check(prop_simulation_superposition(kCases, 12)); }
TEST(Property, SimulationDeterminism) { check(prop_simulation_determinism(kCases, 13)); }
TEST(Property, FeedbackConsistency) { check(prop_feedback_consistency(kCases, 14)); }

}  // namespace
}  // namespace arxid::testing
