#ifndef ARXID_TESTS_PROPERTIES_HPP
#define ARXID_TESTS_PROPERTIES_HPP

#include <cstdint>
#include <string>
#include <vector>

// Randomized invariant checks shared by the unit-test binary and the
// acceptance suite. Each runs `cases` independent draws from its own seed.
namespace arxid::testing {

struct PropertyReport {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  bool ok() const { return cases > 0 && failures == 0; }
};

PropertyReport prop_root_roundtrip(int cases, std::uint64_t seed);
PropertyReport prop_mirror_reciprocal(int cases, std::uint64_t seed);
PropertyReport prop_allpass_constancy(int cases, std::uint64_t seed);
PropertyReport prop_factorization_roundtrip(int cases, std::uint64_t seed);
PropertyReport prop_sensitivity_identity(int cases, std::uint64_t seed);
PropertyReport prop_freq_response_product(int cases, std::uint64_t seed);
PropertyReport prop_residual_orthogonality(int cases, std::uint64_t seed);
PropertyReport prop_cost_monotone_common_window(int cases, std::uint64_t seed);
PropertyReport prop_cost_monotone_closed_loop(int cases, std::uint64_t seed);
PropertyReport prop_lambda_gain_identity(int cases, std::uint64_t seed);
PropertyReport prop_stable_case_noop(int cases, std::uint64_t seed);
PropertyReport prop_simulation_superposition(int cases, std::uint64_t seed);
PropertyReport prop_simulation_determinism(int cases, std::uint64_t seed);
PropertyReport prop_feedback_consistency(int cases, std::uint64_t seed);

std::vector<PropertyReport> run_all_properties(int cases, std::uint64_t seed);

}  // namespace arxid::testing

#endif  // ARXID_TESTS_PROPERTIES_HPP
