#ifndef ARXID_SIMULATE_HPP
#define ARXID_SIMULATE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "arxid/ltisys.hpp"

namespace arxid {

inline constexpr std::size_t kDefaultWarmup = 500;

/// splitmix64 finalizer applied to (master, index). Used for every derived
/// stream: run seeds are derive_seed(master_seed, run) and within a run the
/// reference and innovation streams are derive_seed(seed, 0) and (seed, 1).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// i.i.d. N(0, variance) draws from a mt19937_64 seeded with `seed`.
std::vector<double> gaussian_white(std::size_t n, double variance, std::uint64_t seed);

/// Runs tf as a direct-form difference equation from zero initial conditions.
std::vector<double> filter(const RationalTF& tf, std::span<const double> x);

struct SignalRecord {
  std::vector<double> y;
  std::vector<double> u;
  std::vector<double> r;
  std::vector<double> e;
  std::uint64_t seed = 0;

  std::size_t size() const { return y.size(); }
};

/// Closed-loop data from given reference and innovation sequences of equal
/// length; the first `warmup` samples are discarded from all four signals.
SignalRecord simulate_closed_loop(const SystemSpec& spec, std::span<const double> r,
                                  std::span<const double> e, std::size_t warmup);

/// Closed-loop data of length n with white r (variance lambda_r) and e
/// (variance lambda_e) drawn from streams derived from `seed`.
SignalRecord simulate_closed_loop(const SystemSpec& spec, std::size_t n, std::uint64_t seed,
                                  std::size_t warmup = kDefaultWarmup);

/// CSV with header "t,y,u,r,e".
void write_csv(const SignalRecord& record, std::ostream& os);

}  // namespace arxid

#endif  // ARXID_SIMULATE_HPP
