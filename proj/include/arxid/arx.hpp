#ifndef ARXID_ARX_HPP
#define ARXID_ARX_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "arxid/poly.hpp"

namespace arxid {

struct ArxOrders {
  std::size_t n_a = 1;
  std::size_t n_b = 1;

  std::size_t max() const { return n_a > n_b ? n_a : n_b; }
  std::size_t parameters() const { return n_a + n_b; }
};

/// Least-squares ARX fit A(q) y_t = B(q) u_t + eps_t.
struct ArxEstimate {
  Poly A;              // 1 + a_1 q^-1 + ... + a_na q^-na
  Poly B;              // b_1 q^-1 + ... + b_nb q^-nb (zero constant term)
  double J_hat = 0.0;  // mean squared residual over N_eff terms
  std::size_t N_eff = 0;
  ArxOrders orders;
  std::size_t first = 0;  // first residual index, max(n_a, n_b) by default
};

/// Reciprocal condition threshold below which the regression is rejected.
inline constexpr double kRankTolerance = 1e-12;

/// Minimizes (1/N_eff) sum_t (A(q) y_t - B(q) u_t)^2 over t = max(n_a, n_b) ...
/// N - 1 (zero-based), with no pre-windowing. Solved by Householder QR of the
/// regressor matrix. Throws RankDeficient when the reciprocal condition number
/// of R falls below kRankTolerance.
ArxEstimate estimate_arx(std::span<const double> y, std::span<const double> u, ArxOrders orders);

/// Same fit over the window t = first ... N - 1 with first >= max(n_a, n_b).
/// Fits of nested orders over a common window are exactly nested problems.
ArxEstimate estimate_arx(std::span<const double> y, std::span<const double> u, ArxOrders orders,
                         std::size_t first);

/// eps_t = A(q) y_t - B(q) u_t for t = est.first ... N - 1.
std::vector<double> residuals(const ArxEstimate& est, std::span<const double> y,
                              std::span<const double> u);

}  // namespace arxid

#endif  // ARXID_ARX_HPP
