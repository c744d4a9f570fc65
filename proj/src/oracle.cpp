#include "arxid/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "arxid/error.hpp"

namespace arxid {

namespace {

void require_power_of_two(std::size_t M) {
  if (M < 2 || (M & (M - 1)) != 0)
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("quadrature points must be a power of two, got {}", M));
}

// Trapezoid weights on the half grid w_j = 2 pi j / M, j = 0 ... M/2, for an
// even integrand over the full period.
double half_grid_weight(std::size_t j, std::size_t M) {
  return (j == 0 || j == M / 2) ? 1.0 : 2.0;
}

bool roots_strictly_stable(const Poly& p) {
  const RootSet rs = roots(p);
  return !rs.any(RootClass::kAntiStable) && !rs.any(RootClass::kOnCircle);
}

}  // namespace

CostDecomposition quadrature_cost(const Poly& A, const Poly& B, const SystemSpec& spec,
                                  std::size_t M) {
  require_power_of_two(M);
  const ClosedLoop loop = closed_loop(spec);
  double jr = 0.0;
  double je = 0.0;
  for (std::size_t j = 0; j <= M / 2; ++j) {
    const double w = 2.0 * std::numbers::pi * double(j) / double(M);
    const double weight = half_grid_weight(j, M);
    const auto a = A.freq(w);
    const auto b = B.freq(w);
    jr += weight * std::norm(a * loop.GS.freq(w) - b * loop.S.freq(w));
    je += weight * std::norm(a * loop.HS.freq(w) + b * loop.KHS.freq(w));
  }
  CostDecomposition out;
  out.J_r = jr / double(M) * spec.lambda_r;
  out.J_e = je / double(M) * spec.lambda_e;
  out.J_total = out.J_r + out.J_e;
  out.quadrature_points = M;
  return out;
}

QuadraticMinimum verify_proposition1(const RationalTF& Z, std::size_t m, std::size_t M) {
  require_power_of_two(M);
  if (std::abs(Z.num()[0] - 1.0) > 1e-12)
    throw Error(ErrorCode::kInvalidArgument, "Z must equal 1 at infinity");
  if (!roots_strictly_stable(Z.den()) || !roots_strictly_stable(Z.num()))
    throw Error(ErrorCode::kUnstableZ, "Z and 1/Z must both be stable, Z = " + Z.to_string());

  // Quadrature moments r_d = 1/M sum_j |Z(w_j)|^2 cos(d w_j).
  std::vector<double> spectrum(M / 2 + 1);
  for (std::size_t j = 0; j <= M / 2; ++j)
    spectrum[j] = std::norm(Z.freq(2.0 * std::numbers::pi * double(j) / double(M)));
  std::vector<double> moment(m + 1, 0.0);
  for (std::size_t d = 0; d <= m; ++d) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= M / 2; ++j)
      acc += half_grid_weight(j, M) * spectrum[j] *
             std::cos(2.0 * std::numbers::pi * double(d * j % M) / double(M));
    moment[d] = acc / double(M);
  }

  std::vector<double> x(m + 1, 0.0);
  x[0] = 1.0;
  if (m > 0) {
    const Eigen::Index n = static_cast<Eigen::Index>(m);
    Eigen::MatrixXd gram(n, n);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      for (Eigen::Index l = 0; l < n; ++l) gram(k, l) = moment[static_cast<std::size_t>(std::abs(k - l))];
      rhs(k) = -moment[static_cast<std::size_t>(k) + 1];
    }
    const Eigen::VectorXd sol = gram.ldlt().solve(rhs);
    for (Eigen::Index k = 0; k < n; ++k) x[static_cast<std::size_t>(k) + 1] = sol(k);
  }

  QuadraticMinimum out;
  out.X_min = Poly(x);
  double acc = 0.0;
  for (std::size_t j = 0; j <= M / 2; ++j) {
    const double w = 2.0 * std::numbers::pi * double(j) / double(M);
    acc += half_grid_weight(j, M) * std::norm(out.X_min.freq(w)) * spectrum[j];
  }
  out.J_min = acc / double(M);
  return out;
}

Poly power_series(const RationalTF& tf, std::size_t m) {
  if (!roots_strictly_stable(tf.den()))
    throw Error(ErrorCode::kUnstableExpansion,
                "power series of " + tf.to_string() + " does not converge on the unit circle");
  const Poly& num = tf.num();
  const Poly& den = tf.den();  // monic
  std::vector<double> h(m + 1, 0.0);
  for (std::size_t k = 0; k <= m; ++k) {
    double acc = num[k];
    for (std::size_t j = 1; j <= std::min(k, den.degree()); ++j) acc -= den[j] * h[k - j];
    h[k] = acc;
  }
  return Poly(std::move(h));
}

}  // namespace arxid
