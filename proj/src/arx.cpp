#include "arxid/arx.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <fmt/format.h>

#include "arxid/error.hpp"

namespace arxid {

namespace {

void check_inputs(std::span<const double> y, std::span<const double> u, ArxOrders orders,
                  std::size_t first) {
  if (orders.n_a < 1 || orders.n_b < 1)
    throw Error(ErrorCode::kInvalidArgument, "ARX orders must be at least 1");
  if (y.size() != u.size())
    throw Error(ErrorCode::kInvalidArgument, "y and u lengths differ");
  if (first < orders.max())
    throw Error(ErrorCode::kInvalidArgument, "regression window starts before max(n_a, n_b)");
  if (y.size() <= first + orders.parameters())
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("{} samples cannot identify {} parameters", y.size(),
                            orders.parameters()));
}

}  // namespace

ArxEstimate estimate_arx(std::span<const double> y, std::span<const double> u, ArxOrders orders) {
  return estimate_arx(y, u, orders, orders.max());
}

ArxEstimate estimate_arx(std::span<const double> y, std::span<const double> u, ArxOrders orders,
                         std::size_t start) {
  check_inputs(y, u, orders, start);
  const Eigen::Index rows = static_cast<Eigen::Index>(y.size() - start);
  const Eigen::Index na = static_cast<Eigen::Index>(orders.n_a);
  const Eigen::Index nb = static_cast<Eigen::Index>(orders.n_b);

  // Row t: [-y_{t-1} ... -y_{t-na}, u_{t-1} ... u_{t-nb}] theta = y_t.
  Eigen::MatrixXd phi(rows, na + nb);
  Eigen::VectorXd target(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::size_t t = start + static_cast<std::size_t>(i);
    for (Eigen::Index k = 0; k < na; ++k) phi(i, k) = -y[t - 1 - static_cast<std::size_t>(k)];
    for (Eigen::Index k = 0; k < nb; ++k) phi(i, na + k) = u[t - 1 - static_cast<std::size_t>(k)];
    target(i) = y[t];
  }

  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(phi);
  const Eigen::MatrixXd r =
      qr.matrixQR().topRows(na + nb).template triangularView<Eigen::Upper>();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(r).singularValues();
  const double rcond = sv(0) > 0.0 ? sv(sv.size() - 1) / sv(0) : 0.0;
  if (!(rcond >= kRankTolerance))
    throw Error(ErrorCode::kRankDeficient,
                fmt::format("regressor reciprocal condition {:.3g} below {:.0e}", rcond,
                            kRankTolerance));
  const Eigen::VectorXd theta = qr.solve(target);

  std::vector<double> a(orders.n_a + 1);
  std::vector<double> b(orders.n_b + 1, 0.0);
  a[0] = 1.0;
  for (Eigen::Index k = 0; k < na; ++k) a[static_cast<std::size_t>(k) + 1] = theta(k);
  for (Eigen::Index k = 0; k < nb; ++k) b[static_cast<std::size_t>(k) + 1] = theta(na + k);

  ArxEstimate est;
  est.A = Poly(std::move(a));
  est.B = Poly(std::move(b));
  est.N_eff = static_cast<std::size_t>(rows);
  est.orders = orders;
  est.first = start;
  const std::vector<double> eps = residuals(est, y, u);
  double ss = 0.0;
  for (double v : eps) ss += v * v;
  est.J_hat = ss / double(est.N_eff);
  return est;
}

std::vector<double> residuals(const ArxEstimate& est, std::span<const double> y,
                              std::span<const double> u) {
  check_inputs(y, u, est.orders, est.first);
  const std::size_t start = est.first;
  std::vector<double> eps(y.size() - start);
  for (std::size_t t = start; t < y.size(); ++t) {
    double v = y[t];
    for (std::size_t k = 1; k <= est.orders.n_a; ++k) v += est.A[k] * y[t - k];
    for (std::size_t k = 1; k <= est.orders.n_b; ++k) v -= est.B[k] * u[t - k];
    eps[t - start] = v;
  }
  return eps;
}

}  // namespace arxid
