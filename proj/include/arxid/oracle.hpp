#ifndef ARXID_ORACLE_HPP
#define ARXID_ORACLE_HPP

#include <cstddef>

#include "arxid/ltisys.hpp"
#include "arxid/poly.hpp"

namespace arxid {

inline constexpr std::size_t kDefaultQuadraturePoints = 4096;

/// Frequency-domain ARX cost split into its reference and noise parts.
struct CostDecomposition {
  double J_r = 0.0;
  double J_e = 0.0;
  double J_total = 0.0;
  std::size_t quadrature_points = 0;
};

/// Evaluates
///   J_r = 1/2pi int |A GS - B S|^2 lambda_r dw,
///   J_e = 1/2pi int |A HS + B KHS|^2 lambda_e dw
/// by the uniform trapezoid rule with M points on [-pi, pi) (M a power of two).
/// The integrands are even in w, so only [0, pi] is sampled.
CostDecomposition quadrature_cost(const Poly& A, const Poly& B, const SystemSpec& spec,
                                  std::size_t M = kDefaultQuadraturePoints);

struct QuadraticMinimum {
  Poly X_min;
  double J_min = 0.0;
};

/// Minimizes the quadrature approximation of 1/2pi int |X Z|^2 dw over monic X
/// of degree m. The cost is quadratic in X's coefficients; the normal
/// equations are Toeplitz in the quadrature moments of |Z|^2.
///
/// Z must be monic at infinity and both Z and 1/Z stable (UnstableZ otherwise).
QuadraticMinimum verify_proposition1(const RationalTF& Z, std::size_t m,
                                     std::size_t M = kDefaultQuadraturePoints);

/// First m + 1 impulse-response coefficients of tf by long division. Throws
/// UnstableExpansion if the denominator has roots on or outside the unit circle.
Poly power_series(const RationalTF& tf, std::size_t m);

}  // namespace arxid

#endif  // ARXID_ORACLE_HPP
