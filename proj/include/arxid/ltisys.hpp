#ifndef ARXID_LTISYS_HPP
#define ARXID_LTISYS_HPP

#include <complex>
#include <string>
#include <vector>

#include "arxid/poly.hpp"

namespace arxid {

/// Ratio of two polynomials in q^-1 with a monic denominator.
///
/// Construction normalizes the denominator to monic and folds the constant into
/// the numerator. No pole-zero cancellation is ever performed.
class RationalTF {
 public:
  RationalTF() : num_(Poly::one()), den_(Poly::one()) {}
  RationalTF(Poly num, Poly den);
  explicit RationalTF(Poly num) : RationalTF(std::move(num), Poly::one()) {}

  static RationalTF identity() { return {}; }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  /// Value at q = e^{i omega}. Throws PoleOnGrid if the denominator vanishes.
  std::complex<double> freq(double omega) const;

  std::string to_string() const;

 private:
  Poly num_;
  Poly den_;
};

/// Series connection, num and den multiplied without cancellation.
RationalTF operator*(const RationalTF& a, const RationalTF& b);
/// Parallel connection over the common denominator den_a * den_b.
RationalTF operator+(const RationalTF& a, const RationalTF& b);

/// Data-generating system y = G u + H e with G = L / (Gamma F) and
/// H = C / (Gamma D), fed back through u = r - K y.
struct SystemSpec {
  Poly L;
  Poly Gamma = Poly::one();
  Poly F = Poly::one();
  Poly C = Poly::one();
  Poly D = Poly::one();
  RationalTF K;
  double lambda_e = 1.0;  // innovation variance
  double lambda_r = 1.0;  // variance of the white reference
};

/// Plant (q^-1 - 1.7 q^-2) / (1 - 2 q^-1 + 2 q^-2), noise model
/// (1 + 0.2 q^-1) / (1 - 0.9 q^-1), unit feedback and unit variances.
SystemSpec example_system();

/// Throws InvalidArgument when the standing assumptions fail: monic Gamma, F, C,
/// D; stable C and D; no unit-circle roots in F; F and D coprime; positive
/// lambda_r and nonnegative lambda_e.
void validate(const SystemSpec& spec);

RationalTF make_G(const SystemSpec& spec);
RationalTF make_H(const SystemSpec& spec);

/// S = 1 / (1 + K G) with denominator den(G) den(K) + num(K) num(G).
RationalTF sensitivity(const RationalTF& G, const RationalTF& K);

/// The four closed-loop maps y = GS r + HS e, u = S r - KHS e.
///
/// Built from the structured polynomials so the plant denominator Gamma F
/// never appears as an uncancelled factor: with P = Gamma F Kd + Kn L,
///   S = Gamma F Kd / P, GS = L Kd / P, HS = C F Kd / (D P), KHS = Kn C F / (D P).
struct ClosedLoop {
  RationalTF S;
  RationalTF GS;
  RationalTF HS;
  RationalTF KHS;
};

ClosedLoop closed_loop(const SystemSpec& spec);

/// True iff every denominator root has modulus below 1 - tol::kUnitCircle.
/// Throws RootOnUnitCircle when stability cannot be decided.
bool is_stable(const RationalTF& tf);

struct FreqGrid {
  std::vector<double> omegas;  // strictly increasing, in (0, pi]

  static FreqGrid log_spaced(double omega_min, double omega_max, std::size_t points);
  static FreqGrid linear(double omega_min, double omega_max, std::size_t points);
  void validate() const;
};

std::vector<std::complex<double>> freq_response(const RationalTF& tf, const FreqGrid& grid);

}  // namespace arxid

#endif  // ARXID_LTISYS_HPP
