#ifndef ARXID_POLY_HPP
#define ARXID_POLY_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace arxid {

// Numerical tolerances shared by the polynomial and transfer-function code.
namespace tol {
inline constexpr double kUnitCircle = 1e-6;  // |p| within 1 +- this is "on circle"
inline constexpr double kConj = 1e-8;        // imaginary residue treated as zero
inline constexpr double kRecon = 1e-6;       // relative error for re-expansion checks
inline constexpr double kCluster = 1e-6;     // eigenvalues closer than this are one root
}  // namespace tol

/// Real polynomial in the delay operator, c[0] + c[1] q^-1 + ... + c[n] q^-n.
///
/// Coefficients are stored lowest order first. Trailing exact zeros are
/// trimmed so degree() is well defined; the zero polynomial is stored as [0].
/// Leading zeros are kept: B(q) = b_1 q^-1 + ... is [0, b_1, ...].
class Poly {
 public:
  Poly();
  explicit Poly(std::vector<double> coeffs);
  Poly(std::initializer_list<double> coeffs);

  static Poly one() { return Poly{1.0}; }

  std::size_t degree() const { return coeffs_.size() - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  bool is_monic() const { return coeffs_[0] == 1.0; }

  /// Index of the first nonzero coefficient (number of pure delays).
  std::size_t delay() const;

  std::span<const double> coeffs() const { return coeffs_; }
  const std::vector<double>& vec() const { return coeffs_; }

  /// Coefficient of q^-k; zero beyond the degree.
  double operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }

  /// Evaluates the polynomial at q^-1 = x.
  std::complex<double> eval(std::complex<double> x) const;

  /// Evaluates on the unit circle, q = e^{i omega}.
  std::complex<double> freq(double omega) const;

  Poly scaled(double s) const;

  /// Renders as e.g. "1 - 2 q^-1 + 2 q^-2".
  std::string to_string() const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim();

  std::vector<double> coeffs_;
};

Poly operator*(const Poly& a, const Poly& b);
Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);

inline Poly poly_mul(const Poly& a, const Poly& b) { return a * b; }
inline Poly poly_add(const Poly& a, const Poly& b) { return a + b; }

/// Largest absolute coefficient difference divided by the largest absolute
/// coefficient of `reference`.
double relative_coeff_error(const Poly& candidate, const Poly& reference);

enum class RootClass { kStable, kAntiStable, kOnCircle };

RootClass classify(std::complex<double> root);
const char* to_string(RootClass cls);

struct Root {
  std::complex<double> value;
  int multiplicity = 1;
  RootClass cls = RootClass::kStable;
};

/// Roots in the z variable (zeros of z^n P(1/z)) of a real polynomial.
///
/// Closed under conjugation: every complex root with positive imaginary part
/// is immediately followed by its exact conjugate. Real roots carry an exactly
/// zero imaginary part.
class RootSet {
 public:
  RootSet() = default;

  /// Builds a set from raw values: truncates imaginary residue below
  /// tol::kConj, pairs conjugates, clusters repeats within tol::kCluster and
  /// classifies against the unit circle. Throws if the values are not
  /// conjugate-closed.
  static RootSet from_values(std::span<const std::complex<double>> values);

  const std::vector<Root>& roots() const { return roots_; }

  /// Root count including multiplicity.
  std::size_t count() const;
  bool empty() const { return roots_.empty(); }

  bool any(RootClass cls) const;
  RootSet subset(RootClass cls) const;

  /// Flat list with each root repeated by its multiplicity.
  std::vector<std::complex<double>> values() const;

  /// Monic product of (1 - p q^-1) over the set, built from real linear and
  /// quadratic factors.
  Poly expand() const;

  /// Set of reciprocals 1/p with the same multiplicities.
  RootSet reciprocal() const;

  /// Multiset union.
  RootSet merged(const RootSet& other) const;

 private:
  std::vector<Root> roots_;
};

/// Companion-matrix eigenvalues of the reversed polynomial. Leading zero
/// coefficients (pure delays) contribute no roots.
RootSet roots(const Poly& p);

struct StableAntiStable {
  Poly stable;
  Poly antistable;
};

/// Splits a monic polynomial into its stable and anti-stable monic factors.
StableAntiStable factor_stable_antistable(const Poly& f);

/// Monic polynomial whose roots are the reciprocals of an anti-stable f_a's.
Poly mirror(const Poly& f_a);

/// Squared all-pass magnitude |f_a / mirror(f_a)|^2 on the unit circle, the
/// product of |p_k|^2 over the roots of f_a.
double allpass_gain(const Poly& f_a);

}  // namespace arxid

#endif  // ARXID_POLY_HPP
