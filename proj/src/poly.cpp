#include "arxid/poly.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "arxid/error.hpp"

namespace arxid {

Poly::Poly() : coeffs_{0.0} {}

Poly::Poly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  trim();
}

Poly::Poly(std::initializer_list<double> coeffs) : Poly(std::vector<double>(coeffs)) {}

void Poly::trim() {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

std::size_t Poly::delay() const {
  std::size_t k = 0;
  while (k < coeffs_.size() && coeffs_[k] == 0.0) ++k;
  return k;
}

std::complex<double> Poly::eval(std::complex<double> x) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> Poly::freq(double omega) const {
  return eval(std::polar(1.0, -omega));
}

Poly Poly::scaled(double s) const {
  std::vector<double> c = coeffs_;
  for (double& v : c) v *= s;
  return Poly(std::move(c));
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const double c = coeffs_[k];
    if (c == 0.0) continue;
    const double mag = std::abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (k == 0) {
      out += fmt::format("{:g}", mag);
    } else {
      if (mag != 1.0) out += fmt::format("{:g} ", mag);
      out += fmt::format("q^-{}", k);
    }
  }
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  std::vector<double> c(a.degree() + b.degree() + 1, 0.0);
  for (std::size_t i = 0; i <= a.degree(); ++i)
    for (std::size_t j = 0; j <= b.degree(); ++j) c[i + j] += a[i] * b[j];
  return Poly(std::move(c));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<double> c(std::max(a.degree(), b.degree()) + 1);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + b.scaled(-1.0); }

double relative_coeff_error(const Poly& candidate, const Poly& reference) {
  const std::size_t n = std::max(candidate.degree(), reference.degree()) + 1;
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    diff = std::max(diff, std::abs(candidate[k] - reference[k]));
    scale = std::max(scale, std::abs(reference[k]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

RootClass classify(std::complex<double> root) {
  const double r = std::abs(root);
  if (r < 1.0 - tol::kUnitCircle) return RootClass::kStable;
  if (r > 1.0 + tol::kUnitCircle) return RootClass::kAntiStable;
  return RootClass::kOnCircle;
}

const char* to_string(RootClass cls) {
  switch (cls) {
    case RootClass::kStable: return "stable";
    case RootClass::kAntiStable: return "antistable";
    case RootClass::kOnCircle: return "oncircle";
  }
  return "unknown";
}

namespace {

struct Weighted {
  std::complex<double> value;
  int multiplicity;
};

// Greedy clustering; members closer than tol::kCluster to a cluster's running
// mean join it.
std::vector<Weighted> cluster(std::vector<Weighted> items) {
  std::sort(items.begin(), items.end(), [](const Weighted& a, const Weighted& b) {
    return a.value.real() != b.value.real() ? a.value.real() < b.value.real()
                                            : a.value.imag() < b.value.imag();
  });
  std::vector<Weighted> out;
  for (const Weighted& w : items) {
    auto hit = std::find_if(out.begin(), out.end(), [&](const Weighted& c) {
      return std::abs(c.value - w.value) < tol::kCluster;
    });
    if (hit == out.end()) {
      out.push_back(w);
    } else {
      const int m = hit->multiplicity + w.multiplicity;
      hit->value = (hit->value * double(hit->multiplicity) + w.value * double(w.multiplicity)) /
                   double(m);
      hit->multiplicity = m;
    }
  }
  return out;
}

// reals: imaginary part ignored; uppers: imaginary part > 0, conjugates implied.
std::vector<Root> assemble(std::vector<Weighted> reals, std::vector<Weighted> uppers) {
  for (Weighted& w : reals) w.value = {w.value.real(), 0.0};
  reals = cluster(std::move(reals));
  uppers = cluster(std::move(uppers));
  std::vector<Root> out;
  out.reserve(reals.size() + 2 * uppers.size());
  for (const Weighted& w : reals) out.push_back({w.value, w.multiplicity, classify(w.value)});
  for (const Weighted& w : uppers) {
    const RootClass cls = classify(w.value);
    out.push_back({w.value, w.multiplicity, cls});
    out.push_back({std::conj(w.value), w.multiplicity, cls});
  }
  return out;
}

void split(const std::vector<Root>& roots, std::vector<Weighted>& reals,
           std::vector<Weighted>& uppers) {
  for (const Root& r : roots) {
    if (r.value.imag() == 0.0)
      reals.push_back({r.value, r.multiplicity});
    else if (r.value.imag() > 0.0)
      uppers.push_back({r.value, r.multiplicity});
  }
}

// Parlett-Reinsch diagonal similarity scaling with powers of two.
void balance(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / 2.0;
      while (c < g) {
        f *= 2.0;
        c *= 4.0;
      }
      g = r * 2.0;
      while (c > g) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace

RootSet RootSet::from_values(std::span<const std::complex<double>> values) {
  std::vector<Weighted> reals;
  std::vector<Weighted> uppers;
  std::vector<std::complex<double>> lowers;
  for (const auto& v : values) {
    if (std::abs(v.imag()) < tol::kConj)
      reals.push_back({{v.real(), 0.0}, 1});
    else if (v.imag() > 0.0)
      uppers.push_back({v, 1});
    else
      lowers.push_back(v);
  }
  if (uppers.size() != lowers.size())
    throw Error(ErrorCode::kInvalidArgument, "root values are not closed under conjugation");
  for (const Weighted& u : uppers) {
    auto best = std::min_element(lowers.begin(), lowers.end(), [&](const auto& a, const auto& b) {
      return std::abs(a - std::conj(u.value)) < std::abs(b - std::conj(u.value));
    });
    if (std::abs(*best - std::conj(u.value)) > tol::kRecon * std::max(1.0, std::abs(u.value)))
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("root ({}, {}) has no conjugate partner", u.value.real(),
                              u.value.imag()));
    lowers.erase(best);
  }
  RootSet set;
  set.roots_ = assemble(std::move(reals), std::move(uppers));
  return set;
}

std::size_t RootSet::count() const {
  std::size_t n = 0;
  for (const Root& r : roots_) n += static_cast<std::size_t>(r.multiplicity);
  return n;
}

bool RootSet::any(RootClass cls) const {
  return std::any_of(roots_.begin(), roots_.end(), [cls](const Root& r) { return r.cls == cls; });
}

RootSet RootSet::subset(RootClass cls) const {
  RootSet out;
  for (const Root& r : roots_)
    if (r.cls == cls) out.roots_.push_back(r);
  return out;
}

std::vector<std::complex<double>> RootSet::values() const {
  std::vector<std::complex<double>> out;
  for (const Root& r : roots_)
    for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.value);
  return out;
}

Poly RootSet::expand() const {
  // Leja ordering: each next factor maximizes the product of distances to the
  // roots already multiplied in. Sorted or clustered orders make the partial
  // products' coefficients grow by many orders of magnitude and then cancel.
  std::vector<const Root*> pending;
  for (const Root& r : roots_)
    if (r.value.imag() >= 0.0) pending.push_back(&r);
  std::vector<double> score(pending.size(), 0.0);

  Poly p = Poly::one();
  while (!pending.empty()) {
    std::size_t pick = 0;
    if (p.degree() == 0) {
      for (std::size_t i = 1; i < pending.size(); ++i)
        if (std::abs(pending[i]->value) > std::abs(pending[pick]->value)) pick = i;
    } else {
      for (std::size_t i = 1; i < pending.size(); ++i)
        if (score[i] > score[pick]) pick = i;
    }
    const Root& r = *pending[pick];
    const Poly factor = r.value.imag() == 0.0
                            ? Poly{1.0, -r.value.real()}
                            : Poly{1.0, -2.0 * r.value.real(), std::norm(r.value)};
    for (int k = 0; k < r.multiplicity; ++k) p = p * factor;

    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));
    score.erase(score.begin() + static_cast<std::ptrdiff_t>(pick));
    for (std::size_t i = 0; i < pending.size(); ++i) {
      const auto z = pending[i]->value;
      double d = std::log(std::max(std::abs(z - r.value), 1e-300));
      if (r.value.imag() != 0.0) d += std::log(std::max(std::abs(z - std::conj(r.value)), 1e-300));
      score[i] += r.multiplicity * d;
    }
  }
  return p;
}

RootSet RootSet::reciprocal() const {
  std::vector<Weighted> reals;
  std::vector<Weighted> uppers;
  for (const Root& r : roots_) {
    if (r.value.imag() == 0.0)
      reals.push_back({1.0 / r.value, r.multiplicity});
    else if (r.value.imag() > 0.0)
      uppers.push_back({std::conj(1.0 / r.value), r.multiplicity});
  }
  RootSet out;
  out.roots_ = assemble(std::move(reals), std::move(uppers));
  return out;
}

RootSet RootSet::merged(const RootSet& other) const {
  std::vector<Weighted> reals;
  std::vector<Weighted> uppers;
  split(roots_, reals, uppers);
  split(other.roots_, reals, uppers);
  RootSet out;
  out.roots_ = assemble(std::move(reals), std::move(uppers));
  return out;
}

RootSet roots(const Poly& p) {
  if (p.is_zero()) throw Error(ErrorCode::kZeroPolynomial, "roots of the zero polynomial");
  const std::size_t first = p.delay();
  const auto c = p.coeffs().subspan(first);
  const Eigen::Index m = static_cast<Eigen::Index>(c.size()) - 1;
  if (m == 0) return {};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) companion(0, k) = -c[k + 1] / c[0];
  for (Eigen::Index k = 1; k < m; ++k) companion(k, k - 1) = 1.0;
  balance(companion);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::kInvalidArgument, "companion eigenvalue iteration did not converge");
  const Eigen::VectorXcd ev = solver.eigenvalues();
  std::vector<std::complex<double>> values(ev.data(), ev.data() + ev.size());
  return RootSet::from_values(values);
}

namespace {

void require_monic(const Poly& f, const char* what) {
  if (std::abs(f[0] - 1.0) > 1e-12)
    throw Error(ErrorCode::kInvalidArgument, fmt::format("{} must be monic, got {}", what,
                                                         f.to_string()));
}

void require_antistable(const RootSet& rs) {
  for (const Root& r : rs.roots())
    if (r.cls != RootClass::kAntiStable)
      throw Error(ErrorCode::kNotAntiStable,
                  fmt::format("root ({}, {}) with modulus {} is not anti-stable", r.value.real(),
                              r.value.imag(), std::abs(r.value)));
}

}  // namespace

StableAntiStable factor_stable_antistable(const Poly& f) {
  require_monic(f, "factored polynomial");
  const RootSet rs = roots(f);
  for (const Root& r : rs.roots())
    if (r.cls == RootClass::kOnCircle)
      throw Error(ErrorCode::kRootOnUnitCircle,
                  fmt::format("root ({}, {}) with modulus {} lies on the unit circle",
                              r.value.real(), r.value.imag(), std::abs(r.value)));
  // Avoid a lossy re-expansion when the split is trivial.
  if (!rs.any(RootClass::kAntiStable)) return {f, Poly::one()};
  if (!rs.any(RootClass::kStable)) return {Poly::one(), f};
  return {rs.subset(RootClass::kStable).expand(), rs.subset(RootClass::kAntiStable).expand()};
}

Poly mirror(const Poly& f_a) {
  require_monic(f_a, "anti-stable factor");
  const RootSet rs = roots(f_a);
  require_antistable(rs);
  return rs.reciprocal().expand();
}

double allpass_gain(const Poly& f_a) {
  require_monic(f_a, "anti-stable factor");
  require_antistable(roots(f_a));
  // Monic: c_n = prod(-p_k), so c_n^2 = prod |p_k|^2.
  const double cn = f_a[f_a.degree()];
  return cn * cn;
}

}  // namespace arxid
