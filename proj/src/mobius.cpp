#include "berezin/mobius.hpp"

#include <string>

#include "berezin/error.hpp"

namespace berezin {

namespace {
constexpr double kDenominatorFloor = 1e-14;
}

Complex LinearFractional::operator()(Complex w) const {
  const Complex den = gamma * w + delta;
  if (std::abs(den) < kDenominatorFloor) throw DomainError("linear fractional map evaluated at its pole");
  return (alpha * w + beta) / den;
}

DiskAutomorphism::DiskAutomorphism(Complex a) : a_(a) {
  if (!is_finite(a)) throw DomainError("automorphism parameter is not finite");
  if (std::abs(a) > kMaxCenterModulus) {
    throw DomainError("automorphism parameter |a| = " + std::to_string(std::abs(a)) + " exceeds " +
                      std::to_string(kMaxCenterModulus));
  }
}

Complex DiskAutomorphism::operator()(Complex z) const {
  if (!is_finite(z)) throw DomainError("evaluation point is not finite");
  const Complex den = 1.0 - std::conj(a_) * z;
  if (std::abs(den) < kDenominatorFloor) throw DomainError("denominator 1 - conj(a) z vanishes");
  return (z - a_) / den;
}

LinearFractional DiskAutomorphism::inverse() const { return {1.0, a_, std::conj(a_), 1.0}; }

Complex DiskAutomorphism::derivative(Complex z) const {
  const Complex den = 1.0 - std::conj(a_) * z;
  if (std::abs(den) < kDenominatorFloor) throw DomainError("denominator 1 - conj(a) z vanishes");
  return (1.0 - std::norm(a_)) / (den * den);
}

Complex mobius_eval(const DiskAutomorphism& phi, Complex z) { return phi(z); }

LinearFractional mobius_inverse(const DiskAutomorphism& phi) { return phi.inverse(); }

PowerSeries mobius_power_taylor(Complex a, int j, int truncation) {
  if (j < 1 || j > 3) throw DomainError("mobius_power_taylor supports powers 1..3, got " + std::to_string(j));
  if (truncation < j) {
    throw TruncationError("truncation " + std::to_string(truncation) + " below power " + std::to_string(j));
  }
  if (std::abs(a) >= 1.0 || !is_finite(a)) throw DomainError("|a| must be < 1");
  // phi_a = (z - a) sum (conj(a) z)^n  =>  c_0 = -a, c_n = conj(a)^{n-1} (1 - |a|^2).
  std::vector<Complex> c(truncation + 1);
  c[0] = -a;
  const Complex ab = std::conj(a);
  Complex p = 1.0 - std::norm(a);
  for (int n = 1; n <= truncation; ++n) {
    c[n] = p;
    p *= ab;
  }
  PowerSeries phi(std::move(c));
  PowerSeries out = phi;
  for (int k = 1; k < j; ++k) out = multiply(out, phi, truncation);
  return out;
}

}  // namespace berezin
