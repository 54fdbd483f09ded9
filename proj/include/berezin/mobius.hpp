#pragma once

#include "berezin/series.hpp"
#include "berezin/types.hpp"

namespace berezin {

/// w -> (alpha w + beta) / (gamma w + delta).
struct LinearFractional {
  Complex alpha{1.0}, beta{}, gamma{}, delta{1.0};

  Complex operator()(Complex w) const;
};

/// The disk automorphism phi_a(z) = (z - a) / (1 - conj(a) z).
///
/// Construction rejects non-finite parameters and |a| > kMaxCenterModulus.
class DiskAutomorphism {
 public:
  explicit DiskAutomorphism(Complex a);

  Complex a() const { return a_; }
  Complex operator()(Complex z) const;
  /// The inverse map w -> (w + a) / (1 + conj(a) w).
  LinearFractional inverse() const;
  /// phi_a'(z) = (1 - |a|^2) / (1 - conj(a) z)^2.
  Complex derivative(Complex z) const;

 private:
  Complex a_;
};

Complex mobius_eval(const DiskAutomorphism& phi, Complex z);
LinearFractional mobius_inverse(const DiskAutomorphism& phi);

/// Taylor coefficients of phi_a(z)^j about 0 up to degree `truncation`.
/// j must lie in {1, 2, 3}; TruncationError if truncation < j.
PowerSeries mobius_power_taylor(Complex a, int j, int truncation = kDefaultTruncation);

}  // namespace berezin
