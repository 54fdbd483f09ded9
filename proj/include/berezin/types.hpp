#pragma once

#include <cmath>
#include <complex>

namespace berezin {

using Complex = std::complex<double>;

/// Default coefficient truncation for power and bidegree series.
inline constexpr int kDefaultTruncation = 80;

/// Hard ceiling on any series truncation.
inline constexpr int kMaxTruncation = 1024;

/// Atom centers and automorphism parameters must satisfy |a| <= this.
inline constexpr double kMaxCenterModulus = 0.95;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace berezin
