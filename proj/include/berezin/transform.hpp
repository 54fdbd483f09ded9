#pragma once

#include <vector>

#include "berezin/quadrature.hpp"
#include "berezin/series.hpp"
#include "berezin/symbol.hpp"

namespace berezin {

enum class Provenance { HarmonicFixedPoint, LogAtomFormula, PoleAtomFormula, ConjPoleFormula, MonomialSeries };

struct ExactTransformResult {
  BidegreeSeries grid;
  std::vector<Provenance> provenance;
};

/// Harmonic functions are fixed points: the grid of K + conj(L).
BidegreeSeries berezin_exact_harmonic(const PowerSeries& K, const PowerSeries& L,
                                      int truncation = kDefaultTruncation);

/// B(ln|zeta - a|) = (phi_a conj(phi_a) - 1) / 2 + ln|1 - conj(a) z|.
BidegreeSeries berezin_exact_log(Complex a, int truncation = kDefaultTruncation);

/// B(1/(zeta - a)) = (conj(a) + 2 conj(phi_a) - phi_a conj(phi_a)^2) / (1 - |a|^2).
BidegreeSeries berezin_exact_pole(Complex a, int truncation = kDefaultTruncation);

/// B(1/conj(zeta - a)): the conjugate of the pole grid.
BidegreeSeries berezin_exact_conj_pole(Complex a, int truncation = kDefaultTruncation);

/// B(zeta^k conj(zeta)^l) as a truncated radial series; k + l <= 20.
BidegreeSeries berezin_exact_monomial(int k, int l, int truncation = kDefaultTruncation);

/// Exact transform of a symbol by linearity over its harmonic part and atoms.
ExactTransformResult berezin_exact_symbol(const Symbol& s, int truncation = kDefaultTruncation);

/// |berezin_numeric(s o phi_a, z) - B(s)(phi_a(z))|, with the exact side
/// taken from berezin_exact_symbol.
double covariance_residual(const Symbol& s, Complex a, Complex z, const QuadratureRule& rule = {},
                           const GradingOptions& grading = {}, int truncation = kDefaultTruncation);

/// Symbols whose transforms are the rank-one products of a node.
/// phi conj(phi) from 2 ln|zeta - a| - 2 ln|1 - conj(a) zeta| + 1.
Symbol preimage_phi_phibar(Complex a, int truncation = kDefaultTruncation);
/// phi conj(phi)^2 from conj(a) + 2 conj(phi) - (1 - |a|^2) / (zeta - a).
Symbol preimage_phi_phibar2(Complex a, int truncation = kDefaultTruncation);
/// phi^2 conj(phi), the conjugate of the previous one.
Symbol preimage_phi2_phibar(Complex a, int truncation = kDefaultTruncation);

/// Symbol whose transform equals the given Theorem-2 form.
Symbol synthesize_symbol(const Theorem2Form& form, int truncation = kDefaultTruncation);

/// Grid of the form assembled directly from products of phi-series.
BidegreeSeries theorem2_grid(const Theorem2Form& form, int truncation = kDefaultTruncation);

}  // namespace berezin
