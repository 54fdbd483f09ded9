#include "berezin/transform.hpp"

#include <string>

#include "berezin/error.hpp"
#include "berezin/mobius.hpp"

namespace berezin {

namespace {

void check_center(Complex a) {
  if (!is_finite(a) || std::abs(a) > kMaxCenterModulus) {
    throw DomainError("center modulus must be <= " + std::to_string(kMaxCenterModulus));
  }
}

/// Taylor series of phi_a with the degenerate truncation 0 promoted to 1.
PowerSeries phi_series(Complex a, int truncation, int power) {
  return mobius_power_taylor(a, power, std::max(truncation, power)).resized(truncation);
}

}  // namespace

BidegreeSeries berezin_exact_harmonic(const PowerSeries& K, const PowerSeries& L, int truncation) {
  BidegreeSeries grid(truncation, truncation);
  for (int m = 0; m <= std::min(truncation, K.truncation()); ++m) grid.at(m, 0) += K[m];
  for (int n = 0; n <= std::min(truncation, L.truncation()); ++n) grid.at(0, n) += std::conj(L[n]);
  return grid;
}

BidegreeSeries berezin_exact_log(Complex a, int truncation) {
  check_center(a);
  const PowerSeries p = phi_series(a, truncation, 1);
  BidegreeSeries grid = bidegree_scale(BidegreeSeries::outer(p, p), 0.5);
  grid.at(0, 0) -= 0.5;
  // ln|1 - conj(a) z| = -(1/2) sum_n (conj(a)^n z^n + a^n conj(z)^n) / n.
  const Complex ab = std::conj(a);
  Complex pa = 1.0, pab = 1.0;
  for (int n = 1; n <= truncation; ++n) {
    pa *= a;
    pab *= ab;
    grid.at(n, 0) -= 0.5 * pab / static_cast<double>(n);
    grid.at(0, n) -= 0.5 * pa / static_cast<double>(n);
  }
  return grid;
}

BidegreeSeries berezin_exact_pole(Complex a, int truncation) {
  check_center(a);
  const PowerSeries p = phi_series(a, truncation, 1);
  const PowerSeries q = phi_series(a, truncation, 2);
  BidegreeSeries grid = bidegree_scale(BidegreeSeries::outer(p, q), -1.0);
  grid = grid + bidegree_scale(BidegreeSeries::antiholomorphic(p), 2.0);
  grid.at(0, 0) += std::conj(a);
  return bidegree_scale(grid, 1.0 / (1.0 - std::norm(a)));
}

BidegreeSeries berezin_exact_conj_pole(Complex a, int truncation) {
  return bidegree_conjugate(berezin_exact_pole(a, truncation));
}

BidegreeSeries berezin_exact_monomial(int k, int l, int truncation) {
  if (k < 0 || l < 0 || k + l > 20) throw DomainError("monomial degrees must satisfy k, l >= 0 and k + l <= 20");
  if (k < l) return bidegree_conjugate(berezin_exact_monomial(l, k, truncation));
  // B = (1 - x)^2 z^d sum_n c_n x^n, x = |z|^2, d = k - l,
  // c_n = (n + 1)(n + d + 1) / (n + k + 1).
  const int d = k - l;
  auto c = [&](int n) -> double {
    if (n < 0) return 0.0;
    return (n + 1.0) * (n + d + 1.0) / (n + k + 1.0);
  };
  BidegreeSeries grid(truncation, truncation);
  for (int n = 0; n + d <= truncation; ++n) grid.at(n + d, n) = c(n) - 2.0 * c(n - 1) + c(n - 2);
  return grid;
}

ExactTransformResult berezin_exact_symbol(const Symbol& s, int truncation) {
  validate(s);
  ExactTransformResult out{berezin_exact_harmonic(s.holomorphic, s.antiholomorphic, truncation),
                           {Provenance::HarmonicFixedPoint}};
  for (const auto& atom : s.atoms) {
    switch (atom.kind) {
      case AtomKind::Log:
        out.grid = out.grid + atom.coeff * berezin_exact_log(atom.center, truncation);
        out.provenance.push_back(Provenance::LogAtomFormula);
        break;
      case AtomKind::Pole:
        out.grid = out.grid + atom.coeff * berezin_exact_pole(atom.center, truncation);
        out.provenance.push_back(Provenance::PoleAtomFormula);
        break;
      case AtomKind::ConjPole:
        out.grid = out.grid + atom.coeff * berezin_exact_conj_pole(atom.center, truncation);
        out.provenance.push_back(Provenance::ConjPoleFormula);
        break;
    }
  }
  return out;
}

double covariance_residual(const Symbol& s, Complex a, Complex z, const QuadratureRule& rule,
                           const GradingOptions& grading, int truncation) {
  validate(s);
  const DiskAutomorphism phi(a);
  const LinearFractional inv = phi.inverse();
  const auto& K = s.holomorphic;
  const auto& L = s.antiholomorphic;
  // s o phi_a, integrated term by term so each piece has at most one singular point.
  Complex numeric = berezin_numeric([&](Complex zeta) { return harmonic_eval(K, L, phi(zeta)); }, z,
                                    SingularityPlan{{}, grading}, rule);
  for (const auto& atom : s.atoms) {
    const SingularityPlan plan{{inv(atom.center)}, grading};
    numeric += berezin_numeric([&](Complex zeta) { return atom.eval(phi(zeta)); }, z, plan, rule);
  }
  const Complex exact = bidegree_eval(berezin_exact_symbol(s, truncation).grid, phi(z));
  return std::abs(numeric - exact);
}

Symbol preimage_phi_phibar(Complex a, int truncation) {
  check_center(a);
  std::vector<Complex> k(truncation + 1), l(truncation + 1);
  k[0] = 1.0;
  Complex pab = 1.0;
  for (int n = 1; n <= truncation; ++n) {
    pab *= std::conj(a);
    k[n] = pab / static_cast<double>(n);
    l[n] = k[n];
  }
  return {PowerSeries(std::move(k)), PowerSeries(std::move(l)), {log_atom(a, 2.0)}};
}

Symbol preimage_phi_phibar2(Complex a, int truncation) {
  check_center(a);
  Symbol s{PowerSeries::constant(std::conj(a)), 2.0 * phi_series(a, truncation, 1),
           {pole_atom(a, -(1.0 - std::norm(a)))}};
  return canonicalize(s);
}

Symbol preimage_phi2_phibar(Complex a, int truncation) {
  return canonicalize(conjugate(preimage_phi_phibar2(a, truncation)));
}

Symbol synthesize_symbol(const Theorem2Form& form, int truncation) {
  validate(form);
  Symbol u = Symbol::harmonic(form.holomorphic, form.antiholomorphic);
  for (const auto& node : form.nodes) {
    if (node.D != Complex{}) u = u + node.D * preimage_phi_phibar(node.a, truncation);
    if (node.E != Complex{}) u = u + node.E * preimage_phi2_phibar(node.a, truncation);
    if (node.F != Complex{}) u = u + node.F * preimage_phi_phibar2(node.a, truncation);
  }
  return canonicalize(u);
}

BidegreeSeries theorem2_grid(const Theorem2Form& form, int truncation) {
  validate(form);
  BidegreeSeries grid = berezin_exact_harmonic(form.holomorphic, form.antiholomorphic, truncation);
  for (const auto& node : form.nodes) {
    const PowerSeries p = phi_series(node.a, truncation, 1);
    const PowerSeries q = phi_series(node.a, truncation, 2);
    grid = grid + node.D * BidegreeSeries::outer(p, p) + node.E * BidegreeSeries::outer(q, p) +
           node.F * BidegreeSeries::outer(p, q);
  }
  return grid;
}

}  // namespace berezin
