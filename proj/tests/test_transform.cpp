#include <doctest.h>

#include "berezin/error.hpp"
#include "berezin/mobius.hpp"
#include "berezin/rank.hpp"
#include "berezin/transform.hpp"

using namespace berezin;

namespace {

// Closed forms evaluated pointwise, independent of the series code.
Complex phi(Complex a, Complex z) { return (z - a) / (1.0 - std::conj(a) * z); }

Complex log_closed(Complex a, Complex z) {
  const Complex p = phi(a, z);
  return (p * std::conj(p) - 1.0) / 2.0 + std::log(std::abs(1.0 - std::conj(a) * z));
}

Complex pole_closed(Complex a, Complex z) {
  const Complex p = phi(a, z), pb = std::conj(p);
  return (std::conj(a) + 2.0 * pb - p * pb * pb) / (1.0 - std::norm(a));
}

const Complex kPoints[] = {{0.0, 0.0}, {0.5, 0.0}, {-0.3, 0.6}, {0.1, -0.85}, {0.7, 0.2}};

}  // namespace

TEST_SUITE("transform") {

TEST_CASE("anchors at the origin") {
  const auto lg = berezin_exact_log(0.0);
  const auto pl = berezin_exact_pole(0.0);
  for (const Complex z : kPoints) {
    CHECK(std::abs(bidegree_eval(lg, z) - (z * std::conj(z) - 1.0) / 2.0) < 1e-15);
    CHECK(std::abs(bidegree_eval(pl, z) - (2.0 * std::conj(z) - z * std::conj(z) * std::conj(z))) < 1e-15);
  }
  CHECK(std::abs(bidegree_eval(lg, 0.5) + 0.375) < 1e-16);
}

TEST_CASE("off-centre atoms match the closed forms") {
  const Complex a(0.35, -0.5);
  const auto lg = berezin_exact_log(a, 200);
  const auto pl = berezin_exact_pole(a, 200);
  const auto cp = berezin_exact_conj_pole(a, 200);
  for (const Complex z : kPoints) {
    CHECK(std::abs(bidegree_eval(lg, z) - log_closed(a, z)) < 1e-12);
    CHECK(std::abs(bidegree_eval(pl, z) - pole_closed(a, z)) < 1e-12);
    CHECK(std::abs(bidegree_eval(cp, z) - std::conj(pole_closed(a, z))) < 1e-12);
  }
}

TEST_CASE("exact agrees with quadrature") {
  const Symbol s{PowerSeries({0.5, Complex(0, 1)}), PowerSeries({0.0, 0.25}),
                 {log_atom(Complex(0.6, 0.3), 1.5), pole_atom(Complex(-0.7, 0.1), Complex(0, 1)),
                  conj_pole_atom(Complex(0.1, -0.2), 0.5)}};
  const auto g = berezin_exact_symbol(s, 400).grid;
  for (const Complex z : {Complex(0.2, 0.1), Complex(-0.8, 0.3), Complex(0.0, 0.9)}) {
    CHECK(std::abs(berezin_numeric(s, z) - bidegree_eval(g, z)) < 1e-6);
  }
}

TEST_CASE("monomials against independent quadrature values") {
  // reference values from 30-digit adaptive quadrature
  CHECK(std::abs(bidegree_eval(berezin_exact_monomial(1, 1, 200), 0.5) - 0.589138652066028347) < 1e-12);
  CHECK(std::abs(bidegree_eval(berezin_exact_monomial(2, 1, 200), Complex(0.3, 0.2)) -
                 Complex(0.206861747309587585, 0.137907831539725057)) < 1e-12);
  CHECK(std::abs(bidegree_eval(berezin_exact_monomial(1, 3, 200), Complex(-0.1, 0.4)) -
                 Complex(-0.115290330879569547, 0.0614881764691037582)) < 1e-12);
  CHECK_THROWS_AS(berezin_exact_monomial(15, 6), DomainError);
}

TEST_CASE("harmonic symbols are fixed points") {
  const PowerSeries K({1.0, Complex(0, 2), 0.5}), L({0.0, 0.3, Complex(0.1, 0.1)});
  const auto g = berezin_exact_harmonic(K, L);
  const Complex z(0.4, -0.3);
  CHECK(std::abs(bidegree_eval(g, z) - harmonic_eval(K, L, z)) < 1e-15);
  CHECK(std::abs(berezin_numeric(Symbol::harmonic(K, L), z) - harmonic_eval(K, L, z)) < 1e-10);
  CHECK(berezin_exact_symbol(Symbol::harmonic(K, L)).provenance.front() == Provenance::HarmonicFixedPoint);
}

TEST_CASE("Mobius covariance") {
  const Symbol s{PowerSeries({0.0, 1.0}), PowerSeries{}, {log_atom(Complex(0.2, 0.4)), pole_atom(Complex(-0.3, 0.0))}};
  CHECK(covariance_residual(s, Complex(0.5, -0.3), Complex(0.2, 0.1)) < 1e-5);
  CHECK(covariance_residual(s, Complex(-0.7, 0.2), Complex(-0.4, 0.3)) < 1e-5);
}

TEST_CASE("product preimages") {
  const Complex a(0.3, 0.45);
  const PowerSeries p = mobius_power_taylor(a, 1), q = mobius_power_taylor(a, 2);
  CHECK(max_abs_diff(berezin_exact_symbol(preimage_phi_phibar(a)).grid, BidegreeSeries::outer(p, p)) < 1e-12);
  CHECK(max_abs_diff(berezin_exact_symbol(preimage_phi_phibar2(a)).grid, BidegreeSeries::outer(p, q)) < 1e-12);
  CHECK(max_abs_diff(berezin_exact_symbol(preimage_phi2_phibar(a)).grid, BidegreeSeries::outer(q, p)) < 1e-12);

  // Without the constant term the log combination misses phi conj(phi) by exactly 1.
  Symbol bare = preimage_phi_phibar(a);
  bare.holomorphic.at(0) -= 1.0;
  const auto g = berezin_exact_symbol(bare).grid;
  const Complex z(0.2, -0.6);
  CHECK(std::abs(bidegree_eval(g, z) - (std::norm(phi(a, z)) - 1.0)) < 1e-12);
  CHECK(numerical_rank(BidegreeSeries::outer(p, q)).rank == 1);
}

TEST_CASE("synthesized symbols reproduce their form") {
  Theorem2Form f;
  f.holomorphic = PowerSeries({0.2, 0.1});
  f.antiholomorphic = PowerSeries({0.0, Complex(0, 0.3)});
  f.nodes = {{Complex(0.3, 0.1), 1.0, Complex(0, 0.5), 0.25}, {Complex(-0.5, 0.2), 0.0, 0.0, Complex(1, -1)}};
  CHECK(max_abs_diff(berezin_exact_symbol(synthesize_symbol(f)).grid, theorem2_grid(f)) < 1e-12);
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(berezin_exact_log(Complex(0.97, 0)), DomainError);
  CHECK_NOTHROW(berezin_exact_pole(Complex(0.95, 0)));
}

}
