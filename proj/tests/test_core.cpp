#include <doctest.h>

#include "berezin/error.hpp"
#include "berezin/mobius.hpp"
#include "berezin/series.hpp"

using namespace berezin;

TEST_SUITE("core") {

TEST_CASE("power series arithmetic") {
  const PowerSeries a({1.0, 2.0});
  const PowerSeries b({0.0, Complex(0, 1), 3.0});
  const PowerSeries s = a + b;
  CHECK(s.truncation() == 2);
  CHECK(s[1] == Complex(2, 1));
  CHECK(s[7] == Complex{});
  // (1 + 2z)(iz + 3z^2) = iz + (3 + 2i) z^2 + 6 z^3
  const PowerSeries p = multiply(a, b, 3);
  CHECK(p[1] == Complex(0, 1));
  CHECK(p[2] == Complex(3, 2));
  CHECK(p[3] == Complex(6, 0));
  CHECK(multiply(a, b, 2).truncation() == 2);
  CHECK(p.degree() == 3);
  CHECK(PowerSeries::zero(4).degree() == -1);
  CHECK(std::abs(p.eval(0.5) - (1.0 + 1.0) * (Complex(0, 0.5) + 0.75)) < 1e-15);
}

TEST_CASE("truncation limits") {
  CHECK_THROWS_AS(PowerSeries::zero(kMaxTruncation + 1), TruncationOverflow);
  CHECK_THROWS_AS(PowerSeries::zero(-1), TruncationOverflow);
  const BidegreeSeries big(90, 3);
  CHECK_THROWS_AS(bidegree_multiply(big, BidegreeSeries(2, 2)), TruncationOverflow);
  const BidegreeSeries c = bidegree_multiply(BidegreeSeries(50, 50), BidegreeSeries(50, 50));
  CHECK(c.m_truncation() == kDefaultTruncation);
}

TEST_CASE("bidegree multiply and conjugate") {
  // (z + conj z)(z - conj z) = z^2 - conj(z)^2
  BidegreeSeries u(1, 1), v(1, 1);
  u.at(1, 0) = 1.0;
  u.at(0, 1) = 1.0;
  v.at(1, 0) = 1.0;
  v.at(0, 1) = -1.0;
  const BidegreeSeries w = bidegree_multiply(u, v);
  CHECK(w(2, 0) == Complex(1));
  CHECK(w(0, 2) == Complex(-1));
  CHECK(w(1, 1) == Complex(0));
  const Complex z(0.3, -0.4);
  CHECK(std::abs(bidegree_eval(w, z) - (z * z - std::conj(z * z))) < 1e-15);

  BidegreeSeries g(2, 1);
  g.at(2, 1) = Complex(1, 2);
  const BidegreeSeries gc = bidegree_conjugate(g);
  CHECK(gc(1, 2) == Complex(1, -2));
  CHECK(std::abs(bidegree_eval(gc, z) - std::conj(bidegree_eval(g, z))) < 1e-15);
}

TEST_CASE("outer product grid") {
  const PowerSeries f({1.0, 2.0}), g({Complex(0, 1), 1.0});
  const BidegreeSeries o = BidegreeSeries::outer(f, g);
  const Complex z(0.2, 0.5);
  CHECK(std::abs(bidegree_eval(o, z) - f.eval(z) * std::conj(g.eval(z))) < 1e-15);
}

TEST_CASE("disk automorphism") {
  const Complex a(0.3, 0.4);
  const DiskAutomorphism phi(a);
  CHECK(std::abs(phi(a)) < 1e-16);
  CHECK(std::abs(phi(0.0) + a) < 1e-16);
  const Complex z(-0.5, 0.2);
  CHECK(std::abs(phi.inverse()(phi(z)) - z) < 1e-15);
  CHECK(std::abs(DiskAutomorphism(-a)(phi(z)) - z) < 1e-15);
  CHECK(std::abs(std::abs(phi(std::polar(1.0, 0.7))) - 1.0) < 1e-15);
  const double h = 1e-6;
  CHECK(std::abs((phi(z + h) - phi(z - h)) / (2 * h) - phi.derivative(z)) < 1e-8);
  CHECK_THROWS_AS(DiskAutomorphism(Complex(0.96, 0)), DomainError);
  CHECK_THROWS_AS(DiskAutomorphism(Complex(NAN, 0)), DomainError);
}

TEST_CASE("automorphism Taylor coefficients") {
  const Complex a(0.5, -0.2);
  const PowerSeries p = mobius_power_taylor(a, 1, 30);
  CHECK(std::abs(p[0] + a) < 1e-16);
  // c_n = conj(a)^{n-1} (1 - |a|^2)
  CHECK(std::abs(p[4] - std::pow(std::conj(a), 3) * (1.0 - std::norm(a))) < 1e-15);
  const Complex z(0.1, 0.3);
  CHECK(std::abs(mobius_power_taylor(a, 3, 60).eval(z) - std::pow(DiskAutomorphism(a)(z), 3)) < 1e-14);
  CHECK_THROWS_AS(mobius_power_taylor(a, 2, 1), TruncationError);
  CHECK_THROWS_AS(mobius_power_taylor(a, 4, 10), DomainError);
}

}
