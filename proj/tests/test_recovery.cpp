#include <doctest.h>

#include "berezin/error.hpp"
#include "berezin/mobius.hpp"
#include "berezin/recovery.hpp"
#include "berezin/transform.hpp"

using namespace berezin;

namespace {

MomentMatrix moments_of(const Symbol& s, int kmax = 20) {
  return moment_matrix_from_grid(berezin_exact_symbol(s).grid, kmax, kmax);
}

BidegreeSeries phi_grid(Complex a, int pf, int pg) {
  return BidegreeSeries::outer(mobius_power_taylor(a, pf), mobius_power_taylor(a, pg));
}

bool close(const std::vector<Complex>& v, std::initializer_list<Complex> ref, double tol) {
  std::vector<Complex> r(ref);
  r.resize(std::max(r.size(), v.size()));
  auto w = v;
  w.resize(r.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    if (std::abs(w[i] - r[i]) > tol) return false;
  return true;
}

}  // namespace

TEST_SUITE("recovery") {

TEST_CASE("single log atom") {
  const auto est = recover_nodes(moments_of(Symbol::from_atoms({log_atom(0.3)})), 13);
  REQUIRE(est.nodes.size() == 1);
  CHECK(std::abs(est.nodes[0] - 0.3) < 1e-6);
  CHECK(est.residual < 1e-10);
}

TEST_CASE("two atoms") {
  const Complex b(-0.2, 0.5);
  const auto est = recover_nodes(moments_of(Symbol::from_atoms({log_atom(0.3), pole_atom(b, 0.5)})), 13);
  REQUIRE(est.nodes.size() == 2);
  const bool order = std::abs(est.nodes[0] - 0.3) < std::abs(est.nodes[1] - 0.3);
  CHECK(std::abs(est.nodes[order ? 0 : 1] - 0.3) < 1e-6);
  CHECK(std::abs(est.nodes[order ? 1 : 0] - b) < 1e-6);
  CHECK(est.multiplicity[order ? 1 : 0] == 2);
  CHECK(est.iterations <= 50);
}

TEST_CASE("quadrature moments") {
  const Symbol s = Symbol::from_atoms({log_atom(Complex(0.1, 0.4)), conj_pole_atom(Complex(-0.4, -0.2))});
  RecoveryOptions opt;
  opt.rank_tol = 1e-6;
  const auto est = recover_nodes(moment_matrix(s, 12, 12), 8, opt);
  REQUIRE(est.nodes.size() == 2);
}

TEST_CASE("harmonic input has no nodes") {
  const auto est = recover_nodes(moments_of(Symbol::harmonic(PowerSeries({0.0, 1.0}), PowerSeries({0.0, 0.0, 1.0}))), 13);
  CHECK(est.nodes.empty());
  CHECK(est.residual == 0.0);
}

TEST_CASE("pencil and refinement failures") {
  MomentMatrix outside{Eigen::MatrixXcd(9, 9), kCalibratedOrientation};
  for (int k = 0; k <= 8; ++k)
    for (int l = 0; l <= 8; ++l) outside.entries(k, l) = std::pow(1.5, k) * std::pow(0.5, l);
  CHECK_THROWS_AS(recover_nodes(outside, 3), PencilFailure);

  MomentMatrix smooth{Eigen::MatrixXcd(9, 9), kCalibratedOrientation};
  for (int k = 0; k <= 8; ++k)
    for (int l = 0; l <= 8; ++l) smooth.entries(k, l) = 1.0 / ((k + l + 1.0) * (k + l + 1.0));
  CHECK_THROWS_AS(recover_nodes(smooth, 1), NonConvergence);

  const auto close_pair = moments_of(Symbol::from_atoms({log_atom(0.3), log_atom(0.33)}));
  CHECK_THROWS_AS(recover_nodes(close_pair, 13), IllConditioned);
}

TEST_CASE("Theorem-2 fit examples") {
  const Complex a(0.3, 0.0);
  const auto f1 = fit_theorem2(phi_grid(a, 1, 1), std::vector<Complex>{a});
  CHECK(std::abs(f1.form.nodes[0].D - 1.0) < 1e-8);
  CHECK(std::abs(f1.form.nodes[0].E) < 1e-8);
  CHECK(std::abs(f1.form.nodes[0].F) < 1e-8);
  CHECK(f1.form.holomorphic.max_abs() < 1e-8);
  CHECK(f1.residual < 1e-8);

  const Complex b(0.4, 0.0);
  const auto f2 = fit_theorem2(phi_grid(b, 1, 2), std::vector<Complex>{b});
  CHECK(std::abs(f2.form.nodes[0].F - 1.0) < 1e-8);
  CHECK(std::abs(f2.form.nodes[0].D) < 1e-8);

  const auto h = berezin_exact_harmonic(PowerSeries({0.0, 1.0}), PowerSeries({0.0, 0.0, 1.0}));
  const auto f3 = fit_theorem2(h, {});
  CHECK(f3.form.holomorphic[1] == Complex(1.0));
  CHECK(f3.form.antiholomorphic[2] == Complex(1.0));
  CHECK(f3.residual == 0.0);

  CHECK_THROWS_AS(fit_theorem2(h, std::vector<Complex>{0.3, 0.3 + 1e-7}), IllConditioned);
}

TEST_CASE("harmonic transform means no node weights") {
  // forward direction of: B(u) harmonic implies u harmonic
  const Symbol s{PowerSeries({1.0, 0.5}), PowerSeries({0.0, Complex(0, 1)}), {}};
  const auto r = recover_theorem2(berezin_exact_symbol(s).grid);
  CHECK(r.fit.form.nodes.empty());
  const auto withnode = recover_theorem2(berezin_exact_symbol(s + Symbol::from_atoms({log_atom(0.2)})).grid);
  REQUIRE(withnode.fit.form.nodes.size() == 1);
  CHECK(std::abs(withnode.fit.form.nodes[0].D) > 0.1);
}

TEST_CASE("rank-one structure examples") {
  const auto s1 = theoremA_recover(phi_grid(0.3, 1, 1));
  CHECK(std::abs(s1.a - 0.3) < 1e-8);
  CHECK(close(s1.p, {0.0, 1.0}, 1e-8));
  CHECK(close(s1.q, {0.0, 1.0}, 1e-8));

  const auto s2 = theoremA_recover(phi_grid(0.4, 1, 2));
  CHECK(std::abs(s2.a - 0.4) < 1e-8);
  CHECK(close(s2.p, {0.0, 1.0}, 1e-8));
  CHECK(close(s2.q, {0.0, 0.0, 1.0}, 1e-8));

  BidegreeSeries zz(10, 10);
  zz.at(1, 1) = 1.0;
  const auto s3 = theoremA_recover(zz);
  CHECK(std::abs(s3.a) < 1e-12);
  CHECK(close(s3.p, {0.0, 1.0}, 1e-12));
}

TEST_CASE("rank-one structure errors") {
  BidegreeSeries two(10, 10);
  two.at(1, 1) = 1.0;
  two.at(2, 2) = 1.0;
  CHECK_THROWS_AS(theoremA_recover(two), NotRankOne);

  const PowerSeries p = mobius_power_taylor(0.3, 1);
  CHECK_THROWS_AS(theoremA_recover(BidegreeSeries::outer(PowerSeries::constant(1.0).resized(80), p)), NoDiskDenominator);
  std::vector<Complex> ex(81);
  double fact = 1.0;
  for (int n = 0; n <= 80; ++n) {
    ex[n] = 1.0 / fact;
    fact *= n + 1;
  }
  CHECK_THROWS_AS(theoremA_recover(BidegreeSeries::outer(PowerSeries(ex), p)), NoDiskDenominator);
  CHECK_THROWS_AS(theoremA_recover(phi_grid(Complex(0.2, 0.1), 2, 2)), DegreeConstraint);
}

TEST_CASE("gauge fixing") {
  std::vector<Complex> p{Complex(0.0), Complex(0, 2)}, q{Complex(1, 1), Complex(0.5)};
  auto p0 = p, q0 = q;
  gauge_fix(p0, q0);
  CHECK(p0[1].imag() == doctest::Approx(0.0));
  CHECK(p0[1].real() > 0.0);
  const Complex mu(0.3, -1.2);
  for (auto& c : p) c *= mu;
  for (auto& c : q) c /= std::conj(mu);
  gauge_fix(p, q);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(p[i] - p0[i]) < 1e-14);
    CHECK(std::abs(q[i] - q0[i]) < 1e-14);
  }
}

TEST_CASE("rational descriptors") {
  const Complex a(0.3, 0.2);
  const RationalFunction r = phi_polynomial(a, 0.5, 1.0, Complex(0, 2));
  const Complex z(0.1, -0.4);
  const Complex ph = DiskAutomorphism(a)(z);
  CHECK(std::abs(r.eval(z) - (0.5 + ph + Complex(0, 2) * ph * ph)) < 1e-14);
  CHECK(std::abs(r.taylor(80).eval(z) - r.eval(z)) < 1e-13);
  CHECK(r.pole_order() == 2);
  CHECK(phi_polynomial(a, 1.0, 2.0, 0.0).pole_order() == 1);
  const RationalFunction cancels{PowerSeries({1.0, -std::conj(a)}), a, 2};
  CHECK(cancels.pole_order() == 1);
  CHECK(phi_polynomial(a, 3.0, 0.0, 0.0).pole_order() == 0);
}

TEST_CASE("Lemma-1 cases") {
  auto check_pieces = [](const std::vector<RankOnePiece>& pieces) {
    for (const auto& piece : pieces) {
      const auto grid = berezin_exact_symbol(piece.u).grid;
      CHECK(max_abs_diff(grid, BidegreeSeries::outer(piece.f.taylor(), piece.g.taylor())) < 1e-8);
    }
  };
  const auto a = decompose_lemma1({0.3, 1.0, 0.0, 0.0});
  REQUIRE(a.size() == 1);
  CHECK(a[0].f.pole_order() == 1);
  CHECK(a[0].g.pole_order() == 1);
  check_pieces(a);

  const auto b = decompose_lemma1({0.3, 0.0, 1.0, 1.0});
  REQUIRE(b.size() == 2);
  CHECK(b[0].f.pole_order() == 2);
  CHECK(b[0].g.pole_order() == 1);
  CHECK(b[1].f.pole_order() == 1);
  CHECK(b[1].g.pole_order() == 2);
  check_pieces(b);

  const auto c = decompose_lemma1({0.3, 1.0, 1.0, 0.0});
  REQUIRE(c.size() == 1);
  CHECK(c[0].f.pole_order() == 2);
  check_pieces(c);

  const auto d = decompose_lemma1({Complex(-0.2, 0.5), Complex(0, 1), 0.0, 2.0});
  REQUIRE(d.size() == 1);
  CHECK(d[0].g.pole_order() == 2);
  check_pieces(d);

  CHECK_THROWS_AS(decompose_lemma1({0.3, 0.0, 0.0, 0.0}), DegenerateNode);
}

TEST_CASE("Theorem-3 decomposition") {
  Theorem2Form f;
  f.nodes = {{0.3, 1.0, 1.0, 1.0}};
  const Decomposition d = decompose_theorem3(f);
  CHECK(d.pieces.size() == 2);
  CHECK_FALSE(d.remainder.has_value());
  CHECK(max_abs_diff(decomposition_grid(d), theorem2_grid(f)) < 1e-7);
}

TEST_CASE("absorption of conj(L) built from a piece") {
  Theorem2Form f;
  f.nodes = {{Complex(0.2, -0.3), 1.0, 0.0, 0.0}};
  const auto pieces = decompose_lemma1(f.nodes[0]);
  // conj(L) = lambda (conj(g) - conj(g(0)))
  const Complex lambda(0.4, 0.7);
  PowerSeries L = std::conj(lambda) * pieces[0].g.taylor();
  L.at(0) = 0.0;
  f.antiholomorphic = L;
  f.holomorphic = PowerSeries::zero(0);
  const Decomposition d = decompose_theorem3(f);
  CHECK_FALSE(d.remainder.has_value());
  CHECK(max_abs_diff(decomposition_grid(d), theorem2_grid(f)) < 1e-7);
  for (const auto& piece : d.pieces) CHECK(numerical_rank(berezin_exact_symbol(piece.u).grid).rank == 1);
}

TEST_CASE("generic harmonic part stays a remainder") {
  Theorem2Form f;
  f.nodes = {{0.3, 1.0, 0.0, 0.0}};
  f.antiholomorphic = PowerSeries::monomial(5);
  const Decomposition d = decompose_theorem3(f);
  REQUIRE(d.remainder.has_value());
  CHECK(max_abs_diff(decomposition_grid(d), theorem2_grid(f)) < 1e-7);
  CHECK(d.pieces.size() == 1);
}

TEST_CASE("K absorbed into the span of the f's") {
  Theorem2Form f;
  f.nodes = {{Complex(0.1, 0.4), 0.5, 0.8, 0.0}};
  const auto pieces = decompose_lemma1(f.nodes[0]);
  f.holomorphic = Complex(0.3, -0.2) * pieces[0].f.taylor() + PowerSeries::constant(0.7);
  const Decomposition d = decompose_theorem3(f);
  CHECK_FALSE(d.remainder.has_value());
  CHECK(d.pieces.size() == 2);  // the constant becomes its own piece
  CHECK(max_abs_diff(decomposition_grid(d), theorem2_grid(f)) < 1e-7);
  for (const auto& piece : d.pieces) CHECK(numerical_rank(berezin_exact_symbol(piece.u).grid).rank == 1);
}

}
