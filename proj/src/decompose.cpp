#include <algorithm>
#include <cmath>
#include <string>

#include "berezin/error.hpp"
#include "berezin/mobius.hpp"
#include "berezin/recovery.hpp"
#include "berezin/transform.hpp"

namespace berezin {

namespace {

/// (1 - conj(a) z)^power as a polynomial.
PowerSeries denominator(Complex a, int power) {
  PowerSeries d = PowerSeries::constant(1.0);
  const PowerSeries lin({1.0, -std::conj(a)});
  for (int i = 0; i < power; ++i) d = multiply(d, lin, d.truncation() + 1);
  return d;
}

/// Adds the constant c to the function numerator / (1 - conj(a) z)^power.
void add_constant(RationalFunction& r, Complex c) {
  PowerSeries num = r.numerator.resized(std::max(r.numerator.truncation(), r.power));
  num += c * denominator(r.a, r.power);
  r.numerator = num;
}

std::string fmt(Complex c) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", c.real(), c.imag());
  return buf;
}

}  // namespace

Complex RationalFunction::eval(Complex z) const {
  const Complex den = std::pow(1.0 - std::conj(a) * z, power);
  if (std::abs(den) < 1e-14) throw SingularPoint("rational function evaluated at its pole");
  return numerator.eval(z) / den;
}

PowerSeries RationalFunction::taylor(int truncation) const {
  std::vector<Complex> geo(truncation + 1);
  Complex pw = 1.0;
  for (int n = 0; n <= truncation; ++n, pw *= std::conj(a)) geo[n] = pw;
  const PowerSeries g(std::move(geo));
  PowerSeries out = numerator.resized(truncation);
  for (int i = 0; i < power; ++i) out = multiply(out, g, truncation);
  return out;
}

int RationalFunction::pole_order() const {
  if (std::abs(a) < 1e-14 || power == 0) return 0;
  // Divide out (z - 1/conj(a)) factors while the remainder vanishes.
  const Complex root = 1.0 / std::conj(a);
  std::vector<Complex> c = numerator.coeffs();
  const double scale = std::max(numerator.max_abs(), 1e-300);
  int cancelled = 0;
  while (cancelled < power && c.size() > 1) {
    std::vector<Complex> quot(c.size() - 1);
    Complex acc{};
    for (int i = static_cast<int>(c.size()) - 1; i >= 1; --i) {
      acc = acc * root + c[i];
      quot[i - 1] = acc;
    }
    const Complex rem = acc * root + c[0];
    if (std::abs(rem) > 1e-10 * scale * std::max(1.0, std::pow(std::abs(root), c.size() - 1))) break;
    c = std::move(quot);
    ++cancelled;
  }
  return power - cancelled;
}

RationalFunction phi_polynomial(Complex a, Complex c0, Complex c1, Complex c2) {
  RationalFunction r;
  r.a = a;
  const PowerSeries zma({-a, 1.0});
  if (c2 != Complex{}) {
    r.power = 2;
    r.numerator = c0 * denominator(a, 2) + c1 * multiply(zma, denominator(a, 1), 2) + c2 * multiply(zma, zma, 2);
  } else if (c1 != Complex{}) {
    r.power = 1;
    r.numerator = c0 * denominator(a, 1) + c1 * zma;
  } else {
    r.power = 0;
    r.numerator = PowerSeries::constant(c0);
  }
  return r;
}

std::vector<RankOnePiece> decompose_lemma1(const FormNode& node, int truncation) {
  const double scale = std::max({std::abs(node.D), std::abs(node.E), std::abs(node.F)});
  if (!(scale > 0.0)) throw DegenerateNode("D = E = F = 0");
  const auto nonzero = [&](Complex c) { return std::abs(c) > 1e-12 * scale; };
  const Complex a = node.a;
  const Complex D = nonzero(node.D) ? node.D : Complex{};
  const Complex E = nonzero(node.E) ? node.E : Complex{};
  const Complex F = nonzero(node.F) ? node.F : Complex{};

  const Symbol u11 = preimage_phi_phibar(a, truncation);
  const Symbol u21 = preimage_phi2_phibar(a, truncation);
  const Symbol u12 = preimage_phi_phibar2(a, truncation);
  const RationalFunction phi = phi_polynomial(a, 0.0, 1.0, 0.0);

  std::vector<RankOnePiece> pieces;
  if (E != Complex{} && F != Complex{}) {
    pieces.push_back({canonicalize(D * u11 + E * u21), phi_polynomial(a, 0.0, D, E), phi});
    pieces.push_back({canonicalize(F * u12), phi_polynomial(a, 0.0, F, 0.0), phi_polynomial(a, 0.0, 0.0, 1.0)});
  } else if (F != Complex{}) {
    // (D phi) conj(phi) + F phi conj(phi)^2 = phi conj(conj(D) phi + conj(F) phi^2).
    pieces.push_back({canonicalize(D * u11 + F * u12), phi, phi_polynomial(a, 0.0, std::conj(D), std::conj(F))});
  } else {
    pieces.push_back({canonicalize(D * u11 + E * u21), phi_polynomial(a, 0.0, D, E), phi});
  }
  return pieces;
}

Decomposition decompose_theorem3(const Theorem2Form& form, int truncation, double absorb_tol) {
  validate(form);
  Decomposition out;
  for (std::size_t i = 0; i < form.nodes.size(); ++i) {
    const auto& n = form.nodes[i];
    if (std::max({std::abs(n.D), std::abs(n.E), std::abs(n.F)}) == 0.0) {
      out.log.push_back("node " + std::to_string(i) + ": zero node skipped");
      continue;
    }
    auto pieces = decompose_lemma1(n, truncation);
    out.log.push_back("node " + std::to_string(i) + ": " + std::to_string(pieces.size()) + " piece(s)");
    for (auto& p : pieces) out.pieces.push_back(std::move(p));
  }

  const int M = truncation;
  PowerSeries K = form.holomorphic.resized(M);
  PowerSeries L = form.antiholomorphic.resized(M);
  K.at(0) += std::conj(L[0]);
  L.at(0) = 0.0;
  const std::size_t P = out.pieces.size();

  // conj(L) = sum lambda_i (conj(g_i) - conj(g_i(0))), i.e. L_n = sum conj(lambda_i) g_{i,n}.
  if (L.max_abs() > absorb_tol && P > 0) {
    Eigen::MatrixXcd G(M, P);
    Eigen::VectorXcd rhs(M);
    for (std::size_t i = 0; i < P; ++i) {
      const PowerSeries g = out.pieces[i].g.taylor(M);
      for (int n = 1; n <= M; ++n) G(n - 1, i) = g[n];
    }
    for (int n = 1; n <= M; ++n) rhs(n - 1) = L[n];
    const Eigen::VectorXcd y = G.completeOrthogonalDecomposition().solve(rhs);
    const double res = (G * y - rhs).cwiseAbs().maxCoeff();
    if (res <= absorb_tol) {
      for (std::size_t i = 0; i < P; ++i) {
        const Complex lambda = std::conj(y(i));
        if (std::abs(lambda) == 0.0) continue;
        auto& piece = out.pieces[i];
        const PowerSeries g = piece.g.taylor(M);
        // u + lambda conj(g) has transform (f + lambda) conj(g).
        piece.u = canonicalize(piece.u + Symbol::harmonic(PowerSeries::zero(0), std::conj(lambda) * g));
        add_constant(piece.f, lambda);
        K.at(0) -= lambda * std::conj(g[0]);
        out.log.push_back("conj(L) absorbed into piece " + std::to_string(i) + " with lambda " + fmt(lambda));
      }
      L = PowerSeries::zero(M);
    } else {
      out.log.push_back("conj(L) not in the span of the conj(g_i); residual " + std::to_string(res));
    }
  }

  // K = kappa_0 + sum kappa_j f_j.
  PowerSeries Kvar = K;
  Kvar.at(0) = 0.0;
  if (Kvar.max_abs() > absorb_tol && P > 0) {
    Eigen::MatrixXcd A(M + 1, P + 1);
    Eigen::VectorXcd rhs(M + 1);
    A.setZero();
    A(0, 0) = 1.0;
    for (std::size_t j = 0; j < P; ++j) {
      const PowerSeries f = out.pieces[j].f.taylor(M);
      for (int m = 0; m <= M; ++m) A(m, j + 1) = f[m];
    }
    for (int m = 0; m <= M; ++m) rhs(m) = K[m];
    const Eigen::VectorXcd y = A.completeOrthogonalDecomposition().solve(rhs);
    const double res = (A * y - rhs).cwiseAbs().maxCoeff();
    if (res <= absorb_tol) {
      for (std::size_t j = 0; j < P; ++j) {
        const Complex kappa = y(j + 1);
        if (std::abs(kappa) == 0.0) continue;
        auto& piece = out.pieces[j];
        // u + kappa f has transform f (conj(g) + kappa).
        piece.u = canonicalize(piece.u + Symbol::harmonic(kappa * piece.f.taylor(M), PowerSeries::zero(0)));
        add_constant(piece.g, std::conj(kappa));
        out.log.push_back("K absorbed into piece " + std::to_string(j) + " with kappa " + fmt(kappa));
      }
      K = PowerSeries::constant(y(0)).resized(M);
    } else {
      out.log.push_back("K not in span{1, f_j}; residual " + std::to_string(res));
    }
  }

  const bool L_zero = L.max_abs() <= absorb_tol;
  Kvar = K;
  Kvar.at(0) = 0.0;
  const bool K_constant = Kvar.max_abs() <= absorb_tol;
  if (L_zero && K_constant) {
    if (std::abs(K[0]) > absorb_tol) {
      RankOnePiece c{Symbol::constant(K[0]), phi_polynomial(0.0, K[0], 0.0, 0.0), phi_polynomial(0.0, 1.0, 0.0, 0.0)};
      out.pieces.push_back(std::move(c));
      out.log.push_back("constant " + fmt(K[0]) + " kept as its own rank-one piece");
    }
  } else {
    out.remainder = canonicalize(Symbol::harmonic(K, L));
    out.log.push_back("harmonic remainder returned");
  }
  return out;
}

BidegreeSeries decomposition_grid(const Decomposition& d, int truncation) {
  BidegreeSeries grid(truncation, truncation);
  for (const auto& piece : d.pieces) grid = grid + berezin_exact_symbol(piece.u, truncation).grid;
  if (d.remainder) grid = grid + berezin_exact_symbol(*d.remainder, truncation).grid;
  return grid;
}

}  // namespace berezin
