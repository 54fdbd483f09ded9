#include "suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "berezin/error.hpp"
#include "berezin/mobius.hpp"
#include "berezin/rank.hpp"
#include "berezin/transform.hpp"

namespace berezin::suite {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Complex random_complex(Rng& rng, double scale) {
  const double re = uniform(rng, -scale, scale);
  const double im = uniform(rng, -scale, scale);
  return {re, im};
}

Complex random_in_disk(Rng& rng, double rmax) {
  const double r = rmax * std::sqrt(uniform(rng, 0.0, 1.0));
  const double th = uniform(rng, 0.0, 2.0 * M_PI);
  return std::polar(r, th);
}

std::vector<Complex> random_nodes(Rng& rng, int n, double rmax, double separation) {
  std::vector<Complex> nodes;
  while (static_cast<int>(nodes.size()) < n) {
    const Complex a = random_in_disk(rng, rmax);
    if (std::all_of(nodes.begin(), nodes.end(), [&](Complex b) { return std::abs(a - b) >= separation; }))
      nodes.push_back(a);
  }
  return nodes;
}

namespace {

Complex random_coeff(Rng& rng, double lo, double hi) {
  const double r = uniform(rng, lo, hi);
  const double th = uniform(rng, 0.0, 2.0 * M_PI);
  return std::polar(r, th);
}

PowerSeries random_series(Rng& rng, int degree, double scale, bool zero_constant) {
  std::vector<Complex> c(degree + 1);
  for (int i = 0; i <= degree; ++i) c[i] = random_complex(rng, scale);
  if (zero_constant) c[0] = 0.0;
  return PowerSeries(std::move(c));
}

std::vector<Complex> padded(std::vector<Complex> v, std::size_t n) {
  v.resize(std::max(v.size(), n));
  return v;
}

}  // namespace

Theorem2Form random_form(Rng& rng, int n, double rmax, double separation, int harmonic_degree) {
  Theorem2Form form;
  form.holomorphic = random_series(rng, harmonic_degree, 0.5, false);
  form.antiholomorphic = random_series(rng, harmonic_degree, 0.5, true);
  for (const Complex a : random_nodes(rng, n, rmax, separation)) {
    FormNode node{a, random_coeff(rng, 0.3, 1.0), random_coeff(rng, 0.3, 1.0), random_coeff(rng, 0.3, 1.0)};
    form.nodes.push_back(node);
  }
  return form;
}

Symbol random_harmonic(Rng& rng, int degree) {
  return Symbol::harmonic(random_series(rng, degree, 0.5, false), random_series(rng, degree, 0.5, true));
}

Symbol random_symbol(Rng& rng, double rmax) {
  Symbol s = random_harmonic(rng, 2);
  const int count = 1 + static_cast<int>(uniform(rng, 0.0, 3.0));
  for (const Complex a : random_nodes(rng, count, rmax, 0.2)) {
    const int kind = static_cast<int>(uniform(rng, 0.0, 3.0));
    const Complex c = random_coeff(rng, 0.3, 1.0);
    s.atoms.push_back(kind == 0 ? log_atom(a, c) : kind == 1 ? pole_atom(a, c) : conj_pole_atom(a, c));
  }
  return s;
}

RankOneCase random_rank_one(Rng& rng, double rmax) {
  static constexpr int kDegrees[3][2] = {{1, 1}, {1, 2}, {2, 1}};
  const auto& d = kDegrees[static_cast<int>(uniform(rng, 0.0, 3.0))];
  RankOneCase c{random_in_disk(rng, rmax), {}, {}};
  for (int i = 0; i <= d[0]; ++i) c.p.push_back(random_coeff(rng, 0.3, 1.0));
  for (int i = 0; i <= d[1]; ++i) c.q.push_back(random_coeff(rng, 0.3, 1.0));
  return c;
}

BidegreeSeries rank_one_grid(const RankOneCase& c, int truncation) {
  auto compose = [&](const std::vector<Complex>& poly) {
    const auto p = padded(poly, 3);
    return phi_polynomial(c.a, p[0], p[1], p[2]).taylor(truncation);
  };
  return BidegreeSeries::outer(compose(c.p), compose(c.q));
}

double form_mismatch(const Theorem2Form& truth, const Theorem2Form& fitted) {
  if (truth.nodes.size() != fitted.nodes.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& t : truth.nodes) {
    const auto it = std::min_element(fitted.nodes.begin(), fitted.nodes.end(), [&](const FormNode& x, const FormNode& y) {
      return std::abs(x.a - t.a) < std::abs(y.a - t.a);
    });
    worst = std::max({worst, std::abs(it->a - t.a), std::abs(it->D - t.D), std::abs(it->E - t.E), std::abs(it->F - t.F)});
  }
  return worst;
}

double rank_one_mismatch(const RankOneCase& truth, const TheoremAStructure& found) {
  auto p = padded(truth.p, 3), q = padded(truth.q, 3);
  auto fp = padded(found.p, 3), fq = padded(found.q, 3);
  gauge_fix(p, q);
  gauge_fix(fp, fq);
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) worst = std::max({worst, std::abs(p[i] - fp[i]), std::abs(q[i] - fq[i])});
  return worst;
}

namespace {

/// 40 points in |z| <= rmax: 10 radii by 4 angles, offset so no two share a ray.
std::vector<Complex> anchor_points(double rmax) {
  std::vector<Complex> pts;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 4; ++j) pts.push_back(std::polar(rmax * (i + 1) / 10.0, 0.5 * M_PI * j + 0.1 * i));
  return pts;
}

double svd_ratio(const BidegreeSeries& grid) {
  const RankReport r = numerical_rank(grid);
  return r.singular_values.size() > 1 ? r.singular_values[1] / r.singular_values[0] : 0.0;
}

}  // namespace

std::vector<Check> verify_suite(std::uint64_t seed, std::optional<double> tol_override, const QuadratureRule& rule) {
  Rng rng(seed);
  std::vector<Check> checks;
  auto run = [&](const std::string& name, double tol, auto&& body) {
    Check c{name, 0.0, tol_override.value_or(tol), false, ""};
    try {
      c.residual = body();
      c.passed = c.residual <= c.tol;
    } catch (const std::exception& e) {
      c.residual = std::numeric_limits<double>::quiet_NaN();
      c.note = e.what();
    }
    checks.push_back(std::move(c));
  };

  const auto pts = anchor_points(std::min(0.9, rule.max_eval_radius));
  const Symbol log0 = Symbol::from_atoms({log_atom(0.0)});
  const Symbol pole0 = Symbol::from_atoms({pole_atom(0.0)});
  auto log_ref = [](Complex z) { return (z * std::conj(z) - 1.0) / 2.0; };
  auto pole_ref = [](Complex z) { return 2.0 * std::conj(z) - z * std::conj(z) * std::conj(z); };

  run("log_anchor_exact", 1e-12, [&] {
    const auto g = berezin_exact_log(0.0);
    double w = 0.0;
    for (const Complex z : pts) w = std::max(w, std::abs(bidegree_eval(g, z) - log_ref(z)));
    return w;
  });
  run("pole_anchor_exact", 1e-12, [&] {
    const auto g = berezin_exact_pole(0.0);
    double w = 0.0;
    for (const Complex z : pts) w = std::max(w, std::abs(bidegree_eval(g, z) - pole_ref(z)));
    return w;
  });
  run("log_anchor_numeric", 1e-6, [&] {
    double w = 0.0;
    for (const Complex z : pts) w = std::max(w, std::abs(berezin_numeric(log0, z, rule) - log_ref(z)));
    return w;
  });
  run("pole_anchor_numeric", 1e-6, [&] {
    double w = 0.0;
    for (const Complex z : pts) w = std::max(w, std::abs(berezin_numeric(pole0, z, rule) - pole_ref(z)));
    return w;
  });

  const Symbol h = random_harmonic(rng, 6);
  run("harmonic_fixed_point", 1e-8, [&] {
    double w = 0.0;
    for (const Complex z : anchor_points(0.8)) w = std::max(w, std::abs(berezin_numeric(h, z, rule) - symbol_eval(h, z)));
    return w;
  });

  std::vector<std::pair<Symbol, std::pair<Complex, Complex>>> triples;
  for (int i = 0; i < 4; ++i) {
    Symbol s = random_symbol(rng, 0.5);
    const Complex a = random_in_disk(rng, 0.8);
    const Complex z = random_in_disk(rng, 0.5);
    triples.push_back({std::move(s), {a, z}});
  }
  run("mobius_covariance", 1e-5, [&] {
    double w = 0.0;
    for (const auto& [s, az] : triples) w = std::max(w, covariance_residual(s, az.first, az.second, rule));
    return w;
  });

  const Complex a = random_in_disk(rng, 0.7);
  const PowerSeries p1 = mobius_power_taylor(a, 1);
  const PowerSeries p2 = mobius_power_taylor(a, 2);
  run("preimage_phi_phibar", 1e-8, [&] {
    return max_abs_diff(berezin_exact_symbol(preimage_phi_phibar(a)).grid, BidegreeSeries::outer(p1, p1));
  });
  run("preimage_phi_phibar2", 1e-8, [&] {
    return max_abs_diff(berezin_exact_symbol(preimage_phi_phibar2(a)).grid, BidegreeSeries::outer(p1, p2));
  });
  run("preimage_phi2_phibar", 1e-8, [&] {
    return max_abs_diff(berezin_exact_symbol(preimage_phi2_phibar(a)).grid, BidegreeSeries::outer(p2, p1));
  });
  run("preimage_rank_one", 1e-8, [&] {
    return std::max({svd_ratio(BidegreeSeries::outer(p1, p1)), svd_ratio(BidegreeSeries::outer(p1, p2)),
                     svd_ratio(berezin_exact_symbol(preimage_phi_phibar(a)).grid)});
  });

  const Symbol ms = random_symbol(rng, 0.6);
  run("moment_cross_identity", 1e-6, [&] {
    const auto quad = moment_matrix(ms, 8, 8, rule).entries;
    const auto exact = moment_matrix_from_grid(berezin_exact_symbol(ms).grid, 8, 8).entries;
    return (quad - exact).cwiseAbs().maxCoeff();
  });

  const Theorem2Form form = random_form(rng, 2);
  run("node_round_trip", 1e-6, [&] {
    const auto grid = berezin_exact_symbol(synthesize_symbol(form)).grid;
    return form_mismatch(form, recover_theorem2(grid).fit.form);
  });

  const RankOneCase r1 = random_rank_one(rng);
  run("rank_one_structure", 1e-8, [&] {
    const auto found = theoremA_recover(rank_one_grid(r1));
    return std::max(std::abs(found.a - r1.a), rank_one_mismatch(r1, found));
  });

  const Theorem2Form dform = random_form(rng, 2);
  run("decomposition_sum", 1e-7, [&] {
    const Decomposition d = decompose_theorem3(dform);
    double w = max_abs_diff(decomposition_grid(d), theorem2_grid(dform));
    for (const auto& piece : d.pieces) {
      if (numerical_rank(berezin_exact_symbol(piece.u).grid).rank != 1) w = std::numeric_limits<double>::infinity();
    }
    return w;
  });
  return checks;
}

std::string format_report(std::uint64_t seed, const std::vector<Check>& checks) {
  std::ostringstream os;
  char line[256];
  os << "verify seed=" << seed << "\n";
  std::snprintf(line, sizeof line, "%-24s %-12s %-8s %s\n", "identity", "residual", "tol", "status");
  os << line;
  int passed = 0;
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-24s %-12.3e %-8.0e %s", c.name.c_str(), c.residual, c.tol,
                  c.passed ? "PASS" : "FAIL");
    os << line;
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << "\n";
    passed += c.passed ? 1 : 0;
  }
  os << passed << "/" << checks.size() << " passed\n";
  return os.str();
}

}  // namespace berezin::suite
