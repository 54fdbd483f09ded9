// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "berezin/error.hpp"
#include "berezin/mobius.hpp"
#include "berezin/rank.hpp"
#include "berezin/recovery.hpp"
#include "berezin/transform.hpp"
#include "commands.hpp"
#include "suite.hpp"

using namespace berezin;
using suite::Rng;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Complex> grid_points(double rmax, int radii, int angles) {
  std::vector<Complex> pts;
  for (int i = 1; i <= radii; ++i)
    for (int j = 0; j < angles; ++j) pts.push_back(std::polar(rmax * i / radii, 2.0 * M_PI * (j + 0.5 * i) / angles));
  return pts;
}

Outcome closed_form_anchors() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto pts = grid_points(0.9, 10, 4);
  const auto lg = berezin_exact_log(0.0), pl = berezin_exact_pole(0.0);
  const Symbol slog = Symbol::from_atoms({log_atom(0.0)}), spole = Symbol::from_atoms({pole_atom(0.0)});
  double ex = 0.0, nu = 0.0;
  for (const Complex z : pts) {
    const Complex zb = std::conj(z);
    const Complex rl = (z * zb - 1.0) / 2.0, rp = 2.0 * zb - z * zb * zb;
    ex = std::max({ex, std::abs(bidegree_eval(lg, z) - rl), std::abs(bidegree_eval(pl, z) - rp)});
    nu = std::max({nu, std::abs(berezin_numeric(slog, z) - rl), std::abs(berezin_numeric(spole, z) - rp)});
  }
  const double t = seconds_since(t0);
  return {ex <= 1e-12 && nu <= 1e-6 && t < 10.0,
          "40 points |z|<=0.9: exact " + sci(ex) + " (<=1e-12), numeric " + sci(nu) + " (<=1e-6), " + sci(t) + " s"};
}

Outcome harmonic_fixed_point() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(101);
  std::vector<Symbol> corpus;
  for (int d = 1; d <= 6; ++d) corpus.push_back(suite::random_harmonic(rng, d));
  // truncated Poisson kernels Re((1 + rho e^{-it} z) / (1 - rho e^{-it} z))
  for (const auto& [rho, t] : {std::pair{0.5, 0.3}, std::pair{0.7, 2.0}, std::pair{0.6, -1.1}}) {
    std::vector<Complex> K(41), L(41);
    K[0] = 1.0;
    for (int n = 1; n <= 40; ++n) K[n] = L[n] = std::pow(rho, n) * std::polar(1.0, -n * t);
    corpus.push_back(Symbol::harmonic(PowerSeries(K), PowerSeries(L)));
  }
  double worst = 0.0;
  for (const auto& s : corpus)
    for (const Complex z : grid_points(0.8, 4, 5)) worst = std::max(worst, std::abs(berezin_numeric(s, z) - symbol_eval(s, z)));
  const double t = seconds_since(t0);
  return {worst <= 1e-8 && t < 30.0, std::to_string(corpus.size()) + " symbols, 20 points |z|<=0.8: max |B(u)-u| " +
                                         sci(worst) + " (<=1e-8), " + sci(t) + " s"};
}

Outcome mobius_covariance() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(202);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Symbol s = suite::random_symbol(rng, 0.6);
    const Complex a = suite::random_in_disk(rng, 0.8);
    const Complex z = suite::random_in_disk(rng, 0.6);
    worst = std::max(worst, covariance_residual(s, a, z));
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-5 && t < 60.0, "20 triples |a|<=0.8: max residual " + sci(worst) + " (<=1e-5), " + sci(t) + " s"};
}

Outcome product_identities() {
  Rng rng(303);
  double worst = 0.0;
  bool rank_ok = true;
  for (int i = 0; i < 5; ++i) {
    const Complex a = suite::random_in_disk(rng, 0.8);
    const PowerSeries p = mobius_power_taylor(a, 1), q = mobius_power_taylor(a, 2);
    const auto pp = BidegreeSeries::outer(p, p), pq = BidegreeSeries::outer(p, q);
    worst = std::max({worst, max_abs_diff(berezin_exact_symbol(preimage_phi_phibar(a)).grid, pp),
                      max_abs_diff(berezin_exact_symbol(preimage_phi_phibar2(a)).grid, pq)});
    rank_ok = rank_ok && numerical_rank(pp).rank == 1 && numerical_rank(pq).rank == 1;
  }
  return {worst <= 1e-8 && rank_ok, "5 centers: max grid mismatch " + sci(worst) + " (<=1e-8), rank one: " +
                                        (rank_ok ? "yes" : "no")};
}

Outcome moment_cross_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  const Complex a(0.3, 0.2), b(-0.4, 0.35);
  const std::vector<Symbol> corpus{
      Symbol::harmonic(PowerSeries({1.0, 0.5, Complex(0, 0.2)}), PowerSeries({0.0, Complex(0.3, -0.1)})),
      Symbol::from_atoms({log_atom(a)}),
      Symbol::from_atoms({pole_atom(b, Complex(0.5, 0.5))}),
      Symbol::from_atoms({conj_pole_atom(a, 0.8)}),
      Symbol::from_atoms({log_atom(a, 1.0), log_atom(b, -0.7)}),
      Symbol::from_atoms({pole_atom(a), conj_pole_atom(b, Complex(0, 1))}),
  };
  double worst = 0.0;
  for (const auto& s : corpus) {
    const auto quad = moment_matrix(s, 8, 8).entries;
    const auto grid = moment_matrix_from_grid(berezin_exact_symbol(s).grid, 8, 8).entries;
    worst = std::max(worst, (quad - grid).cwiseAbs().maxCoeff());
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-6 && t < 120.0, "6 symbols, k,l<=8: max |a_kl/(l+1) - moment| " + sci(worst) + " (<=1e-6), " +
                                          sci(t) + " s"};
}

Outcome rank_detection() {
  std::vector<std::string> bad;
  for (int r = 1; r <= 4; ++r) {
    BidegreeSeries g(20, 20);
    for (int i = 0; i < r; ++i) g.at(i + 1, i + 1) = 1.0;
    if (numerical_rank(g).rank != r) bad.push_back("diag" + std::to_string(r));
  }
  // forms with known rank: D-only nodes add one each, a node with E and F adds two
  struct Case {
    Theorem2Form form;
    int rank;
  };
  auto form = [](std::vector<FormNode> nodes) {
    Theorem2Form f;
    f.nodes = std::move(nodes);
    return f;
  };
  const std::vector<Case> cases{
      {form({{0.3, 1.0, 0.0, 0.0}}), 1},
      {form({{0.3, 1.0, 0.0, 0.0}, {Complex(-0.2, 0.5), Complex(0, 1), 0.0, 0.0}}), 2},
      {form({{0.3, 0.5, 1.0, 1.0}}), 2},
      {form({{0.3, 1.0, 0.0, 0.0}, {Complex(-0.4, 0.1), 1.0, 0.0, 0.0}, {Complex(0.1, -0.6), 1.0, 0.0, 0.0}}), 3},
      {form({{0.3, 0.5, 1.0, 1.0}, {Complex(-0.2, 0.5), 1.0, 0.5, Complex(0, 1)}}), 4},
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (numerical_rank(theorem2_grid(cases[i].form), 1e-8).rank != cases[i].rank) bad.push_back("form" + std::to_string(i));
  }
  Rng rng(606);
  double harm = 0.0;
  for (int i = 0; i < 3; ++i) harm = std::max(harm, moment_matrix(suite::random_harmonic(rng, 5), 8, 8).entries.cwiseAbs().maxCoeff());
  std::string detail = "4 diagonal + 5 form cases, misclassified: " + std::to_string(bad.size());
  for (const auto& b : bad) detail += " " + b;
  detail += "; harmonic moments max " + sci(harm) + " (<=1e-8)";
  return {bad.empty() && harm <= 1e-8, detail};
}

Outcome round_trip_recovery() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(707);
  double worst = 0.0;
  int max_iter = 0, failures = 0;
  std::string note;
  for (int i = 0; i < 10; ++i) {
    const Theorem2Form truth = suite::random_form(rng, 1 + i % 3);
    try {
      const auto rec = recover_theorem2(berezin_exact_symbol(synthesize_symbol(truth)).grid);
      worst = std::max(worst, suite::form_mismatch(truth, rec.fit.form));
      max_iter = std::max(max_iter, rec.estimate.iterations);
    } catch (const Error& e) {
      ++failures;
      note = std::string("; ") + e.what();
    }
  }
  const double t = seconds_since(t0);
  return {failures == 0 && worst <= 1e-6 && max_iter <= 50 && t < 300.0,
          "10 forms N<=3: node/D/E/F error " + sci(worst) + " (<=1e-6), max GN iterations " + std::to_string(max_iter) +
              ", failures " + std::to_string(failures) + ", " + sci(t) + " s" + note};
}

Outcome rank_one_recovery() {
  Rng rng(808);
  double a_err = 0.0, pq_err = 0.0;
  int failures = 0;
  std::string note;
  for (int i = 0; i < 10; ++i) {
    const auto c = suite::random_rank_one(rng);
    try {
      const auto found = theoremA_recover(suite::rank_one_grid(c));
      a_err = std::max(a_err, std::abs(found.a - c.a));
      pq_err = std::max(pq_err, suite::rank_one_mismatch(c, found));
    } catch (const Error& e) {
      ++failures;
      note = std::string("; ") + e.what();
    }
  }
  int rejected = 0;
  for (int i = 0; i < 5; ++i) {
    const auto c1 = suite::random_rank_one(rng), c2 = suite::random_rank_one(rng);
    try {
      theoremA_recover(suite::rank_one_grid(c1) + suite::rank_one_grid(c2));
    } catch (const NotRankOne&) {
      ++rejected;
    }
  }
  return {failures == 0 && a_err <= 1e-8 && pq_err <= 1e-7 && rejected == 5,
          "10 cases: a error " + sci(a_err) + " (<=1e-8), gauge-fixed p,q error " + sci(pq_err) +
              " (<=1e-7); rank-2 inputs rejected " + std::to_string(rejected) + "/5" + note};
}

Outcome decomposition() {
  Rng rng(909);
  double worst = 0.0;
  int bad_rank = 0, remainders = 0;
  for (int i = 0; i < 10; ++i) {
    const Theorem2Form f = suite::random_form(rng, 1 + i % 3);
    const Decomposition d = decompose_theorem3(f);
    worst = std::max(worst, max_abs_diff(decomposition_grid(d), theorem2_grid(f)));
    for (const auto& piece : d.pieces)
      if (numerical_rank(berezin_exact_symbol(piece.u).grid).rank != 1) ++bad_rank;
    remainders += d.remainder ? 1 : 0;
  }
  return {worst <= 1e-7 && bad_rank == 0, "10 forms: reconstruction " + sci(worst) + " (<=1e-7), pieces of rank != 1: " +
                                              std::to_string(bad_rank) + ", harmonic remainders " +
                                              std::to_string(remainders)};
}

Outcome determinism() {
  cli::RunConfig cfg;
  cfg.command = "verify";
  cfg.seed = 7;
  std::ostringstream o1, o2, e1, e2;
  const int c1 = cli::run(cfg, o1, e1);
  const int c2 = cli::run(cfg, o2, e2);
  const bool same = o1.str() == o2.str();
  return {same && c1 == 0 && c2 == 0,
          std::string("verify --seed 7 twice: reports ") + (same ? "identical" : "differ") + ", exit codes " +
              std::to_string(c1) + "/" + std::to_string(c2)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"C1 closed-form anchors", closed_form_anchors},
      {"C2 harmonic fixed point", harmonic_fixed_point},
      {"C3 Mobius covariance", mobius_covariance},
      {"C4 product preimage identities", product_identities},
      {"C5 moment cross-identity", moment_cross_identity},
      {"C6 rank detection", rank_detection},
      {"C7 round-trip recovery", round_trip_recovery},
      {"C8 rank-one structure", rank_one_recovery},
      {"C9 decomposition", decomposition},
      {"C10 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
