#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "berezin/quadrature.hpp"
#include "berezin/recovery.hpp"
#include "berezin/symbol.hpp"

namespace berezin::suite {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
/// Uniform in the box [-scale, scale]^2.
Complex random_complex(Rng& rng, double scale = 1.0);
/// Uniform by area in |z| <= rmax.
Complex random_in_disk(Rng& rng, double rmax);
/// n points in |z| <= rmax with pairwise distance >= separation.
std::vector<Complex> random_nodes(Rng& rng, int n, double rmax, double separation);

/// Random canonical form: n nodes with |D|, |E|, |F| in [0.3, 1] and a
/// harmonic part of degree <= harmonic_degree.
Theorem2Form random_form(Rng& rng, int n, double rmax = 0.7, double separation = 0.2, int harmonic_degree = 3);
Symbol random_harmonic(Rng& rng, int degree);
/// Harmonic part plus one to three atoms of mixed kinds.
Symbol random_symbol(Rng& rng, double rmax = 0.6);

struct RankOneCase {
  Complex a;
  std::vector<Complex> p, q;
};

/// Random (a, p, q) with deg p, deg q in {1, 2}, deg p + deg q <= 3.
RankOneCase random_rank_one(Rng& rng, double rmax = 0.7);
BidegreeSeries rank_one_grid(const RankOneCase& c, int truncation = kDefaultTruncation);

/// Max over matched nodes of |a - a'| and |D - D'|, |E - E'|, |F - F'|;
/// infinity when the node counts differ.
double form_mismatch(const Theorem2Form& truth, const Theorem2Form& fitted);
/// Max coefficient mismatch after gauge fixing both sides.
double rank_one_mismatch(const RankOneCase& truth, const TheoremAStructure& found);

struct Check {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool passed = false;
  std::string note;  ///< error message when the check threw
};

/// The identity suite behind `verify`. `tol_override` replaces every tolerance.
std::vector<Check> verify_suite(std::uint64_t seed, std::optional<double> tol_override, const QuadratureRule& rule);

std::string format_report(std::uint64_t seed, const std::vector<Check>& checks);

}  // namespace berezin::suite
