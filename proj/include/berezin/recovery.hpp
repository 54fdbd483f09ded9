#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "berezin/rank.hpp"
#include "berezin/series.hpp"
#include "berezin/symbol.hpp"

namespace berezin {

// ---------------------------------------------------------------------------
// Node recovery from a moment matrix.
// ---------------------------------------------------------------------------

struct RecoveryOptions {
  double rank_tol = 1e-8;         ///< relative singular-value cutoff for the Hankel rank
  double zero_floor = 1e-10;      ///< below this max |M| the matrix counts as zero
  double cluster_radius = 1e-4;   ///< pencil eigenvalues closer than this are one confluent node
  double min_separation = 0.05;   ///< distinct nodes closer than this are rejected
  double step_damping = 0.5;      ///< step-halving factor of the Gauss-Newton line search
  int max_iterations = 50;
  double residual_limit = 1e-5;   ///< relative residual above which refinement has failed
};

struct NodeEstimate {
  std::vector<Complex> nodes;
  std::vector<int> multiplicity;  ///< 1, or 2 for confluent (derivative) terms
  double residual = 0.0;          ///< max |M - model| / max |M|
  int iterations = 0;
};

/// Matrix-pencil node estimate refined by Gauss-Newton.
///
/// Each node a contributes alpha a^k conj(a)^l + beta k a^{k-1} conj(a)^l +
/// gamma l a^k conj(a)^{l-1} to M[k][l]. The pencil runs on a block Hankel
/// matrix built from the columns of M, so derivative terms appear as a
/// repeated eigenvalue. `rank_bound` caps the Hankel rank (nodes counted
/// with multiplicity).
NodeEstimate recover_nodes(const MomentMatrix& m, int rank_bound, const RecoveryOptions& options = {});

/// Moment-matrix model for the given nodes: columns alpha, beta, gamma per
/// node, with beta omitted where `multiplicity` (if given) is 1.
Eigen::MatrixXcd moment_model_basis(std::span<const Complex> nodes, int kmax, int lmax,
                                    std::span<const int> multiplicity = {});

// ---------------------------------------------------------------------------
// Theorem-2 fit.
// ---------------------------------------------------------------------------

struct Theorem2Fit {
  Theorem2Form form;
  double residual = 0.0;     ///< max coefficient mismatch on the non-harmonic block
  double condition = 0.0;    ///< condition number of the column-scaled regressor Gram matrix
};

/// Least squares for (D_i, E_i, F_i) against the products phi conj(phi),
/// phi^2 conj(phi), phi conj(phi)^2 on the block m, n >= 1, with the harmonic
/// part read from the remaining row and column. IllConditioned if the Gram
/// condition exceeds 1e12.
Theorem2Fit fit_theorem2(const BidegreeSeries& grid, std::span<const Complex> nodes, int fit_dim = 40);

struct Theorem2Recovery {
  MomentMatrix moments;
  NodeEstimate estimate;
  Theorem2Fit fit;
};

/// Grid -> moment matrix (k, l <= kmax) -> recover_nodes -> fit_theorem2.
/// rank_bound <= 0 selects 2 kmax / 3.
Theorem2Recovery recover_theorem2(const BidegreeSeries& grid, int kmax = 20, int rank_bound = 0,
                                  const RecoveryOptions& options = {});

// ---------------------------------------------------------------------------
// Rank-one structure.
// ---------------------------------------------------------------------------

struct TheoremAStructure {
  Complex a{};
  std::vector<Complex> p;  ///< f = p(phi_a), coefficients by degree
  std::vector<Complex> q;  ///< g = q(phi_a)
};

/// Recovers (a, p, q) with grid = p(phi_a) conj(q(phi_a)).
///
/// Errors: NotRankOne, NoDiskDenominator (f or g constant, or no common
/// disk parameter), DegreeConstraint (deg p, deg q <= 2, deg pq <= 3 violated).
TheoremAStructure theoremA_recover(const BidegreeSeries& grid, double rank_tol = 1e-8);

/// Fixes the gauge (p, q) -> (mu p, q / conj(mu)): equal norms and the first
/// significant coefficient of p real positive.
void gauge_fix(std::vector<Complex>& p, std::vector<Complex>& q);

/// numerator(z) / (1 - conj(a) z)^power, power in {0, 1, 2}.
struct RationalFunction {
  PowerSeries numerator;
  Complex a{};
  int power = 0;

  Complex eval(Complex z) const;
  PowerSeries taylor(int truncation = kDefaultTruncation) const;
  /// Order of the pole at 1/conj(a); zero when a = 0 or the numerator cancels it.
  int pole_order() const;
};

/// Rational descriptor of c0 + c1 phi_a + c2 phi_a^2.
RationalFunction phi_polynomial(Complex a, Complex c0, Complex c1, Complex c2);

struct RankOnePiece {
  Symbol u;
  RationalFunction f;
  RationalFunction g;  ///< B(u) = f conj(g)
};

/// Lemma-1 split of the node term (D phi + E phi^2) conj(phi) + F phi conj(phi)^2.
/// DegenerateNode if D = E = F = 0.
std::vector<RankOnePiece> decompose_lemma1(const FormNode& node, int truncation = kDefaultTruncation);

struct Decomposition {
  std::vector<RankOnePiece> pieces;
  /// Harmonic leftover K + conj(L) that could not be folded into the pieces.
  std::optional<Symbol> remainder;
  std::vector<std::string> log;  ///< absorption decisions, in order
};

/// Theorem-3 decomposition: Lemma-1 pieces, then absorption of conj(L) into
/// span{conj(g_i) - conj(g_i(0))} and of K into span{1, f_i}.
Decomposition decompose_theorem3(const Theorem2Form& form, int truncation = kDefaultTruncation,
                                 double absorb_tol = 1e-8);

/// Exact grid of the sum of all pieces plus the remainder.
BidegreeSeries decomposition_grid(const Decomposition& d, int truncation = kDefaultTruncation);

}  // namespace berezin
