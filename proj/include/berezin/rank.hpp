#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "berezin/quadrature.hpp"
#include "berezin/series.hpp"
#include "berezin/symbol.hpp"

namespace berezin {

/// sum c[m][n] z^m w^n; the diagonal w = conj(z) recovers bidegree_eval.
Complex complexified_eval(const BidegreeSeries& grid, Complex z, Complex w);

struct RankReport {
  std::vector<double> singular_values;  ///< descending
  int rank = 0;
  double tol = 0.0;
};

/// Rank of the coefficient matrix: count of sigma_i > tol_rel * sigma_max,
/// after truncating the grid to max_dim x max_dim. ZeroInput if every
/// coefficient is below 1e-14.
RankReport numerical_rank(const BidegreeSeries& grid, double tol_rel = 1e-8, int max_dim = 40);

/// Rank of an arbitrary matrix with the same rule.
RankReport matrix_rank(const Eigen::MatrixXcd& m, double tol_rel = 1e-8);

/// a_{k,l} = (l + 1) c[l + 1][k + 1]: the Taylor coefficients of f'_{k+1}.
Eigen::MatrixXcd coefficient_rows(const BidegreeSeries& grid);

/// Exact coefficients of d dbar [(1 - |zeta|^2)^2 zeta^k conj(zeta)^l] with
/// d dbar the (unnormalised) Laplacian; k, l <= 20.
BidegreeSeries laplacian_weighted_monomial(int k, int l);

/// Test-function convention of the moment matrix.
///
/// FullProduct applies the Laplacian to (1-|zeta|^2)^2 psi; WeightOnly
/// multiplies psi by the Laplacian of the weight. HolomorphicRow puts the
/// power of zeta on the row index k.
enum class MomentOrientation {
  FullProductHolomorphicRow,
  FullProductConjugateRow,
  WeightOnlyHolomorphicRow,
  WeightOnlyConjugateRow,
};

/// The orientation for which the coefficient-row identity holds; pinned by
/// calibrate_orientation.
inline constexpr MomentOrientation kCalibratedOrientation = MomentOrientation::FullProductHolomorphicRow;

std::string to_string(MomentOrientation o);
MomentOrientation orientation_from_string(const std::string& s);

struct MomentMatrix {
  Eigen::MatrixXcd entries;  ///< (kmax + 1) x (lmax + 1)
  MomentOrientation orientation = kCalibratedOrientation;
};

/// M[k][l] = integral of u times the oriented test polynomial, by quadrature.
MomentMatrix moment_matrix(const Symbol& u, int kmax, int lmax, const QuadratureRule& rule = {},
                           const GradingOptions& grading = {},
                           MomentOrientation orientation = kCalibratedOrientation);

/// M[k][l] = a_{k,l} / (l + 1) read off an exact transform grid.
MomentMatrix moment_matrix_from_grid(const BidegreeSeries& grid, int kmax, int lmax);

struct OrientationCalibration {
  MomentOrientation orientation;
  std::vector<double> mismatch;  ///< max |grid moment - quadrature moment| per orientation, enum order
};

/// Compares the four orientations on ln|zeta - 0.3| and ln|zeta - 0.3i|
/// against their exact grids and returns the one with the smallest mismatch.
OrientationCalibration calibrate_orientation(int kmax = 4, const QuadratureRule& rule = {},
                                             const GradingOptions& grading = {});

}  // namespace berezin
