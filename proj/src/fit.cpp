#include <algorithm>
#include <string>

#include "berezin/error.hpp"
#include "berezin/mobius.hpp"
#include "berezin/recovery.hpp"

namespace berezin {

Theorem2Fit fit_theorem2(const BidegreeSeries& grid, std::span<const Complex> nodes, int fit_dim) {
  const int T = std::min(grid.m_truncation(), grid.n_truncation());
  if (T < 2) throw TruncationError("fit_theorem2 needs truncation >= 2");
  if (fit_dim < 2) throw DomainError("fit_dim must be at least 2");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!is_finite(nodes[i]) || std::abs(nodes[i]) >= 1.0) throw DomainError("fit nodes must lie inside the disk");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(nodes[i] - nodes[j]) < 1e-12) throw DomainError("fit nodes must be distinct");
  }

  // Regressor grids per node: phi conj(phi), phi^2 conj(phi), phi conj(phi)^2.
  std::vector<BidegreeSeries> reg;
  for (const Complex a : nodes) {
    const PowerSeries p = mobius_power_taylor(a, 1, T);
    const PowerSeries q = mobius_power_taylor(a, 2, T);
    reg.push_back(BidegreeSeries::outer(p, p));
    reg.push_back(BidegreeSeries::outer(q, p));
    reg.push_back(BidegreeSeries::outer(p, q));
  }

  Theorem2Fit out;
  std::vector<Complex> coef(reg.size());
  if (!reg.empty()) {
    const int D = std::min(fit_dim, T);
    Eigen::MatrixXcd A(D * D, static_cast<Eigen::Index>(reg.size()));
    Eigen::VectorXcd b(D * D);
    for (int m = 1; m <= D; ++m) {
      for (int n = 1; n <= D; ++n) {
        const int r = (m - 1) * D + (n - 1);
        b(r) = grid(m, n);
        for (std::size_t j = 0; j < reg.size(); ++j) A(r, j) = reg[j](m, n);
      }
    }
    Eigen::VectorXd scale = A.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (scale(j) == 0.0) throw IllConditioned("zero regressor column");
      A.col(j) /= scale(j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    out.condition = smin > 0.0 ? (sv(0) / smin) * (sv(0) / smin) : std::numeric_limits<double>::infinity();
    if (!(out.condition <= 1e12)) {
      throw IllConditioned("regressor Gram condition " + std::to_string(out.condition) + " exceeds 1e12");
    }
    const Eigen::VectorXcd x = svd.solve(b);
    for (std::size_t j = 0; j < reg.size(); ++j) coef[j] = x(j) / scale(j);
  }

  BidegreeSeries model(T, T);
  for (std::size_t j = 0; j < reg.size(); ++j) model = model + coef[j] * reg[j];
  const BidegreeSeries rest = grid.resized(T, T) - model;

  std::vector<Complex> K(T + 1), L(T + 1);
  for (int m = 0; m <= T; ++m) K[m] = rest(m, 0);
  for (int n = 1; n <= T; ++n) L[n] = std::conj(rest(0, n));
  out.form.holomorphic = PowerSeries(std::move(K));
  out.form.antiholomorphic = PowerSeries(std::move(L));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out.form.nodes.push_back({nodes[i], coef[3 * i], coef[3 * i + 1], coef[3 * i + 2]});
  }
  out.residual = rest.coeffs().bottomRightCorner(T, T).cwiseAbs().maxCoeff();
  return out;
}

Theorem2Recovery recover_theorem2(const BidegreeSeries& grid, int kmax, int rank_bound,
                                  const RecoveryOptions& options) {
  Theorem2Recovery out;
  out.moments = moment_matrix_from_grid(grid, kmax, kmax);
  out.estimate = recover_nodes(out.moments, rank_bound > 0 ? rank_bound : 2 * kmax / 3, options);
  out.fit = fit_theorem2(grid, out.estimate.nodes);
  return out;
}

}  // namespace berezin
