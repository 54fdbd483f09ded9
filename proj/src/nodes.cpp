#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "berezin/error.hpp"
#include "berezin/recovery.hpp"

namespace berezin {

Eigen::MatrixXcd moment_model_basis(std::span<const Complex> nodes, int kmax, int lmax,
                                    std::span<const int> multiplicity) {
  const int rows = (kmax + 1) * (lmax + 1);
  auto with_beta = [&](std::size_t i) { return multiplicity.empty() || multiplicity[i] > 1; };
  Eigen::Index cols = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) cols += with_beta(i) ? 3 : 2;
  Eigen::MatrixXcd basis(rows, cols);
  std::vector<Complex> ap(kmax + 1), abp(lmax + 1);
  Eigen::Index c = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Complex a = nodes[i];
    const bool beta = with_beta(i);
    ap[0] = abp[0] = 1.0;
    for (int k = 1; k <= kmax; ++k) ap[k] = ap[k - 1] * a;
    for (int l = 1; l <= lmax; ++l) abp[l] = abp[l - 1] * std::conj(a);
    for (int k = 0; k <= kmax; ++k) {
      for (int l = 0; l <= lmax; ++l) {
        const int r = k * (lmax + 1) + l;
        Eigen::Index j = c;
        basis(r, j++) = ap[k] * abp[l];
        if (beta) basis(r, j++) = k > 0 ? static_cast<double>(k) * ap[k - 1] * abp[l] : Complex{};
        basis(r, j) = l > 0 ? static_cast<double>(l) * ap[k] * abp[l - 1] : Complex{};
      }
    }
    c += beta ? 3 : 2;
  }
  return basis;
}

namespace {

Eigen::VectorXcd flatten(const Eigen::MatrixXcd& m) {
  Eigen::VectorXcd v(m.size());
  for (Eigen::Index k = 0; k < m.rows(); ++k)
    for (Eigen::Index l = 0; l < m.cols(); ++l) v(k * m.cols() + l) = m(k, l);
  return v;
}

struct ProjectedFit {
  Eigen::VectorXcd coeffs;
  Eigen::VectorXcd residual;
};

ProjectedFit project(std::span<const Complex> nodes, std::span<const int> mult, const Eigen::VectorXcd& target,
                     int kmax, int lmax) {
  const Eigen::MatrixXcd basis = moment_model_basis(nodes, kmax, lmax, mult);
  ProjectedFit fit;
  fit.coeffs = basis.completeOrthogonalDecomposition().solve(target);
  fit.residual = target - basis * fit.coeffs;
  return fit;
}

/// Variable-projection Gauss-Newton on the node positions.
int refine_nodes(std::vector<Complex>& nodes, std::span<const int> mult, const Eigen::VectorXcd& target, int kmax, int lmax,
                 const RecoveryOptions& opt) {
  const std::size_t n = nodes.size();
  if (n == 0) return 0;
  auto stacked = [](const Eigen::VectorXcd& r) {
    Eigen::VectorXd out(2 * r.size());
    out << r.real(), r.imag();
    return out;
  };
  double cost = project(nodes, mult, target, kmax, lmax).residual.squaredNorm();
  int iter = 0;
  for (; iter < opt.max_iterations; ++iter) {
    const Eigen::VectorXd r0 = stacked(project(nodes, mult, target, kmax, lmax).residual);
    Eigen::MatrixXd jac(r0.size(), 2 * n);
    for (std::size_t j = 0; j < 2 * n; ++j) {
      const double h = 1e-7;
      std::vector<Complex> plus = nodes, minus = nodes;
      const Complex dir = (j % 2 == 0) ? Complex(h, 0.0) : Complex(0.0, h);
      plus[j / 2] += dir;
      minus[j / 2] -= dir;
      jac.col(j) = (stacked(project(plus, mult, target, kmax, lmax).residual) -
                    stacked(project(minus, mult, target, kmax, lmax).residual)) /
                   (2.0 * h);
    }
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-r0);
    double t = 1.0;
    bool improved = false;
    std::vector<Complex> trial(n);
    double trial_cost = cost;
    while (t > 1e-6) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = nodes[i] + t * Complex(step(2 * i), step(2 * i + 1));
      const bool inside = std::all_of(trial.begin(), trial.end(), [](Complex a) { return std::abs(a) < 1.0; });
      if (inside) {
        trial_cost = project(trial, mult, target, kmax, lmax).residual.squaredNorm();
        if (trial_cost < cost) {
          improved = true;
          break;
        }
      }
      t *= opt.step_damping;
    }
    if (!improved) break;
    const double gain = cost - trial_cost;
    nodes = trial;
    cost = trial_cost;
    if (gain <= 1e-14 * std::max(cost, 1e-300) || t * step.norm() < 1e-15) {
      ++iter;
      break;
    }
  }
  return iter;
}

}  // namespace

NodeEstimate recover_nodes(const MomentMatrix& m, int rank_bound, const RecoveryOptions& opt) {
  const Eigen::MatrixXcd& M = m.entries;
  const int kmax = static_cast<int>(M.rows()) - 1;
  const int lmax = static_cast<int>(M.cols()) - 1;
  if (kmax < 2) throw DomainError("moment matrix needs at least three rows");
  NodeEstimate est;
  const double scale = M.cwiseAbs().maxCoeff();
  if (!(scale >= opt.zero_floor)) return est;

  // Block Hankel of the column signals x_l(k) = M[k][l].
  const int samples = kmax + 1;
  const int window = samples - samples / 3;
  const int offsets = samples - window + 1;
  Eigen::MatrixXcd hankel(window, offsets * (lmax + 1));
  for (int l = 0; l <= lmax; ++l)
    for (int j = 0; j < offsets; ++j)
      for (int i = 0; i < window; ++i) hankel(i, l * offsets + j) = M(i + j, l);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(hankel, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int r = 0;
  while (r < sv.size() && sv(r) > opt.rank_tol * sv(0)) ++r;
  r = std::min({r, rank_bound, window - 1});
  if (r <= 0) return est;

  const Eigen::MatrixXcd U = svd.matrixU().leftCols(r);
  const Eigen::MatrixXcd shift = U.topRows(window - 1).completeOrthogonalDecomposition().solve(U.bottomRows(window - 1));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(shift, false);
  std::vector<Complex> lambdas(eig.eigenvalues().data(), eig.eigenvalues().data() + r);
  for (const auto& lam : lambdas) {
    if (!(std::abs(lam) < 1.0 + 1e-6)) {
      throw PencilFailure("pencil eigenvalue " + std::to_string(std::abs(lam)) + " outside the disk");
    }
  }
  std::sort(lambdas.begin(), lambdas.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });

  // Cluster repeated eigenvalues into confluent nodes.
  std::vector<Complex> sums;
  std::vector<int> counts;
  for (const auto& lam : lambdas) {
    bool joined = false;
    for (std::size_t c = 0; c < sums.size(); ++c) {
      if (std::abs(sums[c] / static_cast<double>(counts[c]) - lam) <= opt.cluster_radius) {
        sums[c] += lam;
        ++counts[c];
        joined = true;
        break;
      }
    }
    if (!joined) {
      sums.push_back(lam);
      counts.push_back(1);
    }
  }
  for (std::size_t c = 0; c < sums.size(); ++c) {
    Complex node = sums[c] / static_cast<double>(counts[c]);
    if (std::abs(node) >= 1.0) node *= (1.0 - 1e-9) / std::abs(node);
    est.nodes.push_back(node);
    est.multiplicity.push_back(std::min(counts[c], 2));
  }
  for (std::size_t i = 0; i < est.nodes.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(est.nodes[i] - est.nodes[j]) < opt.min_separation)
        throw IllConditioned("recovered nodes closer than " + std::to_string(opt.min_separation));

  const Eigen::VectorXcd target = flatten(M);
  est.iterations = refine_nodes(est.nodes, est.multiplicity, target, kmax, lmax, opt);

  // Drop nodes whose fitted weights are negligible, then refine again.
  const auto fit = project(est.nodes, est.multiplicity, target, kmax, lmax);
  std::vector<Complex> kept;
  std::vector<int> kept_mult;
  Eigen::Index offset = 0;
  for (std::size_t i = 0; i < est.nodes.size(); ++i) {
    const Eigen::Index width = est.multiplicity[i] > 1 ? 3 : 2;
    const double weight = fit.coeffs.segment(offset, width).cwiseAbs().maxCoeff();
    offset += width;
    if (weight > 1e-9 * scale) {
      kept.push_back(est.nodes[i]);
      kept_mult.push_back(est.multiplicity[i]);
    }
  }
  if (kept.size() != est.nodes.size()) {
    est.nodes = std::move(kept);
    est.multiplicity = std::move(kept_mult);
    est.iterations += refine_nodes(est.nodes, est.multiplicity, target, kmax, lmax, opt);
  }

  est.residual = project(est.nodes, est.multiplicity, target, kmax, lmax).residual.cwiseAbs().maxCoeff() / scale;
  if (est.residual > opt.residual_limit &&
      std::any_of(est.multiplicity.begin(), est.multiplicity.end(), [](int m) { return m == 1; })) {
    // A split confluent pair looks simple to the pencil; retry with full models.
    std::fill(est.multiplicity.begin(), est.multiplicity.end(), 2);
    est.iterations += refine_nodes(est.nodes, est.multiplicity, target, kmax, lmax, opt);
    est.residual = project(est.nodes, est.multiplicity, target, kmax, lmax).residual.cwiseAbs().maxCoeff() / scale;
  }
  if (est.residual > opt.residual_limit) {
    throw NonConvergence("node refinement residual " + std::to_string(est.residual) + " above limit");
  }
  return est;
}

}  // namespace berezin
