#include "berezin/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include <omp.h>

#include "berezin/error.hpp"

namespace berezin {

namespace {

constexpr double kConvergenceLimit = 1e-6;
// Exponent q in the partition weights 1 / sum_k (d_i / d_k)^q, d = |zeta - a|^2.
constexpr int kPartitionExponent = 4;

void check_rule(const QuadratureRule& rule) {
  if (rule.radial < 1 || rule.angular < 1) throw DomainError("quadrature rule sizes must be positive");
}

/// Distance from `center` to the unit circle along direction e^{i theta}.
double ray_length(Complex center, double theta) {
  const double b = std::real(std::conj(center) * std::polar(1.0, theta));
  const double c = 1.0 - std::norm(center);
  return c / (b + std::sqrt(b * b + c));
}

// Panels are independent; each is summed in index order so the result does
// not depend on the thread count.
template <typename PanelSum>
void run_panels(std::size_t panels, bool parallel, PanelSum&& panel_sum) {
  if (!parallel) {
    for (std::size_t p = 0; p < panels; ++p) panel_sum(p);
    return;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(panels); ++p) {
    try {
      panel_sum(static_cast<std::size_t>(p));
    } catch (...) {
#pragma omp critical(berezin_quadrature_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

Complex integrate_impl(const NodeSet& nodes, const Integrand& f, bool parallel) {
  std::vector<Complex> partial(nodes.panel_count());
  const auto pts = nodes.points();
  const auto wts = nodes.weights();
  run_panels(nodes.panel_count(), parallel, [&](std::size_t p) {
    Complex s{};
    for (std::size_t i = nodes.panel_begin(p); i < nodes.panel_end(p); ++i) s += wts[i] * f(pts[i]);
    partial[p] = s;
  });
  Complex total{};
  for (const auto& v : partial) total += v;
  return total;
}

void integrate_many_impl(const NodeSet& nodes, const MultiIntegrand& f, std::span<Complex> out, bool parallel) {
  const std::size_t dim = out.size();
  std::vector<Complex> partial(nodes.panel_count() * dim);
  const auto pts = nodes.points();
  const auto wts = nodes.weights();
  run_panels(nodes.panel_count(), parallel, [&](std::size_t p) {
    std::vector<Complex> value(dim);
    std::span<Complex> acc(partial.data() + p * dim, dim);
    for (std::size_t i = nodes.panel_begin(p); i < nodes.panel_end(p); ++i) {
      f(pts[i], value);
      for (std::size_t d = 0; d < dim; ++d) acc[d] += wts[i] * value[d];
    }
  });
  std::fill(out.begin(), out.end(), Complex{});
  for (std::size_t p = 0; p < nodes.panel_count(); ++p)
    for (std::size_t d = 0; d < dim; ++d) out[d] += partial[p * dim + d];
}

double partition_weight(Complex zeta, std::span<const Complex> centers, std::size_t i) {
  const double di = std::norm(zeta - centers[i]);
  if (di == 0.0) return 1.0;
  double denom = 1.0;
  for (std::size_t k = 0; k < centers.size(); ++k) {
    if (k == i) continue;
    const double dk = std::norm(zeta - centers[k]);
    if (dk == 0.0) return 0.0;
    denom += std::pow(di / dk, kPartitionExponent);
  }
  return 1.0 / denom;
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw DomainError("Gauss-Legendre order must be positive");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

void NodeSet::add_panel(std::span<const Complex> points, std::span<const double> weights) {
  points_.insert(points_.end(), points.begin(), points.end());
  weights_.insert(weights_.end(), weights.begin(), weights.end());
  offsets_.push_back(points_.size());
}

NodeSet polar_nodes(const QuadratureRule& rule) {
  check_rule(rule);
  std::vector<double> x, w;
  gauss_legendre(rule.radial, x, w);
  NodeSet set;
  std::vector<Complex> pts(rule.radial);
  std::vector<double> wts(rule.radial);
  for (int j = 0; j < rule.angular; ++j) {
    const Complex dir = std::polar(1.0, 2.0 * std::numbers::pi * j / rule.angular);
    for (int i = 0; i < rule.radial; ++i) {
      // t = r^2 on (0, 1); dA = dt dtheta / (2 pi).
      const double t = 0.5 * (x[i] + 1.0);
      pts[i] = std::sqrt(t) * dir;
      wts[i] = 0.5 * w[i] / rule.angular;
    }
    set.add_panel(pts, wts);
  }
  return set;
}

NodeSet graded_nodes(Complex center, const QuadratureRule& rule, const GradingOptions& grading) {
  check_rule(rule);
  if (grading.depth < 0 || grading.ring_order < 1) throw DomainError("invalid grading options");
  if (std::abs(center) >= 1.0) throw DomainError("singular center must lie inside the disk");
  std::vector<double> x, w;
  gauss_legendre(grading.ring_order, x, w);

  // Ring edges in the scaled radius s = r / R(theta): 0, 2^-g, ..., 1/2, 3/4, 1.
  std::vector<double> edges{0.0};
  for (int i = grading.depth; i >= 1; --i) edges.push_back(std::ldexp(1.0, -i));
  edges.push_back(0.75);
  edges.push_back(1.0);

  std::vector<double> s_nodes, s_weights;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double lo = edges[e], hi = edges[e + 1];
    for (int i = 0; i < grading.ring_order; ++i) {
      s_nodes.push_back(lo + 0.5 * (hi - lo) * (x[i] + 1.0));
      s_weights.push_back(0.5 * (hi - lo) * w[i]);
    }
  }

  NodeSet set;
  std::vector<Complex> pts(s_nodes.size());
  std::vector<double> wts(s_nodes.size());
  for (int j = 0; j < rule.angular; ++j) {
    const double theta = 2.0 * std::numbers::pi * (j + 0.5) / rule.angular;
    const double R = ray_length(center, theta);
    const Complex dir = std::polar(1.0, theta);
    for (std::size_t i = 0; i < s_nodes.size(); ++i) {
      // r = s R(theta); dA = r dr dtheta / pi = s R^2 ds dtheta / pi.
      pts[i] = center + s_nodes[i] * R * dir;
      wts[i] = 2.0 / rule.angular * s_nodes[i] * R * R * s_weights[i];
    }
    set.add_panel(pts, wts);
  }
  return set;
}

Complex integrate(const NodeSet& nodes, const Integrand& f) { return integrate_impl(nodes, f, true); }

Complex integrate_serial(const NodeSet& nodes, const Integrand& f) { return integrate_impl(nodes, f, false); }

void integrate_many(const NodeSet& nodes, const MultiIntegrand& f, std::span<Complex> out) {
  integrate_many_impl(nodes, f, out, true);
}

void integrate_many_serial(const NodeSet& nodes, const MultiIntegrand& f, std::span<Complex> out) {
  integrate_many_impl(nodes, f, out, false);
}

Complex disk_integrate(const Integrand& f, const QuadratureRule& rule) { return integrate(polar_nodes(rule), f); }

void disk_integrate_singular_many(const MultiIntegrand& f, std::size_t dim, const SingularityPlan& plan,
                                  const QuadratureRule& rule, std::span<Complex> out) {
  if (out.size() != dim) throw DomainError("output span size does not match dimension");
  if (plan.centers.empty()) {
    integrate_many(polar_nodes(rule), f, out);
    return;
  }
  const auto& centers = plan.centers;
  GradingOptions fine = plan.grading;
  fine.depth = 2 * plan.grading.depth;

  std::vector<Complex> coarse_total(dim), fine_total(dim), piece(dim);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    MultiIntegrand local = f;
    if (centers.size() > 1) {
      local = [&f, &centers, i](Complex zeta, std::span<Complex> v) {
        f(zeta, v);
        const double w = partition_weight(zeta, centers, i);
        for (auto& x : v) x *= w;
      };
    }
    integrate_many(graded_nodes(centers[i], rule, plan.grading), local, piece);
    for (std::size_t d = 0; d < dim; ++d) coarse_total[d] += piece[d];
    integrate_many(graded_nodes(centers[i], rule, fine), local, piece);
    for (std::size_t d = 0; d < dim; ++d) fine_total[d] += piece[d];
  }
  double diff = 0.0;
  for (std::size_t d = 0; d < dim; ++d) diff = std::max(diff, std::abs(fine_total[d] - coarse_total[d]));
  if (diff > kConvergenceLimit) {
    throw NonConvergence("grading refinement changed the integral by " + std::to_string(diff));
  }
  std::copy(fine_total.begin(), fine_total.end(), out.begin());
}

Complex disk_integrate_singular(const Integrand& f, const SingularityPlan& plan, const QuadratureRule& rule) {
  Complex out{};
  disk_integrate_singular_many([&f](Complex zeta, std::span<Complex> v) { v[0] = f(zeta); }, 1, plan, rule,
                               std::span<Complex>(&out, 1));
  return out;
}

double berezin_kernel(Complex zeta, Complex z) {
  const double a = 1.0 - std::norm(z);
  const double d = std::abs(1.0 - zeta * std::conj(z));
  const double d2 = d * d;
  return a * a / (d2 * d2);
}

namespace {

void check_eval_point(Complex z, const QuadratureRule& rule) {
  if (!is_finite(z)) throw DomainError("evaluation point is not finite");
  if (std::abs(z) > rule.max_eval_radius + 1e-12) {
    throw OutOfRange("|z| = " + std::to_string(std::abs(z)) + " exceeds rule limit " +
                     std::to_string(rule.max_eval_radius));
  }
}

}  // namespace

Complex berezin_numeric(const Symbol& u, Complex z, const QuadratureRule& rule, const GradingOptions& grading) {
  validate(u);
  check_eval_point(z, rule);
  const auto& K = u.holomorphic;
  const auto& L = u.antiholomorphic;
  Complex total = disk_integrate(
      [&](Complex zeta) { return harmonic_eval(K, L, zeta) * berezin_kernel(zeta, z); }, rule);
  for (const auto& atom : u.atoms) {
    SingularityPlan plan{{atom.center}, grading};
    total += disk_integrate_singular([&](Complex zeta) { return atom.eval(zeta) * berezin_kernel(zeta, z); },
                                     plan, rule);
  }
  return total;
}

Complex berezin_numeric(const Integrand& u, Complex z, const SingularityPlan& plan, const QuadratureRule& rule) {
  check_eval_point(z, rule);
  return disk_integrate_singular([&](Complex zeta) { return u(zeta) * berezin_kernel(zeta, z); }, plan, rule);
}

}  // namespace berezin
