#pragma once

#include <functional>
#include <span>
#include <vector>

#include "berezin/symbol.hpp"
#include "berezin/types.hpp"

namespace berezin {

/// Polar tensor rule on the unit disk for the normalized measure dA = dx dy / pi.
///
/// Radial: Gauss-Legendre in t = r^2 on (0, 1). Angular: trapezoid.
struct QuadratureRule {
  int radial = 64;
  int angular = 256;
  /// Largest |z| at which berezin_numeric accepts evaluation under this rule.
  double max_eval_radius = 0.9;
};

/// Grading of the local rules around declared singular points.
struct GradingOptions {
  int depth = 12;       ///< geometric rings with ratio 1/2 down to 2^-depth
  int ring_order = 16;  ///< Gauss-Legendre points per ring
};

struct SingularityPlan {
  std::vector<Complex> centers;
  GradingOptions grading;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Quadrature points grouped into panels. Each panel is summed in index order
/// and panels are reduced in panel order, so the parallel and serial kernels
/// agree bitwise.
class NodeSet {
 public:
  void add_panel(std::span<const Complex> points, std::span<const double> weights);

  std::size_t panel_count() const { return offsets_.size() - 1; }
  std::size_t size() const { return points_.size(); }
  std::span<const Complex> points() const { return points_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t panel_begin(std::size_t p) const { return offsets_[p]; }
  std::size_t panel_end(std::size_t p) const { return offsets_[p + 1]; }

 private:
  std::vector<Complex> points_;
  std::vector<double> weights_;
  std::vector<std::size_t> offsets_{0};
};

/// Global rule: one panel per angle.
NodeSet polar_nodes(const QuadratureRule& rule);

/// Rule in polar coordinates centred at `center`, radially graded toward it.
/// Covers the whole disk; one panel per angle.
NodeSet graded_nodes(Complex center, const QuadratureRule& rule, const GradingOptions& grading);

using Integrand = std::function<Complex(Complex)>;
/// Writes `out.size()` integrand values at a point.
using MultiIntegrand = std::function<void(Complex, std::span<Complex>)>;

/// OpenMP kernel; panels in parallel, fixed-order reduction.
Complex integrate(const NodeSet& nodes, const Integrand& f);
/// Serial reference kernel with identical summation order.
Complex integrate_serial(const NodeSet& nodes, const Integrand& f);

void integrate_many(const NodeSet& nodes, const MultiIntegrand& f, std::span<Complex> out);
void integrate_many_serial(const NodeSet& nodes, const MultiIntegrand& f, std::span<Complex> out);

/// Integral of a smooth f over the disk with the normalized measure.
Complex disk_integrate(const Integrand& f, const QuadratureRule& rule = {});

/// Integral of f with log or first-order singularities at plan.centers.
///
/// One center: graded rule at depth g and 2g; the finer value is returned.
/// Several centers: a rational partition of unity splits f into pieces that
/// are each singular at one center. NonConvergence if the two gradings differ
/// by more than 1e-6.
Complex disk_integrate_singular(const Integrand& f, const SingularityPlan& plan, const QuadratureRule& rule = {});

void disk_integrate_singular_many(const MultiIntegrand& f, std::size_t dim, const SingularityPlan& plan,
                                  const QuadratureRule& rule, std::span<Complex> out);

/// (1 - |z|^2)^2 / |1 - zeta conj(z)|^4, modulus taken before the power.
double berezin_kernel(Complex zeta, Complex z);

/// Numerical Berezin transform of a symbol; atoms are integrated one at a
/// time on rules graded toward their centers.
Complex berezin_numeric(const Symbol& u, Complex z, const QuadratureRule& rule = {},
                        const GradingOptions& grading = {});

/// Numerical Berezin transform of a callable with declared singular points.
Complex berezin_numeric(const Integrand& u, Complex z, const SingularityPlan& plan,
                        const QuadratureRule& rule = {});

}  // namespace berezin
