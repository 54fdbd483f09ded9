#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/Eigenvalues>

#include "berezin/error.hpp"
#include "berezin/recovery.hpp"

namespace berezin {

namespace {

constexpr double kValidate = 1e-9;

struct DenominatorFit {
  Complex x;  // conj(a)
  double residual;
};

double norm_of(const Eigen::VectorXcd& h) { return std::max(h.norm(), 1e-300); }

/// h_n = x h_{n-1} for n >= 2: a simple pole at 1/x.
std::optional<DenominatorFit> simple_pole(const Eigen::VectorXcd& h, int top) {
  Complex num{};
  double den = 0.0;
  for (int n = 2; n <= top; ++n) {
    num += h(n) * std::conj(h(n - 1));
    den += std::norm(h(n - 1));
  }
  if (den == 0.0) return std::nullopt;
  const Complex x = num / den;
  double res = 0.0;
  for (int n = 2; n <= top; ++n) res = std::max(res, std::abs(h(n) - x * h(n - 1)));
  res /= norm_of(h);
  if (res > kValidate) return std::nullopt;
  return DenominatorFit{x, res};
}

/// h_n - 2x h_{n-1} + x^2 h_{n-2} = 0 for n >= 3: a double pole at 1/x.
std::optional<DenominatorFit> double_pole(const Eigen::VectorXcd& h, int top) {
  auto residual = [&](Complex x) {
    double r = 0.0;
    for (int n = 3; n <= top; ++n) r = std::max(r, std::abs(h(n) - 2.0 * x * h(n - 1) + x * x * h(n - 2)));
    return r / norm_of(h);
  };
  // Candidates: roots of h1 x^2 - 2 h2 x + h3 from the degree-3 condition.
  std::vector<Complex> cands;
  const double s = norm_of(h);
  if (std::abs(h(1)) > 1e-14 * s) {
    Eigen::Matrix2cd comp;
    comp << 2.0 * h(2) / h(1), -h(3) / h(1), 1.0, 0.0;
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> eig(comp, false);
    cands = {eig.eigenvalues()(0), eig.eigenvalues()(1)};
  } else if (std::abs(h(2)) > 1e-14 * s) {
    cands = {h(3) / (2.0 * h(2))};
  } else {
    cands = {Complex{}};
  }
  std::optional<DenominatorFit> best;
  for (Complex x : cands) {
    // Gauss-Newton over degrees 3..top; the residual is holomorphic in x.
    for (int it = 0; it < 20; ++it) {
      Complex num{};
      double den = 0.0;
      for (int n = 3; n <= top; ++n) {
        const Complex r = h(n) - 2.0 * x * h(n - 1) + x * x * h(n - 2);
        const Complex J = -2.0 * h(n - 1) + 2.0 * x * h(n - 2);
        num += std::conj(J) * r;
        den += std::norm(J);
      }
      if (den == 0.0) break;
      const Complex dx = -num / den;
      x += dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double res = residual(x);
    if (res <= kValidate && (!best || res < best->residual)) best = DenominatorFit{x, res};
  }
  return best;
}

/// conj(a) for one factor; NoDiskDenominator if neither pole model fits.
Complex denominator_of(const Eigen::VectorXcd& h, const char* name) {
  const double s = norm_of(h);
  if (h.tail(h.size() - 1).cwiseAbs().maxCoeff() < 1e-10 * s) {
    throw NoDiskDenominator(std::string(name) + " is constant");
  }
  const int top = std::min<int>(static_cast<int>(h.size()) - 1, 12);
  if (top < 6) throw TruncationError("theoremA_recover needs truncation >= 6");
  if (auto fit = simple_pole(h, top)) return fit->x;
  if (auto fit = double_pole(h, top)) return fit->x;
  throw NoDiskDenominator(std::string(name) + " times (1 - conj(a) z)^2 is not a quadratic for any a");
}

/// Coefficients of p with h = p(phi_a), from the first three of h (1 - conj(a) z)^2.
std::vector<Complex> phi_coefficients(const Eigen::VectorXcd& h, Complex a) {
  const Complex ab = std::conj(a);
  const Complex P0 = h(0);
  const Complex P1 = h(1) - 2.0 * ab * h(0);
  const Complex P2 = h(2) - 2.0 * ab * h(1) + ab * ab * h(0);
  const double s = (1.0 - std::norm(a)) * (1.0 - std::norm(a));
  return {(P0 + P1 * a + P2 * a * a) / s, (2.0 * ab * P0 + (1.0 + std::norm(a)) * P1 + 2.0 * a * P2) / s,
          (ab * ab * P0 + ab * P1 + P2) / s};
}

int degree_of(const std::vector<Complex>& p) {
  double scale = 0.0;
  for (const auto& c : p) scale = std::max(scale, std::abs(c));
  for (int d = static_cast<int>(p.size()) - 1; d >= 0; --d)
    if (std::abs(p[d]) > 1e-8 * scale) return d;
  return -1;
}

}  // namespace

void gauge_fix(std::vector<Complex>& p, std::vector<Complex>& q) {
  double np = 0.0, nq = 0.0, pmax = 0.0;
  for (const auto& c : p) {
    np += std::norm(c);
    pmax = std::max(pmax, std::abs(c));
  }
  for (const auto& c : q) nq += std::norm(c);
  if (np == 0.0 || nq == 0.0) return;
  Complex lead = 1.0;
  for (const auto& c : p) {
    if (std::abs(c) > 1e-8 * pmax) {
      lead = c;
      break;
    }
  }
  const Complex mu = std::sqrt(std::sqrt(nq / np)) * std::polar(1.0, -std::arg(lead));
  for (auto& c : p) c *= mu;
  for (auto& c : q) c /= std::conj(mu);
}

TheoremAStructure theoremA_recover(const BidegreeSeries& grid, double rank_tol) {
  const RankReport report = numerical_rank(grid, rank_tol);
  if (report.rank != 1) throw NotRankOne("numerical rank is " + std::to_string(report.rank));

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(grid.coeffs(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double root = std::sqrt(svd.singularValues()(0));
  const Eigen::VectorXcd f = root * svd.matrixU().col(0);
  const Eigen::VectorXcd g = root * svd.matrixV().col(0);

  const Complex xf = denominator_of(f, "f");
  const Complex xg = denominator_of(g, "g");
  if (std::abs(xf - xg) > 1e-6) throw NoDiskDenominator("f and g have different denominators");
  const Complex a = std::conj(0.5 * (xf + xg));
  if (!(std::abs(a) < 1.0)) throw NoDiskDenominator("denominator root outside the disk");

  TheoremAStructure out{a, phi_coefficients(f, a), phi_coefficients(g, a)};
  const int dp = degree_of(out.p), dq = degree_of(out.q);
  if (dp < 1 || dq < 1) throw NoDiskDenominator("f or g is constant");
  if (dp + dq > 3) {
    throw DegreeConstraint("deg p + deg q = " + std::to_string(dp + dq) + " exceeds 3");
  }
  out.p.resize(dp + 1);
  out.q.resize(dq + 1);
  gauge_fix(out.p, out.q);
  return out;
}

}  // namespace berezin
