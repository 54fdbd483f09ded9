#include "berezin/rank.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "berezin/error.hpp"
#include "berezin/transform.hpp"

namespace berezin {

Complex complexified_eval(const BidegreeSeries& grid, Complex z, Complex w) {
  Complex acc{};
  for (int m = grid.m_truncation(); m >= 0; --m) {
    Complex row{};
    for (int n = grid.n_truncation(); n >= 0; --n) row = row * w + grid(m, n);
    acc = acc * z + row;
  }
  return acc;
}

RankReport matrix_rank(const Eigen::MatrixXcd& m, double tol_rel) {
  if (!(tol_rel > 0.0 && tol_rel < 1.0)) throw DomainError("rank tolerance must lie in (0, 1)");
  if (m.size() == 0 || m.cwiseAbs().maxCoeff() < 1e-14) throw ZeroInput("all coefficients below 1e-14");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  RankReport report;
  report.tol = tol_rel;
  report.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double cutoff = tol_rel * sv(0);
  report.rank = static_cast<int>(std::count_if(report.singular_values.begin(), report.singular_values.end(),
                                               [cutoff](double s) { return s > cutoff; }));
  return report;
}

RankReport numerical_rank(const BidegreeSeries& grid, double tol_rel, int max_dim) {
  const auto rows = std::min<Eigen::Index>(grid.coeffs().rows(), max_dim);
  const auto cols = std::min<Eigen::Index>(grid.coeffs().cols(), max_dim);
  return matrix_rank(grid.coeffs().topLeftCorner(rows, cols), tol_rel);
}

Eigen::MatrixXcd coefficient_rows(const BidegreeSeries& grid) {
  if (grid.m_truncation() < 2 || grid.n_truncation() < 2) throw TruncationError("coefficient_rows needs truncation >= 2");
  // Row k holds f'_{k+1}: k runs over the conj(z) power minus one, l over z powers.
  const int K = grid.n_truncation() - 1;
  const int L = grid.m_truncation() - 1;
  Eigen::MatrixXcd a(K + 1, L + 1);
  for (int k = 0; k <= K; ++k)
    for (int l = 0; l <= L; ++l) a(k, l) = static_cast<double>(l + 1) * grid(l + 1, k + 1);
  return a;
}

BidegreeSeries laplacian_weighted_monomial(int k, int l) {
  if (k < 0 || l < 0 || k > 20 || l > 20) throw DomainError("laplacian_weighted_monomial needs 0 <= k, l <= 20");
  // d dbar [z^k zb^l - 2 z^{k+1} zb^{l+1} + z^{k+2} zb^{l+2}].
  BidegreeSeries p(k + 1, l + 1);
  if (k > 0 && l > 0) p.at(k - 1, l - 1) += static_cast<double>(k * l);
  p.at(k, l) -= 2.0 * (k + 1) * (l + 1);
  p.at(k + 1, l + 1) += static_cast<double>((k + 2) * (l + 2));
  return p;
}

std::string to_string(MomentOrientation o) {
  switch (o) {
    case MomentOrientation::FullProductHolomorphicRow:
      return "full_product/holomorphic_row";
    case MomentOrientation::FullProductConjugateRow:
      return "full_product/conjugate_row";
    case MomentOrientation::WeightOnlyHolomorphicRow:
      return "weight_only/holomorphic_row";
    case MomentOrientation::WeightOnlyConjugateRow:
      return "weight_only/conjugate_row";
  }
  return "?";
}

MomentOrientation orientation_from_string(const std::string& s) {
  for (auto o : {MomentOrientation::FullProductHolomorphicRow, MomentOrientation::FullProductConjugateRow,
                 MomentOrientation::WeightOnlyHolomorphicRow, MomentOrientation::WeightOnlyConjugateRow}) {
    if (to_string(o) == s) return o;
  }
  throw DomainError("unknown moment orientation '" + s + "'");
}

namespace {

/// Values of the oriented test polynomials for all (k, l) at one point.
class TestPolynomials {
 public:
  TestPolynomials(int kmax, int lmax, MomentOrientation o) : kmax_(kmax), lmax_(lmax), o_(o) {}

  std::size_t dim() const { return static_cast<std::size_t>((kmax_ + 1) * (lmax_ + 1)); }

  void eval(Complex zeta, Complex scale, std::span<Complex> out) const {
    const int top = std::max(kmax_, lmax_) + 2;
    std::array<Complex, 48> zp{}, zbp{};
    zp[0] = zbp[0] = 1.0;
    for (int i = 1; i <= top; ++i) {
      zp[i] = zp[i - 1] * zeta;
      zbp[i] = zbp[i - 1] * std::conj(zeta);
    }
    const double r2 = std::norm(zeta);
    const bool holo_row = o_ == MomentOrientation::FullProductHolomorphicRow ||
                          o_ == MomentOrientation::WeightOnlyHolomorphicRow;
    const bool full = o_ == MomentOrientation::FullProductHolomorphicRow ||
                      o_ == MomentOrientation::FullProductConjugateRow;
    for (int k = 0; k <= kmax_; ++k) {
      for (int l = 0; l <= lmax_; ++l) {
        const int p = holo_row ? k : l;  // power of zeta
        const int q = holo_row ? l : k;  // power of conj(zeta)
        Complex v;
        if (full) {
          v = -2.0 * (p + 1) * (q + 1) * zp[p] * zbp[q] + static_cast<double>((p + 2) * (q + 2)) * zp[p + 1] * zbp[q + 1];
          if (p > 0 && q > 0) v += static_cast<double>(p * q) * zp[p - 1] * zbp[q - 1];
        } else {
          v = (-2.0 + 4.0 * r2) * zp[p] * zbp[q];
        }
        out[k * (lmax_ + 1) + l] = scale * v;
      }
    }
  }

 private:
  int kmax_, lmax_;
  MomentOrientation o_;
};

}  // namespace

MomentMatrix moment_matrix(const Symbol& u, int kmax, int lmax, const QuadratureRule& rule,
                           const GradingOptions& grading, MomentOrientation orientation) {
  validate(u);
  if (kmax < 0 || lmax < 0 || kmax > 20 || lmax > 20) throw DomainError("moment indices must lie in [0, 20]");
  const TestPolynomials tp(kmax, lmax, orientation);
  const std::size_t dim = tp.dim();
  std::vector<Complex> total(dim), piece(dim);

  const auto& K = u.holomorphic;
  const auto& L = u.antiholomorphic;
  integrate_many(polar_nodes(rule),
                 [&](Complex zeta, std::span<Complex> out) { tp.eval(zeta, harmonic_eval(K, L, zeta), out); }, total);
  for (const auto& atom : u.atoms) {
    disk_integrate_singular_many(
        [&](Complex zeta, std::span<Complex> out) { tp.eval(zeta, atom.eval(zeta), out); }, dim,
        SingularityPlan{{atom.center}, grading}, rule, piece);
    for (std::size_t d = 0; d < dim; ++d) total[d] += piece[d];
  }

  MomentMatrix m{Eigen::MatrixXcd(kmax + 1, lmax + 1), orientation};
  for (int k = 0; k <= kmax; ++k)
    for (int l = 0; l <= lmax; ++l) m.entries(k, l) = total[k * (lmax + 1) + l];
  return m;
}

MomentMatrix moment_matrix_from_grid(const BidegreeSeries& grid, int kmax, int lmax) {
  if (grid.n_truncation() < kmax + 1 || grid.m_truncation() < lmax + 1) {
    throw TruncationError("grid truncation too small for requested moment indices");
  }
  MomentMatrix m{Eigen::MatrixXcd(kmax + 1, lmax + 1), kCalibratedOrientation};
  for (int k = 0; k <= kmax; ++k)
    for (int l = 0; l <= lmax; ++l) m.entries(k, l) = grid(l + 1, k + 1);
  return m;
}

OrientationCalibration calibrate_orientation(int kmax, const QuadratureRule& rule, const GradingOptions& grading) {
  // A real center gives a k/l-symmetric matrix, so a second probe off the
  // real axis pins the row convention.
  const std::array<Complex, 2> centers{Complex(0.3, 0.0), Complex(0.0, 0.3)};
  OrientationCalibration cal{MomentOrientation::FullProductHolomorphicRow, {}};
  double best = std::numeric_limits<double>::infinity();
  for (auto o : {MomentOrientation::FullProductHolomorphicRow, MomentOrientation::FullProductConjugateRow,
                 MomentOrientation::WeightOnlyHolomorphicRow, MomentOrientation::WeightOnlyConjugateRow}) {
    double mismatch = 0.0;
    for (const Complex c : centers) {
      const auto reference = moment_matrix_from_grid(berezin_exact_log(c), kmax, kmax).entries;
      const auto m = moment_matrix(Symbol::from_atoms({log_atom(c)}), kmax, kmax, rule, grading, o).entries;
      mismatch = std::max(mismatch, (m - reference).cwiseAbs().maxCoeff());
    }
    cal.mismatch.push_back(mismatch);
    if (mismatch < best) {
      best = mismatch;
      cal.orientation = o;
    }
  }
  return cal;
}

}  // namespace berezin
