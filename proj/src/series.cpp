#include "berezin/series.hpp"

#include <algorithm>
#include <string>

#include "berezin/error.hpp"

namespace berezin {

namespace {

void check_truncation(int t) {
  if (t < 0 || t > kMaxTruncation) {
    throw TruncationOverflow("truncation " + std::to_string(t) + " outside [0, " +
                             std::to_string(kMaxTruncation) + "]");
  }
}

}  // namespace

PowerSeries::PowerSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.assign(1, Complex{});
  check_truncation(truncation());
}

PowerSeries PowerSeries::zero(int truncation) {
  check_truncation(truncation);
  return PowerSeries(std::vector<Complex>(truncation + 1));
}

PowerSeries PowerSeries::monomial(int degree, Complex c) {
  std::vector<Complex> v(degree + 1);
  v[degree] = c;
  return PowerSeries(std::move(v));
}

Complex PowerSeries::eval(Complex z) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

PowerSeries PowerSeries::resized(int truncation) const {
  check_truncation(truncation);
  std::vector<Complex> v(truncation + 1);
  std::copy_n(coeffs_.begin(), std::min<std::size_t>(v.size(), coeffs_.size()), v.begin());
  return PowerSeries(std::move(v));
}

int PowerSeries::degree(double tol) const {
  for (int m = truncation(); m >= 0; --m) {
    if (std::abs(coeffs_[m]) > tol) return m;
  }
  return -1;
}

double PowerSeries::max_abs() const {
  double r = 0.0;
  for (const auto& c : coeffs_) r = std::max(r, std::abs(c));
  return r;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

PowerSeries& PowerSeries::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
PowerSeries operator*(PowerSeries a, Complex s) { return a *= s; }
PowerSeries operator*(Complex s, PowerSeries a) { return a *= s; }

PowerSeries multiply(const PowerSeries& a, const PowerSeries& b, int truncation) {
  check_truncation(truncation);
  std::vector<Complex> out(truncation + 1);
  for (int i = 0; i <= std::min(a.truncation(), truncation); ++i) {
    if (a[i] == Complex{}) continue;
    for (int j = 0; j <= std::min(b.truncation(), truncation - i); ++j) out[i + j] += a[i] * b[j];
  }
  return PowerSeries(std::move(out));
}

double max_abs_diff(const PowerSeries& a, const PowerSeries& b) {
  double r = 0.0;
  for (int m = 0; m <= std::min(a.truncation(), b.truncation()); ++m) r = std::max(r, std::abs(a[m] - b[m]));
  return r;
}

BidegreeSeries::BidegreeSeries(int m_trunc, int n_trunc) {
  check_truncation(m_trunc);
  check_truncation(n_trunc);
  c_ = Eigen::MatrixXcd::Zero(m_trunc + 1, n_trunc + 1);
}

BidegreeSeries::BidegreeSeries(Eigen::MatrixXcd coeffs) : c_(std::move(coeffs)) {
  if (c_.size() == 0) c_ = Eigen::MatrixXcd::Zero(1, 1);
  check_truncation(m_truncation());
  check_truncation(n_truncation());
}

BidegreeSeries BidegreeSeries::outer(const PowerSeries& f, const PowerSeries& g) {
  BidegreeSeries out(f.truncation(), g.truncation());
  for (int m = 0; m <= f.truncation(); ++m)
    for (int n = 0; n <= g.truncation(); ++n) out.c_(m, n) = f[m] * std::conj(g[n]);
  return out;
}

BidegreeSeries BidegreeSeries::holomorphic(const PowerSeries& f) {
  return outer(f, PowerSeries::constant(1.0));
}

BidegreeSeries BidegreeSeries::antiholomorphic(const PowerSeries& g) {
  return outer(PowerSeries::constant(1.0), g);
}

BidegreeSeries BidegreeSeries::resized(int m_trunc, int n_trunc) const {
  BidegreeSeries out(m_trunc, n_trunc);
  const auto r = std::min<Eigen::Index>(c_.rows(), out.c_.rows());
  const auto c = std::min<Eigen::Index>(c_.cols(), out.c_.cols());
  out.c_.topLeftCorner(r, c) = c_.topLeftCorner(r, c);
  return out;
}

double BidegreeSeries::max_abs() const { return c_.cwiseAbs().maxCoeff(); }

BidegreeSeries bidegree_add(const BidegreeSeries& a, const BidegreeSeries& b) {
  BidegreeSeries out = a.resized(std::max(a.m_truncation(), b.m_truncation()),
                                 std::max(a.n_truncation(), b.n_truncation()));
  for (int m = 0; m <= b.m_truncation(); ++m)
    for (int n = 0; n <= b.n_truncation(); ++n) out.at(m, n) += b(m, n);
  return out;
}

BidegreeSeries bidegree_scale(const BidegreeSeries& a, Complex s) {
  return BidegreeSeries(Eigen::MatrixXcd(a.coeffs() * s));
}

BidegreeSeries bidegree_multiply(const BidegreeSeries& a, const BidegreeSeries& b, int max_truncation) {
  if (a.m_truncation() > max_truncation || a.n_truncation() > max_truncation ||
      b.m_truncation() > max_truncation || b.n_truncation() > max_truncation) {
    throw TruncationOverflow("multiply input exceeds configured maximum " + std::to_string(max_truncation));
  }
  const int mt = std::min(a.m_truncation() + b.m_truncation(), max_truncation);
  const int nt = std::min(a.n_truncation() + b.n_truncation(), max_truncation);
  BidegreeSeries out(mt, nt);
  for (int m1 = 0; m1 <= a.m_truncation(); ++m1) {
    for (int n1 = 0; n1 <= a.n_truncation(); ++n1) {
      const Complex x = a(m1, n1);
      if (x == Complex{}) continue;
      for (int m2 = 0; m2 <= std::min(b.m_truncation(), mt - m1); ++m2)
        for (int n2 = 0; n2 <= std::min(b.n_truncation(), nt - n1); ++n2) out.at(m1 + m2, n1 + n2) += x * b(m2, n2);
    }
  }
  return out;
}

BidegreeSeries bidegree_conjugate(const BidegreeSeries& a) {
  return BidegreeSeries(Eigen::MatrixXcd(a.coeffs().adjoint()));
}

Complex bidegree_eval(const BidegreeSeries& a, Complex z) {
  // Horner in conj(z) per row, then Horner in z across rows.
  const Complex zb = std::conj(z);
  Complex acc{};
  for (int m = a.m_truncation(); m >= 0; --m) {
    Complex row{};
    for (int n = a.n_truncation(); n >= 0; --n) row = row * zb + a(m, n);
    acc = acc * z + row;
  }
  return acc;
}

BidegreeSeries operator+(const BidegreeSeries& a, const BidegreeSeries& b) { return bidegree_add(a, b); }
BidegreeSeries operator-(const BidegreeSeries& a, const BidegreeSeries& b) {
  return bidegree_add(a, bidegree_scale(b, -1.0));
}
BidegreeSeries operator*(Complex s, const BidegreeSeries& a) { return bidegree_scale(a, s); }

double max_abs_diff(const BidegreeSeries& a, const BidegreeSeries& b) {
  const int mt = std::min(a.m_truncation(), b.m_truncation());
  const int nt = std::min(a.n_truncation(), b.n_truncation());
  return (a.coeffs().topLeftCorner(mt + 1, nt + 1) - b.coeffs().topLeftCorner(mt + 1, nt + 1)).cwiseAbs().maxCoeff();
}

}  // namespace berezin
