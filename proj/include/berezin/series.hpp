#pragma once

#include <vector>

#include <Eigen/Dense>

#include "berezin/types.hpp"

namespace berezin {

/// Truncated Taylor series sum_{m=0}^{M} c_m z^m.
class PowerSeries {
 public:
  PowerSeries() : coeffs_(1, Complex{}) {}
  explicit PowerSeries(std::vector<Complex> coeffs);

  static PowerSeries zero(int truncation);
  static PowerSeries constant(Complex c) { return PowerSeries({c}); }
  static PowerSeries monomial(int degree, Complex c = 1.0);

  int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  /// Coefficient of z^m; zero beyond the truncation.
  Complex operator[](int m) const {
    return (m >= 0 && m < static_cast<int>(coeffs_.size())) ? coeffs_[m] : Complex{};
  }
  Complex& at(int m) { return coeffs_.at(m); }

  Complex eval(Complex z) const;
  PowerSeries resized(int truncation) const;
  /// Largest index with a coefficient above `tol` in modulus; -1 for the zero series.
  int degree(double tol = 0.0) const;
  double max_abs() const;

  PowerSeries& operator+=(const PowerSeries& other);
  PowerSeries& operator-=(const PowerSeries& other);
  PowerSeries& operator*=(Complex s);

 private:
  std::vector<Complex> coeffs_;
};

PowerSeries operator+(PowerSeries a, const PowerSeries& b);
PowerSeries operator-(PowerSeries a, const PowerSeries& b);
PowerSeries operator*(PowerSeries a, Complex s);
PowerSeries operator*(Complex s, PowerSeries a);

/// Cauchy product truncated at `truncation`.
PowerSeries multiply(const PowerSeries& a, const PowerSeries& b, int truncation);

/// Max |a_m - b_m| over the common index range.
double max_abs_diff(const PowerSeries& a, const PowerSeries& b);

/// Truncated double series sum c[m][n] z^m conj(z)^n.
///
/// The complexified function is sum c[m][n] z^m w^n, so column n collects the
/// holomorphic coefficient function f_n(z) of w^n.
class BidegreeSeries {
 public:
  BidegreeSeries() : c_(Eigen::MatrixXcd::Zero(1, 1)) {}
  BidegreeSeries(int m_trunc, int n_trunc);
  explicit BidegreeSeries(Eigen::MatrixXcd coeffs);

  int m_truncation() const { return static_cast<int>(c_.rows()) - 1; }
  int n_truncation() const { return static_cast<int>(c_.cols()) - 1; }

  Complex operator()(int m, int n) const {
    return (m >= 0 && n >= 0 && m < c_.rows() && n < c_.cols()) ? c_(m, n) : Complex{};
  }
  Complex& at(int m, int n) { return c_(m, n); }
  const Eigen::MatrixXcd& coeffs() const { return c_; }

  /// Grid of f(z) * conj(g(z)): c[m][n] = f_m conj(g_n).
  static BidegreeSeries outer(const PowerSeries& f, const PowerSeries& g);
  static BidegreeSeries holomorphic(const PowerSeries& f);
  /// Grid of conj(g(z)).
  static BidegreeSeries antiholomorphic(const PowerSeries& g);

  BidegreeSeries resized(int m_trunc, int n_trunc) const;
  double max_abs() const;

 private:
  Eigen::MatrixXcd c_;
};

BidegreeSeries bidegree_add(const BidegreeSeries& a, const BidegreeSeries& b);
BidegreeSeries bidegree_scale(const BidegreeSeries& a, Complex s);
/// Double convolution; output truncation is the sum of the inputs clipped to
/// `max_truncation`. Throws TruncationOverflow if an input already exceeds it.
BidegreeSeries bidegree_multiply(const BidegreeSeries& a, const BidegreeSeries& b,
                                 int max_truncation = kDefaultTruncation);
/// Grid of conj(u): c'[n][m] = conj(c[m][n]).
BidegreeSeries bidegree_conjugate(const BidegreeSeries& a);
Complex bidegree_eval(const BidegreeSeries& a, Complex z);

BidegreeSeries operator+(const BidegreeSeries& a, const BidegreeSeries& b);
BidegreeSeries operator-(const BidegreeSeries& a, const BidegreeSeries& b);
BidegreeSeries operator*(Complex s, const BidegreeSeries& a);

/// Max |a - b| over the common index rectangle.
double max_abs_diff(const BidegreeSeries& a, const BidegreeSeries& b);

}  // namespace berezin
