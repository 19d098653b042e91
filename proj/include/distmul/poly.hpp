#pragma once

// Exact-coefficient polynomials used to build derivative formulas symbolically.
// Coefficients are arbitrary-precision rationals; evaluation converts them to
// double once, at construction of the evaluator.

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <vector>

namespace distmul {

using Rational = boost::multiprecision::cpp_rational;

/// Univariate polynomial, ascending degree.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);

  static Poly monomial(int degree, const Rational& c = 1);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  Rational coeff(int i) const;

  Poly derivative() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& s, const Poly& p);
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  std::vector<double> to_double() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Horner evaluation of double coefficients (ascending degree).
double horner(std::span<const double> coeffs, double x) noexcept;

/// Polynomial in two variables (x, e). Coefficient (i, j) multiplies x^i e^j.
class Poly2 {
 public:
  Poly2() = default;
  Poly2(int max_x, int max_e);

  static Poly2 term(int i, int j, const Rational& c);

  int max_x() const noexcept { return nx_ - 1; }
  int max_e() const noexcept { return ne_ - 1; }
  Rational coeff(int i, int j) const;
  void set(int i, int j, const Rational& c);

  Poly2 dx() const;
  friend Poly2 operator+(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(const Rational& s, const Poly2& p);
  friend bool operator==(const Poly2& a, const Poly2& b);

  /// Dense double copy, row-major with stride max_e() + 1.
  std::vector<double> to_double() const;

 private:
  int nx_ = 0;
  int ne_ = 0;
  std::vector<Rational> c_;  // row-major, index i * ne_ + j
};

}  // namespace distmul
