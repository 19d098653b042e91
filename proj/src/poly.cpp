#include "distmul/poly.hpp"

#include <algorithm>

namespace distmul {

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(int degree, const Rational& c) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return Poly(std::move(v));
}

Rational Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Poly(std::move(d));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
  return Poly(std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) { return a + Rational(-1) * b; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
  std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(r));
}

Poly operator*(const Rational& s, const Poly& p) {
  std::vector<Rational> r = p.coeffs_;
  for (auto& c : r) c *= s;
  return Poly(std::move(r));
}

std::vector<double> Poly::to_double() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(static_cast<double>(c));
  return out;
}

double horner(std::span<const double> coeffs, double x) noexcept {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly2::Poly2(int max_x, int max_e)
    : nx_(max_x + 1), ne_(max_e + 1), c_(static_cast<std::size_t>(nx_ * ne_)) {}

Poly2 Poly2::term(int i, int j, const Rational& c) {
  Poly2 p(i, j);
  p.set(i, j, c);
  return p;
}

Rational Poly2::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i >= nx_ || j >= ne_) return 0;
  return c_[static_cast<std::size_t>(i * ne_ + j)];
}

void Poly2::set(int i, int j, const Rational& c) {
  c_[static_cast<std::size_t>(i * ne_ + j)] = c;
}

Poly2 Poly2::dx() const {
  if (nx_ <= 1) return Poly2(0, std::max(ne_ - 1, 0));
  Poly2 r(nx_ - 2, ne_ - 1);
  for (int i = 1; i < nx_; ++i)
    for (int j = 0; j < ne_; ++j) r.set(i - 1, j, coeff(i, j) * i);
  return r;
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
  Poly2 r(std::max(a.nx_, b.nx_) - 1, std::max(a.ne_, b.ne_) - 1);
  for (int i = 0; i < r.nx_; ++i)
    for (int j = 0; j < r.ne_; ++j) r.set(i, j, a.coeff(i, j) + b.coeff(i, j));
  return r;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 r(a.nx_ + b.nx_ - 2, a.ne_ + b.ne_ - 2);
  for (int i = 0; i < a.nx_; ++i)
    for (int j = 0; j < a.ne_; ++j) {
      const Rational& ca = a.c_[static_cast<std::size_t>(i * a.ne_ + j)];
      if (ca == 0) continue;
      for (int k = 0; k < b.nx_; ++k)
        for (int l = 0; l < b.ne_; ++l)
          r.c_[static_cast<std::size_t>((i + k) * r.ne_ + (j + l))] +=
              ca * b.c_[static_cast<std::size_t>(k * b.ne_ + l)];
    }
  return r;
}

Poly2 operator*(const Rational& s, const Poly2& p) {
  Poly2 r = p;
  for (auto& c : r.c_) c *= s;
  return r;
}

bool operator==(const Poly2& a, const Poly2& b) {
  const int nx = std::max(a.nx_, b.nx_);
  const int ne = std::max(a.ne_, b.ne_);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ne; ++j)
      if (a.coeff(i, j) != b.coeff(i, j)) return false;
  return true;
}

std::vector<double> Poly2::to_double() const {
  std::vector<double> out;
  out.reserve(c_.size());
  for (const auto& c : c_) out.push_back(static_cast<double>(c));
  return out;
}

}  // namespace distmul
