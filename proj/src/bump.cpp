#include "distmul/bump.hpp"

#include "distmul/error.hpp"
#include "distmul/poly.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace distmul::bump {
namespace {

constexpr double kFlushExponent = -700.0;

struct Prefactors {
  std::array<std::vector<double>, kMaxOrder + 1> coeffs;

  Prefactors() {
    const Poly s = Poly({Rational(-1), Rational(0), Rational(1)});  // u^2 - 1
    const Poly u = Poly::monomial(1);
    Poly p({Rational(1)});
    coeffs[0] = p.to_double();
    for (int r = 0; r < kMaxOrder; ++r) {
      p = p.derivative() * s * s - Rational(4 * r) * (u * s * p) - Rational(2) * (u * p);
      coeffs[static_cast<std::size_t>(r) + 1] = p.to_double();
    }
  }
};

const Prefactors& prefactors() {
  static const Prefactors table;
  return table;
}

}  // namespace

std::span<const double> prefactor(int r) {
  if (r < 0 || r > kMaxOrder)
    fail(ErrorKind::UnsupportedOrder, "bump derivative order " + std::to_string(r) +
                                          " exceeds supported maximum " +
                                          std::to_string(kMaxOrder));
  return prefactors().coeffs[static_cast<std::size_t>(r)];
}

double derivative(double u, int r) {
  const auto p = prefactor(r);
  if (!(std::abs(u) < 1.0)) return 0.0;
  const double s = u * u - 1.0;
  const double expo = 1.0 / s;
  if (expo < kFlushExponent) return 0.0;
  if (r == 0) return std::exp(expo);
  // Fold the (u^2-1)^(-2r) factor into the exponent to keep it finite near |u| = 1.
  return horner(p, u) * std::exp(expo - 2.0 * r * std::log(-s));
}

double weighted_derivative(std::span<const double> poly, double center, double width,
                           double x, int r) {
  prefactor(r);  // validates r
  const double u = (x - center) / width;
  if (!(std::abs(u) < 1.0)) return 0.0;

  // Leibniz: sum_j C(r,j) p^(r-j)(x) * width^-j * B^(j)(u).
  std::vector<double> dp(poly.begin(), poly.end());
  std::array<double, kMaxOrder + 1> pders{};
  for (int i = 0; i <= r; ++i) {
    pders[static_cast<std::size_t>(i)] = horner(dp, x);
    for (std::size_t q = 1; q < dp.size(); ++q) dp[q - 1] = dp[q] * static_cast<double>(q);
    if (!dp.empty()) dp.pop_back();
  }

  double sum = 0.0;
  double binom = 1.0;
  double inv_w_pow = 1.0;
  for (int j = 0; j <= r; ++j) {
    const double pd = pders[static_cast<std::size_t>(r - j)];
    if (pd != 0.0) sum += binom * pd * inv_w_pow * derivative(u, j);
    binom = binom * (r - j) / (j + 1);
    inv_w_pow /= width;
  }
  return sum;
}

}  // namespace distmul::bump
