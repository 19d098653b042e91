#include "distmul/analytic_rep.hpp"

#include "distmul/error.hpp"
#include "distmul/numerics.hpp"

#include <cmath>
#include <numbers>

namespace distmul {

RationalKernel::RationalKernel(int order, int power, Poly2 numerator)
    : order_(order), power_(power), numerator_(std::move(numerator)) {
  coeffs_ = numerator_.to_double();
}

double RationalKernel::operator()(double x, double eps) const {
  const int ne = numerator_.max_e() + 1;
  double num = 0.0;
  double xp = 1.0;
  for (int i = 0; i <= numerator_.max_x(); ++i) {
    double row = 0.0;
    for (int j = ne - 1; j >= 0; --j) row = row * eps + coeffs_[static_cast<std::size_t>(i * ne + j)];
    num += row * xp;
    xp *= x;
  }
  const double base = x * x + eps * eps;
  double den = 1.0;
  for (int i = 0; i < power_; ++i) den *= base;
  return num / (std::numbers::pi * den);
}

const RationalKernel& kernel_for(int k) {
  if (k < 0 || k > kMaxKernelOrder)
    fail(ErrorKind::UnsupportedOrder, "kernel order " + std::to_string(k) + " outside [0, " +
                                          std::to_string(kMaxKernelOrder) + "]");
  static const std::vector<RationalKernel> table = [] {
    std::vector<RationalKernel> out;
    // d/dx [N / D^p] = (N_x D - 2 p x N) / D^(p+1),  D = x^2 + e^2.
    const Poly2 D = Poly2::term(2, 0, 1) + Poly2::term(0, 2, 1);
    const Poly2 x = Poly2::term(1, 0, 1);
    Poly2 numerator = Poly2::term(0, 1, 1);
    int power = 1;
    for (int order = 0; order <= kMaxKernelOrder; ++order) {
      out.push_back(RationalKernel(order, power, numerator));
      numerator = numerator.dx() * D + Rational(-2 * power) * (x * numerator);
      ++power;
    }
    return out;
  }();
  return table[static_cast<std::size_t>(k)];
}

double delta_red(int k, double x, double eps) {
  if (!(eps > 0.0)) fail(ErrorKind::Domain, "delta_red needs eps > 0");
  return kernel_for(k)(x, eps);
}

std::complex<double> cauchy(int k, std::complex<double> z) {
  if (k < 0 || k > kMaxKernelOrder)
    fail(ErrorKind::UnsupportedOrder, "cauchy order " + std::to_string(k) + " unsupported");
  if (z == std::complex<double>(0.0, 0.0))
    fail(ErrorKind::OnSupport, "cauchy transform of delta^(k) is undefined at z = 0");
  const std::complex<double> w = -1.0 / z;
  std::complex<double> p = w;
  double factorial = 1.0;
  for (int i = 1; i <= k; ++i) {
    p *= w;
    factorial *= i;
  }
  return factorial * p / std::complex<double>(0.0, 2.0 * std::numbers::pi);
}

std::complex<double> red_from_cauchy_complex(int k, double x, double eps) {
  if (!(eps > 0.0)) fail(ErrorKind::Domain, "red_from_cauchy needs eps > 0");
  return cauchy(k, {x, eps}) - cauchy(k, {x, -eps});
}

double red_from_cauchy(int k, double x, double eps) {
  return red_from_cauchy_complex(k, x, eps).real();
}

double red_continuous(const CompactContinuous& f, double x, double eps) {
  if (!(eps > 0.0)) fail(ErrorKind::Domain, "red_continuous needs eps > 0");
  const double a = f.lower();
  const double b = f.upper();
  // Split off f(x) times the exact kernel mass on [a, b]; the remainder
  // (f(y) - f(x)) * kernel is bounded, so quadrature never sees the peak.
  const double fx = f(x);
  const double mass = (std::atan((b - x) / eps) - std::atan((a - x) / eps)) / std::numbers::pi;
  std::vector<double> splits = f.breakpoints();
  splits.push_back(x);
  splits.push_back(x - eps);
  splits.push_back(x + eps);
  const double rest =
      adaptive_quad(
          [&](double y) {
            const double d = y - x;
            return (f(y) - fx) * eps / (d * d + eps * eps);
          },
          a, b, QuadOptions{1e-12, 1e-10, 4000}, splits)
          .value /
      std::numbers::pi;
  return fx * mass + rest;
}

}  // namespace distmul
