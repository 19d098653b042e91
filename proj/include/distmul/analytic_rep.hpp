#pragma once

#include "distmul/core.hpp"
#include "distmul/poly.hpp"

#include <complex>
#include <vector>

namespace distmul {

inline constexpr int kMaxKernelOrder = 8;

/// delta^(k)_red(x, eps) = N(x, eps) / (pi * (x^2 + eps^2)^p).
///
/// The numerator is kept with exact rational coefficients; the 1/pi factor is
/// implied. Order k + 1 is the formal x-derivative of order k.
class RationalKernel {
 public:
  int order() const noexcept { return order_; }
  int power() const noexcept { return power_; }
  const Poly2& numerator() const noexcept { return numerator_; }

  double operator()(double x, double eps) const;

 private:
  friend const RationalKernel& kernel_for(int k);
  RationalKernel(int order, int power, Poly2 numerator);

  int order_;
  int power_;
  Poly2 numerator_;
  std::vector<double> coeffs_;
};

/// Cached kernel for delta^(k), k <= 8.
const RationalKernel& kernel_for(int k);

/// Numeric value of delta^(k)_red(x, eps). eps must be positive.
double delta_red(int k, double x, double eps);

/// T0(z) = (1 / 2 pi i) <delta^(k), (x - z)^-1> = k! / (2 pi i) * (-z)^-(k+1).
std::complex<double> cauchy(int k, std::complex<double> z);

/// T0(x + i eps) - T0(x - i eps), evaluated from the Cauchy transform. The
/// imaginary part cancels to rounding and is dropped.
double red_from_cauchy(int k, double x, double eps);

/// Same as red_from_cauchy but keeps the complex difference for inspection.
std::complex<double> red_from_cauchy_complex(int k, double x, double eps);

/// Boundary-value difference for a continuous compactly supported f: the
/// Poisson smoothing (1/pi) int f(y) eps / ((y - x)^2 + eps^2) dy.
double red_continuous(const CompactContinuous& f, double x, double eps);

}  // namespace distmul
