#pragma once

// Derivatives of the standard bump B(u) = exp(1/(u^2 - 1)) on |u| < 1.
//
// B^(r)(u) = P_r(u) / (u^2 - 1)^(2r) * B(u), where the integer polynomials P_r
// follow P_0 = 1 and
//   P_{r+1} = P_r' (u^2-1)^2 - 4 r u (u^2-1) P_r - 2 u P_r.
// The P_r are generated with exact arithmetic once and cached as doubles.

#include <span>

namespace distmul::bump {

inline constexpr int kMaxOrder = 12;

/// B^(r)(u). Exactly 0 for |u| >= 1 and wherever 1/(u^2-1) < -700.
double derivative(double u, int r);

/// Coefficients of P_r (ascending degree), r <= kMaxOrder.
std::span<const double> prefactor(int r);

/// r-th derivative of p(x) * B((x - center) / width), p given as ascending
/// double coefficients. r <= kMaxOrder.
double weighted_derivative(std::span<const double> poly, double center, double width,
                           double x, int r);

}  // namespace distmul::bump
