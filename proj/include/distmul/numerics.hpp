#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace distmul {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_intervals = 4000;
  /// Tolerance relative to the integral of |f|; useful when the signed
  /// integral cancels to (near) zero.
  double l1_rel_tol = 0.0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature over [a, b].
///
/// The interval is first cut at every split point strictly inside (a, b); the
/// subinterval with the largest error estimate is bisected until the total
/// estimate drops below max(abs_tol, rel_tol * |value|, l1_rel_tol * |f|_1).
/// Throws
/// NumericFailure (carrying the partial result) when max_intervals is hit.
QuadResult adaptive_quad(const std::function<double(double)>& f, double a, double b,
                         const QuadOptions& opts, std::span<const double> split_points = {});

inline QuadResult adaptive_quad(const std::function<double(double)>& f, double a, double b,
                                double tol, std::span<const double> split_points = {}) {
  return adaptive_quad(f, a, b, QuadOptions{tol, 0.0, 4000, 0.0}, split_points);
}

enum class LimitTag { None, Divergent, Oscillating, Slow };

const char* to_string(LimitTag tag) noexcept;

struct LimitEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  LimitTag tag = LimitTag::None;
  /// Decay exponent q of the fitted tail c * n^-q; 0 when no fit was applied.
  double fitted_exponent = 0.0;
  bool fit_applied = false;
  std::vector<std::pair<double, double>> terms;
};

/// Estimate lim_{n->inf} of a sampled sequence.
///
/// Convergence is decided from raw differences only: the last two successive
/// differences must both be <= tol * max(1, |last|). The fitted power-law tail
/// only refines the reported value, and error_estimate never exceeds the last
/// raw difference, so converged implies error_estimate <= tol * max(1, |value|).
LimitEstimate extrapolate(std::vector<std::pair<double, double>> terms, double tol);

/// Least-squares slope q of log|v| = log c - q log n over the given terms.
/// Terms with v == 0 are skipped; fewer than two usable terms is an error.
double decay_exponent(std::span<const std::pair<double, double>> terms);

/// n0 * 2^i for i in [0, steps).
std::vector<long> geometric_schedule(long n0, int steps);

}  // namespace distmul
