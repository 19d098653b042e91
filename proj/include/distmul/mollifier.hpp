#pragma once

#include <memory>
#include <vector>

namespace distmul {

inline constexpr int kMaxMollifierPower = 16;
inline constexpr int kMaxMollifierDerivative = 10;

struct Moment {
  int j = 0;
  double value = 0.0;
};

/// Phi(x) = x^m / F * exp(1/(x^2 - 1)) on |x| < 1, zero elsewhere, m even.
///
/// F normalizes Phi to unit mass and is fixed at construction. The moments
/// A_j = int Phi(t) / t^j dt are computed lazily, once per j, and shared by
/// every copy of the mollifier.
class Mollifier {
 public:
  int m() const noexcept { return m_; }
  double normalization() const noexcept { return F_; }
  int max_deriv() const noexcept { return kMaxMollifierDerivative; }

  /// Phi^(r)(x). Exactly 0 for |x| >= 1.
  double operator()(double x, int r = 0) const;

  /// A_j. Odd j gives exactly 0; m < j is a divergent-moment error.
  Moment moment(int j) const;

 private:
  struct Cache;
  friend Mollifier make_mollifier(int m);
  Mollifier(int m, double F, std::vector<double> poly);

  int m_;
  double F_;
  std::vector<double> poly_;  // x^m / F, ascending
  std::shared_ptr<Cache> cache_;
};

/// Builds Phi_m. Throws a parity error for odd m and unsupported-order for m
/// outside [0, 16]. Verifies unit mass by an independent quadrature.
Mollifier make_mollifier(int m);

double eval_phi(const Mollifier& phi, double x, int r);
Moment moment(const Mollifier& phi, int j);

}  // namespace distmul
