#include "distmul/mollifier.hpp"

#include "distmul/bump.hpp"
#include "distmul/error.hpp"
#include "distmul/numerics.hpp"

#include <array>
#include <cmath>
#include <mutex>

namespace distmul {

struct Mollifier::Cache {
  std::array<std::once_flag, kMaxMollifierPower + 1> once;
  std::array<double, kMaxMollifierPower + 1> value{};
};

namespace {

constexpr double kMomentTol = 1e-10;

// int_{-1}^{1} t^p exp(1/(t^2-1)) dt for even p.
double weighted_bump_integral(int p, double abs_tol) {
  const double splits[] = {0.0};
  return adaptive_quad(
             [p](double t) { return std::pow(t, p) * bump::derivative(t, 0); }, -1.0, 1.0,
             QuadOptions{abs_tol, 1e-13, 4000}, splits)
      .value;
}

}  // namespace

Mollifier::Mollifier(int m, double F, std::vector<double> poly)
    : m_(m), F_(F), poly_(std::move(poly)), cache_(std::make_shared<Cache>()) {}

Mollifier make_mollifier(int m) {
  if (m < 0 || m > kMaxMollifierPower)
    fail(ErrorKind::UnsupportedOrder,
         "mollifier power m = " + std::to_string(m) + " outside [0, 16]");
  if (m % 2 != 0)
    fail(ErrorKind::Parity, "mollifier power m = " + std::to_string(m) +
                                " is odd; m must be even for a nonzero mass");

  // F spans 6e-4..0.44 over the supported m. The relative tolerance keeps
  // the unit-mass check well inside 1e-10 for every m.
  const double F = weighted_bump_integral(m, 1e-15);
  std::vector<double> poly(static_cast<std::size_t>(m) + 1, 0.0);
  poly.back() = 1.0 / F;
  Mollifier phi(m, F, std::move(poly));

  const double splits[] = {-0.5, 0.0, 0.5};
  const double mass =
      adaptive_quad([&phi](double x) { return phi(x); }, -1.0, 1.0, QuadOptions{1e-13, 0.0, 4000},
                    splits)
          .value;
  if (std::abs(mass - 1.0) > 1e-10)
    throw NumericFailure("mollifier normalization check failed for m = " + std::to_string(m), mass,
                         std::abs(mass - 1.0), 0);
  return phi;
}

double Mollifier::operator()(double x, int r) const {
  if (r < 0 || r > kMaxMollifierDerivative)
    fail(ErrorKind::UnsupportedOrder, "mollifier derivative order " + std::to_string(r) +
                                          " exceeds " + std::to_string(kMaxMollifierDerivative));
  return bump::weighted_derivative(poly_, 0.0, 1.0, x, r);
}

Moment Mollifier::moment(int j) const {
  if (j < 1) fail(ErrorKind::Domain, "moment index j must be positive");
  if (m_ < j)
    fail(ErrorKind::DivergentMoment, "A_" + std::to_string(j) + " diverges for m = " +
                                         std::to_string(m_) + " (needs m >= j)");
  if (j % 2 != 0) return {j, 0.0};
  const auto idx = static_cast<std::size_t>(j);
  std::call_once(cache_->once[idx], [this, idx, j] {
    cache_->value[idx] = weighted_bump_integral(m_ - j, kMomentTol * F_) / F_;
  });
  return {j, cache_->value[idx]};
}

double eval_phi(const Mollifier& phi, double x, int r) { return phi(x, r); }

Moment moment(const Mollifier& phi, int j) { return phi.moment(j); }

}  // namespace distmul
