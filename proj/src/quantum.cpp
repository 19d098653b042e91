#include "distmul/quantum.hpp"

#include "distmul/error.hpp"
#include "distmul/product.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace distmul {

const char* to_string(CouplingSource s) noexcept {
  switch (s) {
    case CouplingSource::Critical: return "critical";
    case CouplingSource::Supercritical: return "supercritical";
    case CouplingSource::Separated: return "separated";
    case CouplingSource::Generalized: return "generalized";
  }
  return "unknown";
}

PointInteraction effective_coupling(double V0, double alpha, double beta, const Mollifier& phi,
                                    double d) {
  if (phi.m() % 2 != 0 || phi.m() <= 1)
    fail(ErrorKind::Precondition, "point coupling needs even m > 1");
  if (!(beta > 0.0) || !(alpha > 0.0)) fail(ErrorKind::Domain, "alpha and beta must be positive");
  const double crit = 2.0 * beta;
  const bool critical = std::abs(alpha - crit) <= 1e-12 * crit;
  if (!critical && alpha < crit)
    fail(ErrorKind::OutsideValidity, "alpha < 2 beta: delta x delta is not defined there");
  if (d != 0.0) return {0.0, CouplingSource::Separated};
  if (!critical) return {0.0, CouplingSource::Supercritical};
  return {V0 / std::numbers::pi * phi.moment(2).value, CouplingSource::Critical};
}

PointInteraction effective_coupling(double V0, int l, int k, double alpha, double beta,
                                    const Mollifier& phi, double d) {
  if (d != 0.0) return {0.0, CouplingSource::Separated};
  const auto form = closed_form(l, k, alpha, beta, phi);
  if (!form)
    fail(ErrorKind::OutsideValidity, "no closed form for delta^(" + std::to_string(l) +
                                         ") x delta^(" + std::to_string(k) + ") at this alpha");
  return {form->coefficient * V0, CouplingSource::Generalized};
}

ScatteringSolution scattering_coefficients(const PointInteraction& pi, double k,
                                           std::complex<double> A) {
  if (!(k > 0.0)) fail(ErrorKind::Domain, "wavenumber k must be positive");
  const std::complex<double> ik(0.0, k);
  const std::complex<double> den = ik - pi.g;
  return {k, A, pi.g / den, ik / den};
}

std::complex<double> scattering_state(const PointInteraction& pi, double k,
                                      std::complex<double> A, double x, int order,
                                      std::optional<Side> side) {
  if (order < 0 || order > 2) fail(ErrorKind::UnsupportedOrder, "wavefunction derivative order must be 0..2");
  const auto sol = scattering_coefficients(pi, k, A);
  const std::complex<double> ik(0.0, k);
  auto plane = [&](std::complex<double> dir) {
    std::complex<double> factor = 1.0;
    for (int i = 0; i < order; ++i) factor *= dir;
    return factor * std::exp(dir * x);
  };
  const bool left = x < 0.0 || (x == 0.0 && side == Side::Left);
  if (pi.g == 0.0) return A * plane(ik);
  if (left) return A * (plane(ik) + sol.r * plane(-ik));
  return A * sol.t * plane(ik);
}

MatchingReport verify_matching(const PointInteraction& pi, double k) {
  if (pi.g == 0.0) fail(ErrorKind::Precondition, "matching conditions need a nonzero coupling");
  const std::complex<double> A(1.0, 0.0);
  MatchingReport rep;

  const auto left0 = scattering_state(pi, k, A, 0.0, 0, Side::Left);
  const auto right0 = scattering_state(pi, k, A, 0.0, 0, Side::Right);
  const double scale0 = std::max(1.0, std::abs(right0));
  rep.continuity_error = std::abs(left0 - right0);
  rep.continuity_ok = rep.continuity_error <= kContinuityTol * scale0;

  const auto dleft = scattering_state(pi, k, A, 0.0, 1, Side::Left);
  const auto dright = scattering_state(pi, k, A, 0.0, 1, Side::Right);
  const double scale1 = std::max({1.0, std::abs(dleft), std::abs(dright)});
  rep.jump_error = std::abs((dright - dleft) - 2.0 * pi.g * right0);
  rep.jump_ok = rep.jump_error <= kJumpTol * scale1;

  const double E = 0.5 * k * k;
  constexpr std::array<double, 6> kSamples = {-2.0, -0.7, -0.1, 0.1, 0.7, 2.0};
  for (double x : kSamples) {
    const auto psi = scattering_state(pi, k, A, x, 0);
    const auto psi2 = scattering_state(pi, k, A, x, 2);
    const double scale = std::max({1.0, std::abs(psi2), E * std::abs(psi)});
    rep.free_equation_error =
        std::max(rep.free_equation_error, std::abs(-0.5 * psi2 - E * psi) / scale);
  }
  rep.free_equation_ok = rep.free_equation_error <= kContinuityTol;
  if (pi.g < 0.0) rep.bound_state_energy = -0.5 * pi.g * pi.g;
  return rep;
}

}  // namespace distmul
