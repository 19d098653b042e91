#pragma once

// Point interaction H = -1/2 d^2/dx^2 + g delta(x) (hbar = mass = 1) produced
// by regularizing V0 delta(x) delta(x - d) with the merged product.

#include "distmul/mollifier.hpp"

#include <complex>
#include <optional>
#include <string>

namespace distmul {

enum class CouplingSource { Critical, Supercritical, Separated, Generalized };

const char* to_string(CouplingSource s) noexcept;

struct PointInteraction {
  double g = 0.0;
  CouplingSource source = CouplingSource::Separated;
};

/// V0 (delta x delta)_(alpha, beta) for d = 0; free particle for d != 0.
/// alpha < 2 beta is outside validity; m must be even and > 1.
PointInteraction effective_coupling(double V0, double alpha, double beta, const Mollifier& phi,
                                    double d);

/// V0 (delta^(l) x delta^(k))_(alpha, beta) using the tabulated closed form.
/// Throws when the pair/regime has no closed form.
PointInteraction effective_coupling(double V0, int l, int k, double alpha, double beta,
                                    const Mollifier& phi, double d);

struct ScatteringSolution {
  double k = 0.0;
  std::complex<double> A{1.0, 0.0};
  std::complex<double> r;
  std::complex<double> t;
  double energy() const { return 0.5 * k * k; }
};

/// r = g / (ik - g), t = ik / (ik - g).
ScatteringSolution scattering_coefficients(const PointInteraction& pi, double k,
                                           std::complex<double> A = {1.0, 0.0});

enum class Side { Left, Right };

/// Psi^(order)(x), order in {0, 1, 2}. At x = 0 the side selects the one-sided limit.
std::complex<double> scattering_state(const PointInteraction& pi, double k,
                                      std::complex<double> A, double x, int order = 0,
                                      std::optional<Side> side = std::nullopt);

struct MatchingReport {
  double continuity_error = 0.0;    // |Psi(0-) - Psi(0+)|
  double jump_error = 0.0;          // |Psi'(0+) - Psi'(0-) - 2 g Psi(0)|
  double free_equation_error = 0.0; // max |-1/2 Psi'' - E Psi| away from 0
  bool continuity_ok = false;
  bool jump_ok = false;
  bool free_equation_ok = false;
  /// E = -g^2 / 2 for an attractive coupling (g < 0). Standard point-interaction
  /// fact, reported as an extension.
  std::optional<double> bound_state_energy;
  bool pass() const { return continuity_ok && jump_ok && free_equation_ok; }
};

inline constexpr double kContinuityTol = 1e-12;
inline constexpr double kJumpTol = 1e-10;

/// Requires g != 0.
MatchingReport verify_matching(const PointInteraction& pi, double k);

}  // namespace distmul
