#include "distmul/regularize.hpp"

#include "distmul/error.hpp"
#include "distmul/numerics.hpp"

#include <cmath>
#include <vector>

namespace distmul {

SeqParams::SeqParams(double beta, long n) : beta_(beta), n_(n) {
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) fail(ErrorKind::Domain, "beta must be positive");
  if (n_ < 1) fail(ErrorKind::Domain, "sequence index n must be >= 1");
  scale_ = std::pow(static_cast<double>(n_), beta_);
}

double delta_seq(const Mollifier& phi, const SeqParams& p, double x) {
  return p.scale() * phi(p.scale() * x);
}

double conv_delta_deriv(int k, const Mollifier& phi, const SeqParams& p, double x) {
  if (k < 0 || k > phi.max_deriv())
    fail(ErrorKind::UnsupportedOrder, "delta derivative order " + std::to_string(k) +
                                          " beyond mollifier derivative support");
  return std::pow(p.scale(), k + 1) * phi(p.scale() * x, k);
}

double conv_function(const CompactContinuous& f, const Mollifier& phi, const SeqParams& p,
                     double x, double tol) {
  const double h = p.radius();
  if (x + h < f.lower() || x - h > f.upper()) return 0.0;
  // y = s * h; f(x - s h) has kinks where x - s h hits a breakpoint or an edge.
  std::vector<double> splits{0.0};
  auto add = [&](double point) { splits.push_back((x - point) / h); };
  add(f.lower());
  add(f.upper());
  for (double bp : f.breakpoints()) add(bp);
  try {
    return adaptive_quad([&](double s) { return f(x - s * h) * phi(s); }, -1.0, 1.0,
                         QuadOptions{tol, 0.0, 4000}, splits)
        .value;
  } catch (const NumericFailure& e) {
    throw NumericFailure("conv_function(" + f.label() + ", n = " + std::to_string(p.n()) +
                             ", x = " + std::to_string(x) + "): " + e.what(),
                         e.partial_value(), e.error_estimate(), e.evaluations());
  }
}

}  // namespace distmul
