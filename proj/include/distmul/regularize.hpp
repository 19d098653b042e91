#pragma once

#include "distmul/core.hpp"
#include "distmul/mollifier.hpp"

namespace distmul {

/// Rate and index of the delta-sequence n^beta * Phi(n^beta x).
class SeqParams {
 public:
  SeqParams(double beta, long n);

  double beta() const noexcept { return beta_; }
  long n() const noexcept { return n_; }
  /// n^beta
  double scale() const noexcept { return scale_; }
  /// Half-width n^-beta of the sequence's support.
  double radius() const noexcept { return 1.0 / scale_; }

 private:
  double beta_;
  long n_;
  double scale_;
};

double delta_seq(const Mollifier& phi, const SeqParams& p, double x);

/// (delta^(k) * delta_n)(x) = n^((k+1) beta) Phi^(k)(n^beta x).
double conv_delta_deriv(int k, const Mollifier& phi, const SeqParams& p, double x);

/// (f * delta_n)(x), integrated over the sequence's support in the scaled
/// variable s = n^beta y.
double conv_function(const CompactContinuous& f, const Mollifier& phi, const SeqParams& p,
                     double x, double tol = 1e-9);

}  // namespace distmul
