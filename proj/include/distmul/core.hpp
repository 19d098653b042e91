#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace distmul {

inline constexpr int kMaxTestFunctionOrder = 10;
inline constexpr int kMaxTestFunctionDegree = 8;

/// Psi(x) = p(x) * B((x - center) / width), B the standard bump.
class TestFunction {
 public:
  TestFunction(double center, double width, std::vector<double> poly);

  /// bump(center, width, [1]).
  static TestFunction standard(double center = 0.0, double width = 1.0);

  double center() const noexcept { return center_; }
  double width() const noexcept { return width_; }
  const std::vector<double>& poly() const noexcept { return poly_; }
  double lower() const noexcept { return center_ - width_; }
  double upper() const noexcept { return center_ + width_; }

  /// Psi^(r)(x). Exactly 0 outside the open support.
  double operator()(double x, int r = 0) const;

  /// Linear combination a*this + b*other; both must share center and width.
  TestFunction combine(double a, const TestFunction& other, double b) const;

  /// `bump:c=<real>,w=<real>,p=<c0;c1;...>`
  std::string literal() const;

 private:
  double center_;
  double width_;
  std::vector<double> poly_;
};

TestFunction parse_test_function(std::string_view literal);

double eval_testfn(const TestFunction& psi, double x, int deriv_order);

struct DeltaDerivative {
  int order = 0;
};

/// A continuous function with compact support [lower, upper]. Values outside
/// the support are forced to 0. Breakpoints mark known kinks and are used as
/// quadrature split points.
class CompactContinuous {
 public:
  CompactContinuous(std::function<double(double)> f, double lower, double upper,
                    std::vector<double> breakpoints = {}, std::string label = "function");

  double operator()(double x) const { return (x < lower_ || x > upper_) ? 0.0 : f_(x); }
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::string& label() const noexcept { return label_; }

 private:
  std::function<double(double)> f_;
  double lower_;
  double upper_;
  std::vector<double> breakpoints_;
  std::string label_;
};

using Distribution = std::variant<DeltaDerivative, CompactContinuous>;

Distribution delta(int order = 0);

/// Triangle of height h centered at c with half-width w.
CompactContinuous hat(double c, double w, double h = 1.0);

/// h * (1 - ((x - c) / w)^2)^2 on [c - w, c + w]; C^1 at the edges.
CompactContinuous quartic(double c, double w, double h = 1.0);

/// x on [-w, w], then linear back to 0 at +-(w + ramp).
CompactContinuous clamped_identity(double w, double ramp);

/// Parses `hat:c=..,w=..,h=..`, `quartic:c=..,w=..,h=..`, `ident:w=..,r=..`
/// and `zero`.
CompactContinuous parse_function(std::string_view literal);

/// Reference value T(Psi): (-1)^k Psi^(k)(0) for delta derivatives, quadrature
/// of T * Psi otherwise.
double exact_pairing(const Distribution& t, const TestFunction& psi);

std::string describe(const Distribution& t);

}  // namespace distmul
