#include "distmul/core.hpp"

#include "distmul/bump.hpp"
#include "distmul/error.hpp"
#include "distmul/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace distmul {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::UnsupportedOrder: return "unsupported-order";
    case ErrorKind::Parity: return "parity";
    case ErrorKind::DivergentMoment: return "divergent-moment";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::OnSupport: return "on-support";
    case ErrorKind::OutsideValidity: return "outside-validity";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::NumericFailure: return "numeric-failure";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

namespace {

double parse_real(std::string_view text, std::string_view context) {
  std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v))
    fail(ErrorKind::Parse, "invalid number '" + s + "' in " + std::string(context));
  return v;
}

// Splits `name:k=v,k=v` into the name and its key/value pairs.
std::pair<std::string, std::map<std::string, std::string>> split_literal(std::string_view lit) {
  const auto colon = lit.find(':');
  std::string name(lit.substr(0, colon));
  std::map<std::string, std::string> kv;
  if (colon == std::string_view::npos) return {name, kv};
  std::string_view rest = lit.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      fail(ErrorKind::Parse, "expected key=value in '" + std::string(lit) + "'");
    std::string key(item.substr(0, eq));
    if (!kv.emplace(key, std::string(item.substr(eq + 1))).second)
      fail(ErrorKind::Parse, "duplicate key '" + key + "' in '" + std::string(lit) + "'");
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return {name, kv};
}

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

TestFunction::TestFunction(double center, double width, std::vector<double> poly)
    : center_(center), width_(width), poly_(std::move(poly)) {
  if (!std::isfinite(center_) || !(width_ > 0.0) || !std::isfinite(width_))
    fail(ErrorKind::Domain, "test function needs finite center and positive width");
  if (poly_.empty()) poly_.push_back(0.0);
  if (static_cast<int>(poly_.size()) - 1 > kMaxTestFunctionDegree)
    fail(ErrorKind::UnsupportedOrder, "test function polynomial degree exceeds " +
                                          std::to_string(kMaxTestFunctionDegree));
  for (double c : poly_)
    if (!std::isfinite(c)) fail(ErrorKind::Domain, "test function coefficients must be finite");
}

TestFunction TestFunction::standard(double center, double width) {
  return TestFunction(center, width, {1.0});
}

double TestFunction::operator()(double x, int r) const {
  if (r < 0 || r > kMaxTestFunctionOrder)
    fail(ErrorKind::UnsupportedOrder, "test function derivative order " + std::to_string(r) +
                                          " exceeds " + std::to_string(kMaxTestFunctionOrder));
  return bump::weighted_derivative(poly_, center_, width_, x, r);
}

TestFunction TestFunction::combine(double a, const TestFunction& other, double b) const {
  if (center_ != other.center_ || width_ != other.width_)
    fail(ErrorKind::Domain, "combined test functions must share center and width");
  std::vector<double> p(std::max(poly_.size(), other.poly_.size()), 0.0);
  for (std::size_t i = 0; i < poly_.size(); ++i) p[i] += a * poly_[i];
  for (std::size_t i = 0; i < other.poly_.size(); ++i) p[i] += b * other.poly_[i];
  return TestFunction(center_, width_, std::move(p));
}

std::string TestFunction::literal() const {
  std::string out = "bump:c=" + format_real(center_) + ",w=" + format_real(width_) + ",p=";
  for (std::size_t i = 0; i < poly_.size(); ++i) {
    if (i) out += ';';
    out += format_real(poly_[i]);
  }
  return out;
}

TestFunction parse_test_function(std::string_view literal) {
  auto [name, kv] = split_literal(literal);
  if (name != "bump") fail(ErrorKind::Parse, "test function literal must start with 'bump:'");
  double c = 0.0, w = 1.0;
  std::vector<double> p{1.0};
  for (const auto& [key, value] : kv) {
    if (key == "c") {
      c = parse_real(value, literal);
    } else if (key == "w") {
      w = parse_real(value, literal);
    } else if (key == "p") {
      p.clear();
      std::string_view rest = value;
      while (true) {
        const auto semi = rest.find(';');
        p.push_back(parse_real(rest.substr(0, semi), literal));
        if (semi == std::string_view::npos) break;
        rest = rest.substr(semi + 1);
      }
    } else {
      fail(ErrorKind::Parse, "unknown key '" + key + "' in test function literal");
    }
  }
  return TestFunction(c, w, std::move(p));
}

double eval_testfn(const TestFunction& psi, double x, int deriv_order) {
  return psi(x, deriv_order);
}

CompactContinuous::CompactContinuous(std::function<double(double)> f, double lower, double upper,
                                     std::vector<double> breakpoints, std::string label)
    : f_(std::move(f)),
      lower_(lower),
      upper_(upper),
      breakpoints_(std::move(breakpoints)),
      label_(std::move(label)) {
  if (!std::isfinite(lower_) || !std::isfinite(upper_) || !(lower_ < upper_))
    fail(ErrorKind::Domain, "compact support needs finite lower < upper");
  if (!f_) fail(ErrorKind::Domain, "compactly supported function needs an evaluator");
}

Distribution delta(int order) {
  if (order < 0) fail(ErrorKind::UnsupportedOrder, "delta derivative order must be >= 0");
  return DeltaDerivative{order};
}

CompactContinuous hat(double c, double w, double h) {
  if (!(w > 0.0)) fail(ErrorKind::Domain, "hat needs positive half-width");
  return CompactContinuous(
      [c, w, h](double x) { return h * std::max(0.0, 1.0 - std::abs(x - c) / w); }, c - w, c + w,
      {c}, "hat:c=" + format_real(c) + ",w=" + format_real(w) + ",h=" + format_real(h));
}

CompactContinuous quartic(double c, double w, double h) {
  if (!(w > 0.0)) fail(ErrorKind::Domain, "quartic needs positive half-width");
  return CompactContinuous(
      [c, w, h](double x) {
        const double u = (x - c) / w;
        const double s = 1.0 - u * u;
        return s > 0.0 ? h * s * s : 0.0;
      },
      c - w, c + w, {},
      "quartic:c=" + format_real(c) + ",w=" + format_real(w) + ",h=" + format_real(h));
}

CompactContinuous clamped_identity(double w, double ramp) {
  if (!(w > 0.0) || !(ramp > 0.0)) fail(ErrorKind::Domain, "clamped identity needs w, ramp > 0");
  return CompactContinuous(
      [w, ramp](double x) {
        const double a = std::abs(x);
        const double mag = a <= w ? a : std::max(0.0, w * (1.0 - (a - w) / ramp));
        return std::copysign(mag, x);
      },
      -(w + ramp), w + ramp, {-w, 0.0, w},
      "ident:w=" + format_real(w) + ",r=" + format_real(ramp));
}

CompactContinuous parse_function(std::string_view literal) {
  auto [name, kv] = split_literal(literal);
  auto get = [&kv, literal](const std::string& key, double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : parse_real(it->second, literal);
  };
  for (const auto& [key, value] : kv)
    if (key != "c" && key != "w" && key != "h" && key != "r")
      fail(ErrorKind::Parse, "unknown key '" + key + "' in function literal");
  if (name == "hat") return hat(get("c", 0.0), get("w", 1.0), get("h", 1.0));
  if (name == "quartic") return quartic(get("c", 0.0), get("w", 1.0), get("h", 1.0));
  if (name == "ident") return clamped_identity(get("w", 0.5), get("r", 0.5));
  if (name == "zero")
    return CompactContinuous([](double) { return 0.0; }, -1.0, 1.0, {}, "zero");
  fail(ErrorKind::Parse, "unknown function literal '" + std::string(literal) + "'");
}

double exact_pairing(const Distribution& t, const TestFunction& psi) {
  if (const auto* d = std::get_if<DeltaDerivative>(&t)) {
    const double sign = (d->order % 2 == 0) ? 1.0 : -1.0;
    return sign * psi(0.0, d->order);
  }
  const auto& f = std::get<CompactContinuous>(t);
  const double lo = std::max(f.lower(), psi.lower());
  const double hi = std::min(f.upper(), psi.upper());
  if (!(lo < hi)) return 0.0;
  std::vector<double> splits = f.breakpoints();
  splits.push_back(0.0);
  splits.push_back(psi.center());
  return adaptive_quad([&](double x) { return f(x) * psi(x); }, lo, hi,
                       QuadOptions{1e-13, 1e-12, 4000}, splits)
      .value;
}

std::string describe(const Distribution& t) {
  if (const auto* d = std::get_if<DeltaDerivative>(&t))
    return "delta^(" + std::to_string(d->order) + ")";
  return std::get<CompactContinuous>(t).label();
}

}  // namespace distmul
