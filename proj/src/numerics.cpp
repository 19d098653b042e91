#include "distmul/numerics.hpp"

#include "distmul/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>

namespace distmul {
namespace {

// 15-point Kronrod abscissae and weights with the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Segment {
  double a;
  double b;
  double value;
  double error;
  double abs_value;
  bool frozen;
};

Segment gk15(const std::function<double(double)>& f, double a, double b, long& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  evals += 15;
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (std::size_t j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));

  const double value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);

  if (!std::isfinite(value) || !std::isfinite(err))
    throw NumericFailure("integrand is not finite on [" + std::to_string(a) + ", " +
                             std::to_string(b) + "]",
                         value, err, evals);
  return {a, b, value, err, resabs, false};
}

bool splittable(const Segment& s) {
  const double scale = std::max(std::abs(s.a), std::abs(s.b));
  return (s.b - s.a) > 1000.0 * kEps * std::max(scale, kTiny);
}

}  // namespace

QuadResult adaptive_quad(const std::function<double(double)>& f, double a, double b,
                         const QuadOptions& opts, std::span<const double> split_points) {
  if (!(a < b)) fail(ErrorKind::Domain, "adaptive_quad requires a < b");
  if (!(opts.abs_tol > 0.0) && !(opts.rel_tol > 0.0))
    fail(ErrorKind::Domain, "adaptive_quad requires a positive tolerance");

  std::vector<double> cuts{a};
  for (double s : split_points)
    if (s > a && s < b) cuts.push_back(s);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  long evals = 0;
  std::vector<Segment> segs;
  segs.reserve(static_cast<std::size_t>(opts.max_intervals) + cuts.size());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) segs.push_back(gk15(f, cuts[i], cuts[i + 1], evals));

  auto worse = [&segs](std::size_t i, std::size_t j) {
    if (segs[i].error != segs[j].error) return segs[i].error < segs[j].error;
    return i > j;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);

  double total = 0.0;
  double total_err = 0.0;
  double total_abs = 0.0;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    total += segs[i].value;
    total_err += segs[i].error;
    total_abs += segs[i].abs_value;
    queue.push(i);
  }

  auto target = [&](double value, double l1) {
    return std::max({opts.abs_tol, opts.rel_tol * std::abs(value), opts.l1_rel_tol * l1});
  };

  auto refine = [&] {
    while (total_err > target(total, total_abs) && !queue.empty()) {
      if (static_cast<int>(segs.size()) >= opts.max_intervals) break;
      const std::size_t worst = queue.top();
      queue.pop();
      if (!splittable(segs[worst])) {
        segs[worst].frozen = true;
        continue;
      }
      const Segment parent = segs[worst];
      const double mid = 0.5 * (parent.a + parent.b);
      Segment left = gk15(f, parent.a, mid, evals);
      Segment right = gk15(f, mid, parent.b, evals);
      total += left.value + right.value - parent.value;
      total_err += left.error + right.error - parent.error;
      total_abs += left.abs_value + right.abs_value - parent.abs_value;
      segs[worst] = left;
      segs.push_back(right);
      queue.push(worst);
      queue.push(segs.size() - 1);
    }
  };

  // Running totals drift by rounding; re-sum exactly (left to right, so the
  // result does not depend on refinement order) and resume if that changed
  // the verdict.
  QuadResult out;
  double l1 = 0.0;
  for (int pass = 0; pass < 4; ++pass) {
    refine();
    std::vector<const Segment*> ordered;
    ordered.reserve(segs.size());
    for (const auto& s : segs) ordered.push_back(&s);
    std::sort(ordered.begin(), ordered.end(),
              [](const Segment* x, const Segment* y) { return x->a < y->a; });
    out = QuadResult{};
    l1 = 0.0;
    for (const Segment* s : ordered) {
      out.value += s->value;
      out.error_estimate += s->error;
      l1 += s->abs_value;
    }
    total = out.value;
    total_err = out.error_estimate;
    total_abs = l1;
    if (out.error_estimate <= target(out.value, l1) || queue.empty() ||
        static_cast<int>(segs.size()) >= opts.max_intervals)
      break;
  }
  out.evaluations = evals;

  if (out.error_estimate > target(out.value, l1))
    throw NumericFailure("adaptive_quad: subdivision budget exhausted on [" + std::to_string(a) +
                             ", " + std::to_string(b) + "], error estimate " +
                             std::to_string(out.error_estimate),
                         out.value, out.error_estimate, evals);
  return out;
}

const char* to_string(LimitTag tag) noexcept {
  switch (tag) {
    case LimitTag::None: return "none";
    case LimitTag::Divergent: return "divergent";
    case LimitTag::Oscillating: return "oscillating";
    case LimitTag::Slow: return "slow";
  }
  return "unknown";
}

namespace {

struct TailFit {
  double limit;
  double exponent;
};

// Fit v = L + c * n^-q through three samples. Returns nothing when the
// differences are not consistent with a decaying power law.
std::optional<TailFit> fit_tail(double n0, double n1, double n2, double v0, double v1, double v2) {
  const double d1 = v1 - v0;
  const double d2 = v2 - v1;
  if (d1 == 0.0 || d2 == 0.0) return std::nullopt;
  const double rho = d2 / d1;
  auto ratio = [&](double q) {
    return (std::pow(n2, -q) - std::pow(n1, -q)) / (std::pow(n1, -q) - std::pow(n0, -q));
  };
  double lo = 1e-6;
  double hi = 60.0;
  const double r_lo = ratio(lo);
  const double r_hi = ratio(hi);
  if (!(rho < r_lo && rho > r_hi)) return std::nullopt;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ratio(mid) > rho)
      lo = mid;
    else
      hi = mid;
  }
  const double q = 0.5 * (lo + hi);
  const double c = d2 / (std::pow(n2, -q) - std::pow(n1, -q));
  return TailFit{v2 - c * std::pow(n2, -q), q};
}

// One level of tail-fit acceleration: out[i] is the fit through samples i-2..i.
std::vector<std::optional<TailFit>> accelerate(const std::vector<double>& n,
                                               const std::vector<double>& v) {
  std::vector<std::optional<TailFit>> out(v.size());
  for (std::size_t i = 2; i < v.size(); ++i)
    out[i] = fit_tail(n[i - 2], n[i - 1], n[i], v[i - 2], v[i - 1], v[i]);
  return out;
}

}  // namespace

LimitEstimate extrapolate(std::vector<std::pair<double, double>> terms, double tol) {
  if (terms.size() < 3) fail(ErrorKind::Precondition, "extrapolate needs at least 3 terms");
  if (!(tol > 0.0)) fail(ErrorKind::Domain, "extrapolate needs tol > 0");
  for (std::size_t i = 1; i < terms.size(); ++i)
    if (!(terms[i].first > terms[i - 1].first))
      fail(ErrorKind::Precondition, "extrapolate needs strictly increasing n");

  LimitEstimate est;
  const std::size_t last = terms.size() - 1;
  std::vector<double> n;
  std::vector<double> v;
  for (const auto& [ni, vi] : terms) {
    n.push_back(ni);
    v.push_back(vi);
  }
  est.terms = std::move(terms);

  const double d_last = v[last] - v[last - 1];
  const double d_prev = v[last - 1] - v[last - 2];
  const double scale = std::max(1.0, std::abs(v[last]));
  est.converged = std::abs(d_last) <= tol * scale && std::abs(d_prev) <= tol * scale;
  est.value = v[last];
  est.error_estimate = std::abs(d_last);

  // Up to two levels of tail fitting; keep whichever level has the smallest
  // a-posteriori disagreement, provided it beats the raw difference.
  double best = std::abs(d_last);
  auto consider = [&](const std::vector<std::optional<TailFit>>& fits, bool first_level) {
    const std::size_t k = fits.size() - 1;
    if (k < 3 || !fits[k] || !fits[k - 1]) return;
    const double q_hi = std::max(fits[k]->exponent, fits[k - 1]->exponent);
    if (std::abs(fits[k]->exponent - fits[k - 1]->exponent) > 0.25 * q_hi) return;
    const double disagreement = std::abs(fits[k]->limit - fits[k - 1]->limit);
    if (disagreement < best) {
      best = disagreement;
      est.value = fits[k]->limit;
      est.error_estimate = disagreement;
      est.fit_applied = true;
      if (first_level) est.fitted_exponent = fits[k]->exponent;
    }
  };

  const auto level1 = accelerate(n, v);
  consider(level1, true);
  if (level1.size() >= 6 && std::all_of(level1.begin() + 2, level1.end(),
                                        [](const auto& f) { return f.has_value(); })) {
    std::vector<double> n2(n.begin() + 2, n.end());
    std::vector<double> v2;
    for (std::size_t i = 2; i < level1.size(); ++i) v2.push_back(level1[i]->limit);
    consider(accelerate(n2, v2), false);
  }
  if (est.fit_applied && est.fitted_exponent == 0.0 && level1[last])
    est.fitted_exponent = level1[last]->exponent;

  if (!est.converged) {
    if (d_last * d_prev < 0.0)
      est.tag = LimitTag::Oscillating;
    else if (std::abs(d_last) >= std::abs(d_prev))
      est.tag = LimitTag::Divergent;
    else
      est.tag = LimitTag::Slow;
  }
  return est;
}

double decay_exponent(std::span<const std::pair<double, double>> terms) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (const auto& [n, v] : terms) {
    if (v == 0.0 || n <= 0.0) continue;
    const double x = std::log(n);
    const double y = std::log(std::abs(v));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) fail(ErrorKind::Precondition, "decay_exponent needs two nonzero terms");
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) fail(ErrorKind::Precondition, "decay_exponent needs distinct n");
  return -(count * sxy - sx * sy) / denom;
}

std::vector<long> geometric_schedule(long n0, int steps) {
  if (n0 < 1 || steps < 1) fail(ErrorKind::Domain, "schedule needs n0 >= 1 and steps >= 1");
  std::vector<long> out;
  long n = n0;
  for (int i = 0; i < steps; ++i) {
    out.push_back(n);
    n *= 2;
  }
  return out;
}

}  // namespace distmul
