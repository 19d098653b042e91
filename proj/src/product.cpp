#include "distmul/product.hpp"

#include "distmul/analytic_rep.hpp"
#include "distmul/error.hpp"
#include "distmul/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

namespace distmul {

const char* to_string(Regime r) noexcept {
  return r == Regime::Critical ? "critical" : "supercritical";
}

const char* to_string(FormSource s) noexcept {
  switch (s) {
    case FormSource::Table: return "table";
    case FormSource::Parity: return "parity";
    case FormSource::GeneralRule: return "general-rule";
  }
  return "unknown";
}

namespace {

const QuadOptions kDeltaPairQuad{1e-15, 1e-12, 8000, 1e-13};
const QuadOptions kFunctionQuad{1e-11, 1e-9, 8000, 1e-10};
constexpr double kInnerTol = 1e-12;

bool is_delta(const Distribution& d) { return std::holds_alternative<DeltaDerivative>(d); }
int order_of(const Distribution& d) { return std::get<DeltaDerivative>(d).order; }

// +-scale * 10^j for j >= 0 up to `limit`: geometric split points that let the
// adaptive rule resolve a peak of width `scale` at the origin without search.
void add_ladder(std::vector<double>& splits, double center, double scale, double limit) {
  for (double v = scale; v < limit; v *= 10.0) {
    splits.push_back(center - v);
    splits.push_back(center + v);
  }
}

bool same_alpha(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }

void check_query(const ProductQuery& q) {
  if (!(q.alpha > 0.0) || !(q.beta > 0.0) || !std::isfinite(q.alpha) || !std::isfinite(q.beta))
    fail(ErrorKind::Domain, "alpha and beta must be positive");
  for (const Distribution* d : {&q.S, &q.T})
    if (is_delta(*d)) {
      const int k = order_of(*d);
      if (k > kMaxKernelOrder || k > q.phi.max_deriv())
        fail(ErrorKind::UnsupportedOrder,
             "delta derivative order " + std::to_string(k) + " exceeds supported maximum");
    }
}

void check_limit_validity(const ProductQuery& q) {
  if (q.exploratory || !is_delta(q.S) || !is_delta(q.T)) return;
  const int l = order_of(q.S);
  const int k = order_of(q.T);
  if (q.phi.m() <= l + k + 1)
    fail(ErrorKind::Precondition, "delta^(" + std::to_string(l) + ") x delta^(" +
                                      std::to_string(k) + ") needs even m > " +
                                      std::to_string(l + k + 1) + ", got m = " +
                                      std::to_string(q.phi.m()));
  const double crit = critical_alpha(l, k, q.beta);
  if (q.alpha < crit && !same_alpha(q.alpha, crit))
    fail(ErrorKind::OutsideValidity,
         "alpha = " + std::to_string(q.alpha) + " is below the validity threshold (l+k+2) beta = " +
             std::to_string(crit) + " for delta^(" + std::to_string(l) + ") x delta^(" +
             std::to_string(k) + ")");
}

// int delta^(l)_n(x) delta^(k)_red(x, n^-alpha) Psi(x) dx in t = n^beta x:
//   n^((l+k+1) beta) int_{-1}^{1} Phi^(l)(t) K_k(t, eta) Psi(t / n^beta) dt,
// with eta = n^-(alpha - beta), using the homogeneity of the kernel.
double delta_pair_half(int l, int k, const ProductQuery& q, const SeqParams& p) {
  const double s = p.scale();
  const double eta = std::pow(static_cast<double>(p.n()), -(q.alpha - q.beta));
  const double prefactor = std::pow(s, l + k + 1);
  const RationalKernel& kernel = kernel_for(k);

  const double t_lo = std::max(-1.0, s * q.psi.lower());
  const double t_hi = std::min(1.0, s * q.psi.upper());
  if (!(t_lo < t_hi)) return 0.0;

  std::vector<double> splits{0.0, s * q.psi.center()};
  add_ladder(splits, 0.0, eta, 1.0);
  // Prefactor inside the integrand so the absolute tolerance applies at the
  // scale of the term rather than of the tiny raw integral.
  const auto result = adaptive_quad(
      [&](double t) { return prefactor * q.phi(t, l) * kernel(t, eta) * q.psi(t / s); }, t_lo,
      t_hi, kDeltaPairQuad, splits);
  return result.value;
}

double mollified(const Distribution& d, const ProductQuery& q, const SeqParams& p, double x) {
  if (is_delta(d)) return conv_delta_deriv(order_of(d), q.phi, p, x);
  return conv_function(std::get<CompactContinuous>(d), q.phi, p, x, kInnerTol);
}

double analytic(const Distribution& d, double x, double eps) {
  if (is_delta(d)) return delta_red(order_of(d), x, eps);
  return red_continuous(std::get<CompactContinuous>(d), x, eps);
}

// int A_n(x) B_red(x, eps) Psi(x) dx in the x variable, over the support of
// the mollified factor intersected with supp Psi.
double x_space_half(const Distribution& a, const Distribution& b, const ProductQuery& q,
                    const SeqParams& p) {
  const double h = p.radius();
  const double eps = std::pow(static_cast<double>(p.n()), -q.alpha);
  double lo = -h;
  double hi = h;
  if (!is_delta(a)) {
    const auto& f = std::get<CompactContinuous>(a);
    lo = f.lower() - h;
    hi = f.upper() + h;
  }
  lo = std::max(lo, q.psi.lower());
  hi = std::min(hi, q.psi.upper());
  if (!(lo < hi)) return 0.0;

  std::vector<double> splits{0.0, q.psi.center(), -h, h};
  if (is_delta(b)) {
    add_ladder(splits, 0.0, eps, hi - lo);
  } else {
    const auto& g = std::get<CompactContinuous>(b);
    std::vector<double> kinks = g.breakpoints();
    kinks.push_back(g.lower());
    kinks.push_back(g.upper());
    for (double kink : kinks) {
      splits.push_back(kink);
      add_ladder(splits, kink, eps, std::min(h, hi - lo));
    }
  }
  if (!is_delta(a)) {
    const auto& f = std::get<CompactContinuous>(a);
    std::vector<double> kinks = f.breakpoints();
    kinks.push_back(f.lower());
    kinks.push_back(f.upper());
    for (double kink : kinks) {
      splits.push_back(kink - h);
      splits.push_back(kink);
      splits.push_back(kink + h);
    }
  }
  return adaptive_quad(
             [&](double x) { return mollified(a, q, p, x) * analytic(b, x, eps) * q.psi(x); },
             lo, hi, kFunctionQuad, splits)
      .value;
}

double half(const Distribution& mollified_factor, const Distribution& analytic_factor,
            const ProductQuery& q, const SeqParams& p) {
  if (is_delta(mollified_factor) && is_delta(analytic_factor))
    return delta_pair_half(order_of(mollified_factor), order_of(analytic_factor), q, p);
  return x_space_half(mollified_factor, analytic_factor, q, p);
}

}  // namespace

TermHalves product_halves(const ProductQuery& q, long n) {
  check_query(q);
  const SeqParams p(q.beta, n);
  try {
    return {half(q.S, q.T, q, p), half(q.T, q.S, q, p)};
  } catch (const NumericFailure& e) {
    throw NumericFailure("product term " + describe(q.S) + " x " + describe(q.T) +
                             " at n = " + std::to_string(n) + ": " + e.what(),
                         e.partial_value(), e.error_estimate(), e.evaluations());
  }
}

double product_term(const ProductQuery& q, long n) { return product_halves(q, n).term(); }

LimitEstimate product_limit(const ProductQuery& q, const Schedule& schedule) {
  check_query(q);
  check_limit_validity(q);
  if (schedule.steps < 4) fail(ErrorKind::Precondition, "product_limit needs at least 4 terms");
  const auto ns = geometric_schedule(schedule.n0, schedule.steps);

  std::vector<std::future<double>> pending;
  pending.reserve(ns.size());
  for (long n : ns) pending.push_back(std::async(std::launch::async, [&q, n] { return product_term(q, n); }));
  std::vector<std::pair<double, double>> terms;
  terms.reserve(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i)
    terms.emplace_back(static_cast<double>(ns[i]), pending[i].get());
  return extrapolate(std::move(terms), schedule.tol);
}

double critical_alpha(int l, int k, double beta) { return (l + k + 2) * beta; }

std::optional<ClosedForm> closed_form(int l, int k, double alpha, double beta,
                                      const Mollifier& phi) {
  if (l < 0 || k < 0) fail(ErrorKind::UnsupportedOrder, "delta derivative orders must be >= 0");
  if (!(alpha > 0.0) || !(beta > 0.0)) fail(ErrorKind::Domain, "alpha and beta must be positive");
  if (l > k) std::swap(l, k);
  if (phi.m() % 2 != 0 || phi.m() <= l + k + 1)
    fail(ErrorKind::Precondition, "closed form for delta^(" + std::to_string(l) + ") x delta^(" +
                                      std::to_string(k) + ") needs even m > " +
                                      std::to_string(l + k + 1));
  const double crit = critical_alpha(l, k, beta);
  const bool critical = same_alpha(alpha, crit);
  if (!critical && alpha < crit)
    fail(ErrorKind::OutsideValidity, "alpha = " + std::to_string(alpha) +
                                         " is below the validity threshold " +
                                         std::to_string(crit));

  const bool tabulated = k <= 2;
  if (!critical)
    return ClosedForm{0.0, Regime::Supercritical,
                      tabulated ? FormSource::Table : FormSource::GeneralRule};

  const double pi = std::numbers::pi;
  if (l == 0 && k == 0) return ClosedForm{phi.moment(2).value / pi, Regime::Critical, FormSource::Table};
  if (l == 1 && k == 1) return ClosedForm{-6.0 * phi.moment(4).value / pi, Regime::Critical, FormSource::Table};
  if (l == 0 && k == 2) return ClosedForm{6.0 * phi.moment(4).value / pi, Regime::Critical, FormSource::Table};
  if (l == 2 && k == 2) return ClosedForm{120.0 * phi.moment(6).value / pi, Regime::Critical, FormSource::Table};
  if ((l == 0 && k == 1) || (l == 1 && k == 2)) return ClosedForm{0.0, Regime::Critical, FormSource::Table};
  // Beyond the table the leading integrand is odd whenever l + k is odd.
  if ((l + k) % 2 == 1) return ClosedForm{0.0, Regime::Critical, FormSource::Parity};
  return std::nullopt;
}

bool TableReport::all_pass() const {
  return cross.pass && std::all_of(rows.begin(), rows.end(), [](const TableRow& r) { return r.pass; });
}

TableReport verify_table(int m, double beta, const TestFunction& psi, double tol,
                         const Schedule& schedule) {
  if (m < 6)
    fail(ErrorKind::Precondition, "verify_table needs m >= 6 (delta'' x delta'' requires m > 5), got m = " +
                                      std::to_string(m));
  const Mollifier phi = make_mollifier(m);
  const double psi0 = psi(0.0);

  constexpr std::pair<int, int> kEntries[] = {{0, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}, {2, 2}};
  TableReport report;
  for (const auto& [l, k] : kEntries) {
    for (const Regime regime : {Regime::Critical, Regime::Supercritical}) {
      const double alpha =
          critical_alpha(l, k, beta) + (regime == Regime::Supercritical ? 2.0 * beta : 0.0);
      const auto form = closed_form(l, k, alpha, beta, phi);
      const ProductQuery q{delta(l), delta(k), alpha, beta, phi, psi, false};
      TableRow row{l, k, alpha, regime, product_limit(q, schedule), form->coefficient * psi0, false};
      const double diff = std::abs(row.measured.value - row.expected);
      const bool close = row.expected == 0.0 ? diff <= kZeroTolerance
                                             : diff <= tol * std::abs(row.expected);
      row.pass = row.measured.converged && close;
      report.rows.push_back(std::move(row));
    }
  }

  auto critical_value = [&](int l, int k) -> const LimitEstimate& {
    for (const auto& r : report.rows)
      if (r.l == l && r.k == k && r.regime == Regime::Critical) return r.measured;
    fail(ErrorKind::Precondition, "missing table row");
  };
  const LimitEstimate& a = critical_value(0, 2);
  const LimitEstimate& b = critical_value(1, 1);
  CrossRelation& cross = report.cross;
  cross.delta_ddelta = a.value;
  cross.ddelta_ddelta = b.value;
  cross.sum = a.value + b.value;
  cross.tolerance = tol * (std::abs(a.value) + std::abs(b.value)) + a.error_estimate + b.error_estimate;
  cross.pass = a.converged && b.converged && std::abs(cross.sum) <= cross.tolerance;
  return report;
}

ConsistencyReport continuous_consistency(const CompactContinuous& f, const CompactContinuous& g,
                                         double alpha, double beta, const Mollifier& phi,
                                         const TestFunction& psi, const Schedule& schedule) {
  const ProductQuery q{f, g, alpha, beta, phi, psi, false};
  ConsistencyReport report;
  report.measured = product_limit(q, schedule);

  const double lo = std::max({f.lower(), g.lower(), psi.lower()});
  const double hi = std::min({f.upper(), g.upper(), psi.upper()});
  if (lo < hi) {
    std::vector<double> splits = f.breakpoints();
    splits.insert(splits.end(), g.breakpoints().begin(), g.breakpoints().end());
    splits.push_back(0.0);
    report.direct = adaptive_quad([&](double x) { return f(x) * g(x) * psi(x); }, lo, hi,
                                  QuadOptions{1e-13, 1e-12, 4000, 0.0}, splits)
                        .value;
  }
  report.difference = report.measured.value - report.direct;
  return report;
}

double sequential_only_term(const Mollifier& phi, double beta, const TestFunction& psi, long n) {
  const SeqParams p(beta, n);
  const double s = p.scale();
  const double t_lo = std::max(-1.0, s * psi.lower());
  const double t_hi = std::min(1.0, s * psi.upper());
  if (!(t_lo < t_hi)) return 0.0;
  const double splits[] = {0.0};
  return s * adaptive_quad([&](double t) { return phi(t) * psi(t / s); }, t_lo, t_hi,
                           QuadOptions{1e-15, 1e-13, 4000, 1e-14}, splits)
                 .value;
}

LimitEstimate sequential_only_divergence(const Mollifier& phi, double beta,
                                         const TestFunction& psi, const Schedule& schedule) {
  std::vector<std::pair<double, double>> terms;
  for (long n : geometric_schedule(schedule.n0, schedule.steps))
    terms.emplace_back(static_cast<double>(n), sequential_only_term(phi, beta, psi, n));
  return extrapolate(std::move(terms), schedule.tol);
}

}  // namespace distmul
