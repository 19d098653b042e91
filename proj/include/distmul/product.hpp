#pragma once

// The merged product (S x T)_(alpha,beta): one factor regularized by the
// delta-sequence n^beta Phi(n^beta x), the other by its analytic
// representation at eps = n^-alpha, symmetrized and paired with Psi:
//
//   term_n = 1/2 int [S_n(x) T_red(x, n^-alpha) + T_n(x) S_red(x, n^-alpha)] Psi(x) dx
//
// and the product is lim term_n when it exists.

#include "distmul/core.hpp"
#include "distmul/mollifier.hpp"
#include "distmul/numerics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace distmul {

struct ProductQuery {
  Distribution S;
  Distribution T;
  double alpha = 2.0;
  double beta = 1.0;
  Mollifier phi;
  TestFunction psi;
  /// Skip the validity preconditions on m and alpha for delta-derivative pairs.
  bool exploratory = false;
};

struct Schedule {
  long n0 = 4;
  int steps = 10;
  double tol = 1e-4;
};

/// The two halves of the symmetrized term before averaging.
struct TermHalves {
  double s_mollified = 0.0;  // int S_n T_red Psi
  double t_mollified = 0.0;  // int T_n S_red Psi
  double term() const { return 0.5 * (s_mollified + t_mollified); }
};

TermHalves product_halves(const ProductQuery& q, long n);
double product_term(const ProductQuery& q, long n);

/// Extrapolated limit of product_term over the geometric schedule. For
/// delta-derivative pairs, enforces m even, m > l + k + 1 and
/// alpha >= (l + k + 2) beta unless the query is exploratory.
LimitEstimate product_limit(const ProductQuery& q, const Schedule& schedule = {});

enum class Regime { Critical, Supercritical };
enum class FormSource { Table, Parity, GeneralRule };

const char* to_string(Regime r) noexcept;
const char* to_string(FormSource s) noexcept;

/// The product as a multiple of delta: (delta^(l) x delta^(k))(Psi) = coefficient * Psi(0).
struct ClosedForm {
  double coefficient = 0.0;
  Regime regime = Regime::Critical;
  FormSource source = FormSource::Table;
};

/// alpha at which delta^(l) x delta^(k) can be nonzero: (l + k + 2) beta.
double critical_alpha(int l, int k, double beta);

/// Closed form for delta^(l) x delta^(k), or nullopt when not covered.
/// Throws outside-validity when alpha is below the critical value and a
/// precondition error unless m is even and m > l + k + 1.
std::optional<ClosedForm> closed_form(int l, int k, double alpha, double beta,
                                      const Mollifier& phi);

struct TableRow {
  int l = 0;
  int k = 0;
  double alpha = 0.0;
  Regime regime = Regime::Critical;
  LimitEstimate measured;
  double expected = 0.0;
  bool pass = false;
};

struct CrossRelation {
  double delta_ddelta = 0.0;  // (delta x delta'')
  double ddelta_ddelta = 0.0;  // (delta' x delta')
  double sum = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct TableReport {
  std::vector<TableRow> rows;
  CrossRelation cross;
  bool all_pass() const;
};

/// Absolute tolerance for entries whose closed form is 0.
inline constexpr double kZeroTolerance = 1e-6;

/// Measures all six tabulated products at their critical alpha and at
/// alpha = critical + 2 beta, compares with closed_form (relative tol, or
/// kZeroTolerance for zeros), and checks (delta x delta'') = -(delta' x delta').
/// The default schedule runs to n = 32768: the supercritical (2,2) row decays
/// only like n^-2 from a coefficient near 600.
TableReport verify_table(int m, double beta, const TestFunction& psi, double tol,
                         const Schedule& schedule = {4, 14, 1e-4});

struct ConsistencyReport {
  LimitEstimate measured;
  double direct = 0.0;
  double difference = 0.0;
};

/// Product of two continuous functions against the pointwise product int f g Psi.
ConsistencyReport continuous_consistency(const CompactContinuous& f, const CompactContinuous& g,
                                         double alpha, double beta, const Mollifier& phi,
                                         const TestFunction& psi, const Schedule& schedule = {});

/// n^beta int Phi(t) Psi(t / n^beta) dt: delta squared through the
/// delta-sequence alone. Diverges like n^beta whenever Psi(0) != 0.
double sequential_only_term(const Mollifier& phi, double beta, const TestFunction& psi, long n);

LimitEstimate sequential_only_divergence(const Mollifier& phi, double beta,
                                         const TestFunction& psi, const Schedule& schedule = {});

}  // namespace distmul
