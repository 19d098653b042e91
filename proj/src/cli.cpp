#include "distmul/cli.hpp"

#include "distmul/analytic_rep.hpp"
#include "distmul/error.hpp"
#include "distmul/product.hpp"
#include "distmul/quantum.hpp"
#include "distmul/regularize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace distmul::cli {

using json = nlohmann::ordered_json;

namespace {

// Centralized defaults.
constexpr int kDefaultM = 6;
constexpr double kDefaultBeta = 1.0;
constexpr long kDefaultN0 = 4;
constexpr int kDefaultSteps = 10;
constexpr double kDefaultTol = 1e-4;
constexpr const char* kDefaultPsi = "bump:c=0,w=1,p=1";

enum class Format { Json, Csv, Human };

struct OutputFlags {
  bool csv = false;
  bool human = false;
  bool json = false;
  Format format() const { return csv ? Format::Csv : human ? Format::Human : Format::Json; }
};

void add_output_flags(CLI::App* cmd, OutputFlags& o) {
  auto* j = cmd->add_flag("--json", o.json, "One JSON object per line (default)");
  auto* c = cmd->add_flag("--csv", o.csv, "CSV rows with a header line");
  auto* h = cmd->add_flag("--human", o.human, "Plain text");
  j->excludes(c)->excludes(h);
  c->excludes(h);
}

void emit(std::ostream& out, const json& record) { out << record.dump() << '\n'; }

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json limit_json(const LimitEstimate& est) {
  json terms = json::array();
  for (const auto& [n, v] : est.terms) terms.push_back({n, v});
  return {{"value", est.value},
          {"error_estimate", est.error_estimate},
          {"converged", est.converged},
          {"tag", to_string(est.tag)},
          {"fit_applied", est.fit_applied},
          {"fitted_exponent", est.fitted_exponent},
          {"terms", terms}};
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

struct ScheduleFlags {
  long n0 = kDefaultN0;
  int steps = kDefaultSteps;
  double tol = kDefaultTol;
  Schedule schedule() const { return {n0, steps, tol}; }
  json echo() const { return {{"n0", n0}, {"steps", steps}, {"tol", tol}}; }
};

void add_schedule_flags(CLI::App* cmd, ScheduleFlags& s) {
  cmd->add_option("--n0", s.n0, "First n of the geometric schedule n0 * 2^i")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--steps", s.steps, "Number of schedule terms")
      ->capture_default_str()
      ->check(CLI::Range(3, 30));
  cmd->add_option("--tol", s.tol, "Convergence tolerance on successive differences")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

// ---------------------------------------------------------------- moments
struct MomentsCmd {
  int m = kDefaultM;
  std::vector<int> j;
  OutputFlags out;

  int run(std::ostream& os) const {
    const Mollifier phi = make_mollifier(m);
    if (out.format() == Format::Csv) os << "m,j,A_j\n";
    for (int jj : j) {
      const Moment mo = phi.moment(jj);
      switch (out.format()) {
        case Format::Json: emit(os, {{"m", m}, {"j", jj}, {"A_j", mo.value}}); break;
        case Format::Csv: os << m << ',' << jj << ',' << num(mo.value) << '\n'; break;
        case Format::Human: os << "A_" << jj << " (m = " << m << ") = " << num(mo.value) << '\n'; break;
      }
    }
    return kOk;
  }
};

// ---------------------------------------------------------------- red / seq
void emit_rows(std::ostream& os, Format fmt, const json& echo, const std::vector<double>& grid,
               const std::function<double(double)>& value) {
  if (fmt == Format::Csv) os << "x,value\n";
  for (double x : grid) {
    const double v = value(x);
    switch (fmt) {
      case Format::Json: {
        json rec = echo;
        rec["x"] = x;
        rec["value"] = v;
        emit(os, rec);
        break;
      }
      case Format::Csv: os << num(x) << ',' << num(v) << '\n'; break;
      case Format::Human: os << num(x) << '\t' << num(v) << '\n'; break;
    }
  }
}

struct RedCmd {
  int k = 0;
  double eps = 0.1;
  std::string grid;
  OutputFlags out;

  int run(std::ostream& os) const {
    const auto xs = parse_grid(grid);
    kernel_for(k);
    if (!(eps > 0.0)) fail(ErrorKind::Domain, "--eps must be positive");
    const json echo = {{"command", "red"}, {"k", k}, {"eps", eps}, {"grid", grid}};
    emit_rows(os, out.format(), echo, xs, [&](double x) { return delta_red(k, x, eps); });
    return kOk;
  }
};

struct SeqCmd {
  int k = 0;
  int m = kDefaultM;
  double beta = kDefaultBeta;
  long n = 1;
  std::string grid;
  OutputFlags out;

  int run(std::ostream& os) const {
    const auto xs = parse_grid(grid);
    const Mollifier phi = make_mollifier(m);
    const SeqParams p(beta, n);
    if (k < 0 || k > phi.max_deriv())
      fail(ErrorKind::UnsupportedOrder, "--k beyond mollifier derivative support");
    const json echo = {{"command", "seq"}, {"k", k},       {"m", m},
                       {"beta", beta},     {"n", n},       {"grid", grid}};
    emit_rows(os, out.format(), echo, xs,
              [&](double x) { return conv_delta_deriv(k, phi, p, x); });
    return kOk;
  }
};

// ---------------------------------------------------------------- product
bool matches(double measured, double expected, double rel_tol) {
  const double diff = std::abs(measured - expected);
  return expected == 0.0 ? diff <= kZeroTolerance : diff <= rel_tol * std::abs(expected);
}

struct ProductCmd {
  int l = 0;
  int k = 0;
  double alpha = 2.0;
  double beta = kDefaultBeta;
  int m = kDefaultM;
  std::string psi = kDefaultPsi;
  ScheduleFlags sched;
  double check_tol = 5e-3;
  bool exploratory = false;
  OutputFlags out;

  int run(std::ostream& os) const {
    const Mollifier phi = make_mollifier(m);
    const TestFunction test = parse_test_function(psi);
    const ProductQuery q{delta(l), delta(k), alpha, beta, phi, test, exploratory};

    std::optional<ClosedForm> form;
    if (!exploratory) form = closed_form(l, k, alpha, beta, phi);
    const LimitEstimate est = product_limit(q, sched.schedule());

    const double psi0 = test(0.0);
    bool pass = est.converged;
    json reference = nullptr;
    if (form) {
      const double expected = form->coefficient * psi0;
      pass = pass && matches(est.value, expected, check_tol);
      reference = {{"coefficient", form->coefficient},
                   {"expected", expected},
                   {"regime", to_string(form->regime)},
                   {"source", to_string(form->source)}};
    }

    switch (out.format()) {
      case Format::Json: {
        json config = {{"l", l},     {"k", k},           {"alpha", alpha},
                       {"beta", beta}, {"m", m},         {"psi", test.literal()},
                       {"check_tol", check_tol}, {"exploratory", exploratory}};
        config.update(sched.echo());
        json rec = {{"command", "product"}, {"config", config}};
        rec.update(limit_json(est));
        rec["closed_form"] = reference;
        rec["pass"] = pass;
        emit(os, rec);
        break;
      }
      case Format::Csv:
        os << "n,term\n";
        for (const auto& [n, v] : est.terms) os << num(n) << ',' << num(v) << '\n';
        os << "inf," << num(est.value) << '\n';
        break;
      case Format::Human:
        os << "(delta^(" << l << ") x delta^(" << k << "))_(" << alpha << ',' << beta
           << ")(Psi) = " << num(est.value) << " +- " << num(est.error_estimate)
           << (est.converged ? "" : std::string(" [not converged: ") + to_string(est.tag) + "]")
           << '\n';
        if (form)
          os << "closed form: " << num(form->coefficient) << " * Psi(0) = "
             << num(form->coefficient * psi0) << " (" << to_string(form->regime) << ", "
             << to_string(form->source) << ")\n";
        os << (pass ? "PASS" : "FAIL") << '\n';
        break;
    }
    return pass ? kOk : kVerificationFailed;
  }
};

// ---------------------------------------------------------------- verify-table
json row_json(const TableRow& r) {
  json j = {{"alpha", r.alpha},
            {"measured", r.measured.value},
            {"expected", r.expected},
            {"error_estimate", r.measured.error_estimate},
            {"converged", r.measured.converged},
            {"pass", r.pass}};
  return j;
}

struct VerifyTableCmd {
  int m = kDefaultM;
  double beta = kDefaultBeta;
  std::string psi = kDefaultPsi;
  double tol = 5e-3;
  // The large (2,2) coefficient needs n beyond 2048 before successive
  // differences of the supercritical row drop under 1e-4.
  ScheduleFlags sched{kDefaultN0, 14, kDefaultTol};
  OutputFlags out;

  int run(std::ostream& os) const {
    const TestFunction test = parse_test_function(psi);
    const TableReport rep = verify_table(m, beta, test, tol, sched.schedule());
    json config = {{"m", m}, {"beta", beta}, {"psi", test.literal()}, {"check_tol", tol}};
    config.update(sched.echo());

    if (out.format() == Format::Csv)
      os << "l,k,regime,alpha,measured,expected,error_estimate,converged,pass\n";
    for (std::size_t i = 0; i + 1 < rep.rows.size(); i += 2) {
      const TableRow& crit = rep.rows[i];
      const TableRow& super = rep.rows[i + 1];
      const bool pass = crit.pass && super.pass;
      const std::string entry = "(" + std::to_string(crit.l) + "," + std::to_string(crit.k) + ")";
      switch (out.format()) {
        case Format::Json:
          emit(os, {{"command", "verify-table"},
                    {"config", config},
                    {"entry", entry},
                    {"critical", row_json(crit)},
                    {"supercritical", row_json(super)},
                    {"status", pass ? "PASS" : "FAIL"}});
          break;
        case Format::Csv:
          for (const TableRow* r : {&crit, &super})
            os << r->l << ',' << r->k << ',' << to_string(r->regime) << ',' << num(r->alpha) << ','
               << num(r->measured.value) << ',' << num(r->expected) << ','
               << num(r->measured.error_estimate) << ',' << r->measured.converged << ','
               << r->pass << '\n';
          break;
        case Format::Human:
          os << (pass ? "PASS " : "FAIL ") << entry << "  critical alpha=" << crit.alpha
             << " measured=" << num(crit.measured.value) << " expected=" << num(crit.expected)
             << "  supercritical alpha=" << super.alpha
             << " measured=" << num(super.measured.value) << '\n';
          break;
      }
    }
    const CrossRelation& c = rep.cross;
    switch (out.format()) {
      case Format::Json:
        emit(os, {{"command", "verify-table"},
                  {"config", config},
                  {"check", "cross-relation"},
                  {"delta_x_delta2", c.delta_ddelta},
                  {"delta1_x_delta1", c.ddelta_ddelta},
                  {"sum", c.sum},
                  {"tolerance", c.tolerance},
                  {"status", c.pass ? "PASS" : "FAIL"}});
        break;
      case Format::Csv: break;
      case Format::Human:
        os << (c.pass ? "PASS " : "FAIL ") << "cross-relation (delta x delta'') + (delta' x delta') = "
           << num(c.sum) << " (tolerance " << num(c.tolerance) << ")\n";
        break;
    }
    return rep.all_pass() ? kOk : kVerificationFailed;
  }
};

// ---------------------------------------------------------------- consistency
struct ConsistencyCmd {
  std::string f = "quartic:c=0,w=1,h=1";
  std::string g = "hat:c=0.3,w=0.9,h=1";
  double alpha = 1.0;
  double beta = kDefaultBeta;
  int m = kDefaultM;
  std::string psi = kDefaultPsi;
  ScheduleFlags sched;
  double check_tol = 1e-4;
  OutputFlags out;

  int run(std::ostream& os) const {
    const auto ff = parse_function(f);
    const auto gg = parse_function(g);
    const TestFunction test = parse_test_function(psi);
    const Mollifier phi = make_mollifier(m);
    const auto rep = continuous_consistency(ff, gg, alpha, beta, phi, test, sched.schedule());
    const bool pass = std::abs(rep.difference) <= check_tol;
    switch (out.format()) {
      case Format::Json: {
        json config = {{"f", ff.label()},   {"g", gg.label()}, {"alpha", alpha},
                       {"beta", beta},      {"m", m},          {"psi", test.literal()},
                       {"check_tol", check_tol}};
        config.update(sched.echo());
        json rec = {{"command", "consistency"}, {"config", config}};
        rec.update(limit_json(rep.measured));
        rec["direct"] = rep.direct;
        rec["difference"] = rep.difference;
        rec["pass"] = pass;
        emit(os, rec);
        break;
      }
      case Format::Csv:
        os << "n,term\n";
        for (const auto& [n, v] : rep.measured.terms) os << num(n) << ',' << num(v) << '\n';
        os << "inf," << num(rep.measured.value) << '\n';
        break;
      case Format::Human:
        os << "product limit = " << num(rep.measured.value) << ", int f g Psi = " << num(rep.direct)
           << ", difference = " << num(rep.difference) << '\n'
           << (pass ? "PASS" : "FAIL") << '\n';
        break;
    }
    return pass ? kOk : kVerificationFailed;
  }
};

// ---------------------------------------------------------------- scatter
struct ScatterCmd {
  double V0 = 1.0;
  double alpha = 2.0;
  double beta = kDefaultBeta;
  int m = kDefaultM;
  double d = 0.0;
  double k = 1.0;
  std::string grid;
  OutputFlags out;

  int run(std::ostream& os) const {
    const Mollifier phi = make_mollifier(m);
    const PointInteraction pi = effective_coupling(V0, alpha, beta, phi, d);
    const auto sol = scattering_coefficients(pi, k);
    const double R = std::norm(sol.r);
    const double T = std::norm(sol.t);
    std::optional<MatchingReport> match;
    if (pi.g != 0.0) match = verify_matching(pi, k);
    const bool pass = !match || match->pass();
    const auto xs = grid.empty() ? std::vector<double>{} : parse_grid(grid);

    const json config = {{"V0", V0}, {"alpha", alpha}, {"beta", beta},
                         {"m", m},   {"d", d},         {"k", k}};
    switch (out.format()) {
      case Format::Json: {
        json rec = {{"command", "scatter"}, {"config", config},  {"g", pi.g},
                    {"source", to_string(pi.source)},            {"energy", sol.energy()},
                    {"r", complex_json(sol.r)}, {"t", complex_json(sol.t)},
                    {"R", R}, {"T", T}};
        if (match) {
          rec["matching"] = {{"continuity_error", match->continuity_error},
                             {"jump_error", match->jump_error},
                             {"free_equation_error", match->free_equation_error},
                             {"pass", match->pass()}};
          rec["bound_state_energy"] =
              match->bound_state_energy ? json(*match->bound_state_energy) : json(nullptr);
        }
        emit(os, rec);
        for (double x : xs) {
          const auto v = scattering_state(pi, k, {1.0, 0.0}, x);
          emit(os, {{"command", "scatter"}, {"config", config}, {"x", x}, {"re", v.real()}, {"im", v.imag()}});
        }
        break;
      }
      case Format::Csv:
        os << "g,r_re,r_im,t_re,t_im,R,T\n"
           << num(pi.g) << ',' << num(sol.r.real()) << ',' << num(sol.r.imag()) << ','
           << num(sol.t.real()) << ',' << num(sol.t.imag()) << ',' << num(R) << ',' << num(T) << '\n';
        if (!xs.empty()) os << "x,re,im\n";
        for (double x : xs) {
          const auto v = scattering_state(pi, k, {1.0, 0.0}, x);
          os << num(x) << ',' << num(v.real()) << ',' << num(v.imag()) << '\n';
        }
        break;
      case Format::Human:
        os << "g = " << num(pi.g) << " (" << to_string(pi.source) << "), E = " << num(sol.energy())
           << "\nr = " << num(sol.r.real()) << " + " << num(sol.r.imag()) << "i, t = "
           << num(sol.t.real()) << " + " << num(sol.t.imag()) << "i\n|r|^2 = " << num(R)
           << ", |t|^2 = " << num(T) << ", sum = " << num(R + T) << '\n';
        if (match) os << "matching conditions: " << (match->pass() ? "PASS" : "FAIL") << '\n';
        break;
    }
    return pass ? kOk : kVerificationFailed;
  }
};

// ---------------------------------------------------------------- diverge-demo
struct DivergeCmd {
  int m = kDefaultM;
  double beta = kDefaultBeta;
  std::string psi = kDefaultPsi;
  ScheduleFlags sched;
  OutputFlags out;

  int run(std::ostream& os) const {
    const Mollifier phi = make_mollifier(m);
    const TestFunction test = parse_test_function(psi);
    const LimitEstimate seq = sequential_only_divergence(phi, beta, test, sched.schedule());
    const ProductQuery q{delta(0), delta(0), 2.0 * beta, beta, phi, test, false};
    const LimitEstimate merged = product_limit(q, sched.schedule());
    const bool pass = !seq.converged && seq.tag == LimitTag::Divergent && merged.converged;
    switch (out.format()) {
      case Format::Json: {
        json config = {{"m", m}, {"beta", beta}, {"psi", test.literal()}};
        config.update(sched.echo());
        emit(os, {{"command", "diverge-demo"},
                  {"config", config},
                  {"psi_at_zero", test(0.0)},
                  {"sequential", limit_json(seq)},
                  {"merged", limit_json(merged)},
                  {"pass", pass}});
        break;
      }
      case Format::Csv:
        os << "n,sequential,merged\n";
        for (std::size_t i = 0; i < seq.terms.size(); ++i)
          os << num(seq.terms[i].first) << ',' << num(seq.terms[i].second) << ','
             << num(merged.terms[i].second) << '\n';
        break;
      case Format::Human:
        os << "sequential-only delta^2: " << (seq.converged ? "converged" : to_string(seq.tag))
           << " (last term " << num(seq.terms.back().second) << ")\n"
           << "merged product at alpha = 2 beta: " << num(merged.value)
           << (merged.converged ? " (converged)" : " (not converged)") << '\n'
           << (pass ? "PASS" : "FAIL") << '\n';
        break;
    }
    return pass ? kOk : kVerificationFailed;
  }
};

bool explicitly_given(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  for (const auto& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  return false;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::string_view rest = spec;
  while (true) {
    const auto colon = rest.find(':');
    std::string piece(rest.substr(0, colon));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(piece, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != piece.size())
      fail(ErrorKind::Parse, "grid must be a:b:step, got '" + spec + "'");
    parts.push_back(v);
    if (colon == std::string_view::npos) break;
    rest = rest.substr(colon + 1);
  }
  if (parts.size() != 3) fail(ErrorKind::Parse, "grid must be a:b:step, got '" + spec + "'");
  const double a = parts[0], b = parts[1], step = parts[2];
  if (!(step > 0.0) || !(a <= b)) fail(ErrorKind::Parse, "grid needs a <= b and step > 0");
  const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
  if (count > 1'000'000) fail(ErrorKind::Parse, "grid has more than 10^6 points");
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) xs.push_back(a + static_cast<double>(i) * step);
  return xs;
}

std::vector<std::string> config_arguments(const std::string& path,
                                          const std::vector<std::string>& explicit_args) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot read config file '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": empty key");
    if (explicitly_given(explicit_args, key)) continue;
    if (value == "true") {
      out.push_back("--" + key);
    } else if (value != "false") {
      out.push_back("--" + key);
      out.push_back(value);
    }
  }
  return out;
}

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  std::string config_path;
  for (std::size_t i = 0; i < args_in.size(); ++i) {
    if (args_in[i] == "--config" && i + 1 < args_in.size()) {
      config_path = args_in[++i];
    } else if (args_in[i].rfind("--config=", 0) == 0) {
      config_path = args_in[i].substr(9);
    } else {
      args.push_back(args_in[i]);
    }
  }

  CLI::App app{"Merged regularization products of one-dimensional distributions", "distmul"};
  app.require_subcommand(1);
  app.add_option("--config", config_path, "key=value file; explicit flags take precedence");

  MomentsCmd moments;
  auto* c_moments = app.add_subcommand("moments", "Mollifier moments A_j = int Phi(t) / t^j dt");
  c_moments->add_option("--m", moments.m, "Mollifier power (even, 0..16)")->capture_default_str();
  c_moments->add_option("--j", moments.j, "Moment index (repeatable)")->required();
  add_output_flags(c_moments, moments.out);
  c_moments->footer("CSV columns: m,j,A_j");

  RedCmd red;
  auto* c_red = app.add_subcommand("red", "Analytic representation delta^(k)_red(x, eps) on a grid");
  c_red->add_option("--k", red.k, "Derivative order (0..8)")->capture_default_str();
  c_red->add_option("--eps", red.eps, "Regularization eps > 0")->capture_default_str();
  c_red->add_option("--grid", red.grid, "a:b:step")->required();
  add_output_flags(c_red, red.out);
  c_red->footer("CSV columns: x,value");

  SeqCmd seq;
  auto* c_seq = app.add_subcommand("seq", "Mollified delta^(k): n^((k+1) beta) Phi^(k)(n^beta x)");
  c_seq->add_option("--k", seq.k, "Derivative order")->capture_default_str();
  c_seq->add_option("--m", seq.m, "Mollifier power (even)")->capture_default_str();
  c_seq->add_option("--beta", seq.beta, "Sequence rate beta > 0")->capture_default_str();
  c_seq->add_option("--n", seq.n, "Sequence index n >= 1")->required();
  c_seq->add_option("--grid", seq.grid, "a:b:step")->required();
  add_output_flags(c_seq, seq.out);
  c_seq->footer("CSV columns: x,value");

  ProductCmd product;
  auto* c_product = app.add_subcommand("product", "Limit of (delta^(l) x delta^(k))_n^(alpha,beta)(Psi)");
  c_product->add_option("--l", product.l, "Order of the first factor")->capture_default_str();
  c_product->add_option("--k", product.k, "Order of the second factor")->capture_default_str();
  c_product->add_option("--alpha", product.alpha, "Analytic rate alpha > 0")->capture_default_str();
  c_product->add_option("--beta", product.beta, "Sequence rate beta > 0")->capture_default_str();
  c_product->add_option("--m", product.m, "Mollifier power (even)")->capture_default_str();
  c_product->add_option("--psi", product.psi, "Test function bump:c=..,w=..,p=c0;c1;..")
      ->capture_default_str();
  add_schedule_flags(c_product, product.sched);
  c_product->add_option("--check-tol", product.check_tol,
                        "Relative tolerance against the closed form")
      ->capture_default_str();
  c_product->add_flag("--exploratory", product.exploratory,
                      "Skip validity checks on m and alpha; no closed-form comparison");
  add_output_flags(c_product, product.out);
  c_product->footer("CSV columns: n,term (final row n=inf holds the extrapolated limit)");

  VerifyTableCmd table;
  auto* c_table = app.add_subcommand("verify-table", "Check the six tabulated delta-derivative products");
  c_table->add_option("--m", table.m, "Mollifier power (even, >= 6)")->capture_default_str();
  c_table->add_option("--beta", table.beta, "Sequence rate beta > 0")->capture_default_str();
  c_table->add_option("--psi", table.psi, "Test function literal")->capture_default_str();
  c_table->add_option("--tol", table.tol, "Relative tolerance for nonzero entries")
      ->capture_default_str();
  c_table->add_option("--n0", table.sched.n0, "First n of the schedule")->capture_default_str();
  c_table->add_option("--steps", table.sched.steps, "Number of schedule terms")
      ->capture_default_str()
      ->check(CLI::Range(4, 30));
  c_table->add_option("--conv-tol", table.sched.tol, "Convergence tolerance on differences")
      ->capture_default_str();
  add_output_flags(c_table, table.out);
  c_table->footer(
      "CSV columns: l,k,regime,alpha,measured,expected,error_estimate,converged,pass");

  ConsistencyCmd consistency;
  auto* c_cons = app.add_subcommand("consistency", "Product of two continuous functions vs int f g Psi");
  c_cons->add_option("--f", consistency.f, "hat:c=..,w=..,h=.. | quartic:.. | ident:w=..,r=.. | zero")
      ->capture_default_str();
  c_cons->add_option("--g", consistency.g, "Second function literal")->capture_default_str();
  c_cons->add_option("--alpha", consistency.alpha, "Analytic rate")->capture_default_str();
  c_cons->add_option("--beta", consistency.beta, "Sequence rate")->capture_default_str();
  c_cons->add_option("--m", consistency.m, "Mollifier power (even)")->capture_default_str();
  c_cons->add_option("--psi", consistency.psi, "Test function literal")->capture_default_str();
  add_schedule_flags(c_cons, consistency.sched);
  c_cons->add_option("--check-tol", consistency.check_tol, "Absolute tolerance on the difference")
      ->capture_default_str();
  add_output_flags(c_cons, consistency.out);
  c_cons->footer("CSV columns: n,term (final row n=inf holds the extrapolated limit)");

  ScatterCmd scatter;
  auto* c_scatter = app.add_subcommand("scatter", "Scattering off V0 (delta x delta)_(alpha,beta)");
  c_scatter->add_option("--V0", scatter.V0, "Potential strength")->capture_default_str();
  c_scatter->add_option("--alpha", scatter.alpha, "Analytic rate")->capture_default_str();
  c_scatter->add_option("--beta", scatter.beta, "Sequence rate")->capture_default_str();
  c_scatter->add_option("--m", scatter.m, "Mollifier power (even, > 1)")->capture_default_str();
  c_scatter->add_option("--d", scatter.d, "Separation of the two deltas")->capture_default_str();
  c_scatter->add_option("--k", scatter.k, "Wavenumber k > 0")->capture_default_str();
  c_scatter->add_option("--grid", scatter.grid, "Optional a:b:step wavefunction samples");
  add_output_flags(c_scatter, scatter.out);
  c_scatter->footer("CSV columns: g,r_re,r_im,t_re,t_im,R,T then x,re,im for --grid");

  DivergeCmd diverge;
  auto* c_div = app.add_subcommand("diverge-demo", "delta^2 by delta-sequences alone vs the merged product");
  c_div->add_option("--m", diverge.m, "Mollifier power (even)")->capture_default_str();
  c_div->add_option("--beta", diverge.beta, "Sequence rate")->capture_default_str();
  c_div->add_option("--psi", diverge.psi, "Test function literal")->capture_default_str();
  add_schedule_flags(c_div, diverge.sched);
  add_output_flags(c_div, diverge.out);
  c_div->footer("CSV columns: n,sequential,merged");

  try {
    if (!config_path.empty()) {
      auto extra = config_arguments(config_path, args);
      if (!args.empty()) args.insert(args.begin() + 1, extra.begin(), extra.end());
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const Error& e) {
    err << "distmul: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*c_moments) return moments.run(out);
    if (*c_red) return red.run(out);
    if (*c_seq) return seq.run(out);
    if (*c_product) return product.run(out);
    if (*c_table) return table.run(out);
    if (*c_cons) return consistency.run(out);
    if (*c_scatter) return scatter.run(out);
    if (*c_div) return diverge.run(out);
  } catch (const NumericFailure& e) {
    err << "distmul: numeric failure: " << e.what() << " (partial " << num(e.partial_value())
        << ", error estimate " << num(e.error_estimate()) << ")\n";
    return kNumericFailure;
  } catch (const Error& e) {
    err << "distmul: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace distmul::cli
