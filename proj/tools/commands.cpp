#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <future>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eup/core.hpp"
#include "eup/onedim.hpp"
#include "eup/sturm.hpp"
#include "eup/threedim.hpp"
#include "eup/twodim.hpp"
#include "output.hpp"

namespace eup::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string one_line(std::string msg) {
  for (char& ch : msg) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  return msg;
}

void report(std::ostream& err, const std::string& code, const std::string& msg) {
  err << "EUP-ERR " << code << ' ' << one_line(msg) << '\n';
}

// Error code and status label for library exceptions.
std::pair<std::string, std::string> classify(const std::exception& e) {
  if (dynamic_cast<const RootNotFoundError*>(&e)) return {"root_not_found", "numerical_error"};
  if (dynamic_cast<const ConvergenceError*>(&e)) return {"convergence", "numerical_error"};
  if (dynamic_cast<const QuadratureError*>(&e)) return {"quadrature", "numerical_error"};
  if (dynamic_cast<const InternalError*>(&e)) return {"internal", "numerical_error"};
  return {"domain", "domain_error"};
}

Format resolve_format(const std::optional<std::string>& flag) {
  std::string name = "csv";
  if (const char* env = std::getenv("EUP_DEFAULT_FORMAT"); env && *env) name = env;
  if (flag) name = *flag;
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw UsageError("unknown output format '" + name + "' (expected csv or json)");
}

// ---------------------------------------------------------------------------
// bound / scan

struct BoundParams {
  int dim = 0;
  std::optional<double> alpha;
  std::optional<double> dx;
  std::optional<double> a;
  std::optional<double> theta;
  std::optional<double> radius;
  double hbar = 1.0;
};

void check_complete(const BoundParams& p) {
  switch (p.dim) {
    case 1:
      if (!p.dx) throw UsageError("--dim 1 requires --dx");
      break;
    case 2:
      if (!p.theta) throw UsageError("--dim 2 requires --theta");
      if (p.a.has_value() == p.alpha.has_value()) throw UsageError("--dim 2 requires exactly one of --a or --alpha");
      break;
    case 3:
      if (!p.radius) throw UsageError("--dim 3 requires --radius");
      break;
    default:
      throw UsageError("--dim must be 1, 2 or 3");
  }
}

Fields bound_inputs(const BoundParams& p) {
  Fields in{{"dim", static_cast<long long>(p.dim)}};
  switch (p.dim) {
    case 1:
      in.emplace_back("alpha", p.alpha.value_or(0.0));
      in.emplace_back("dx", *p.dx);
      break;
    case 2: {
      // a is reported as resolved, also when it came from --alpha.
      Value a = std::string();
      if (p.a) {
        a = *p.a;
      } else if (p.alpha && *p.alpha > 0.0) {
        a = 1.0 / (2.0 * std::sqrt(*p.alpha));
      }
      in.emplace_back("a", a);
      in.emplace_back("theta", *p.theta);
      break;
    }
    default:
      in.emplace_back("alpha", p.alpha.value_or(0.0));
      in.emplace_back("radius", *p.radius);
      break;
  }
  in.emplace_back("hbar", p.hbar);
  return in;
}

std::vector<std::string> bound_output_keys(int dim) {
  switch (dim) {
    case 1:
      return {"status", "sigma_p_min", "product", "phi", "regime"};
    case 2:
      return {"status", "nu1", "lambda1", "sigma_p_min", "product", "residual", "bracket_lo", "bracket_hi"};
    default:
      return {"status", "sigma_p_min", "product", "lambda1", "K", "floor"};
  }
}

Fields blank_outputs(int dim, const std::string& status) {
  Fields out;
  for (const auto& key : bound_output_keys(dim)) {
    out.emplace_back(key, key == "status" ? Value(status) : Value(std::string()));
  }
  return out;
}

double bound_tolerance(int dim) { return dim == 2 ? 1e-12 : 0.0; }

Fields bound_outputs(const BoundParams& p) {
  Fields out;
  switch (p.dim) {
    case 1: {
      const auto c = Confinement::slit(*p.dx, DeformationParam(p.alpha.value_or(0.0), p.hbar));
      const auto r = bound_1d(c);
      out = {{"status", std::string("ok")},
             {"sigma_p_min", r.sigma_p_min},
             {"product", r.product},
             {"phi", r.phi},
             {"regime", to_string(r.regime)}};
      break;
    }
    case 2: {
      const CapProblem prob =
          p.a ? CapProblem(*p.a, *p.theta, p.hbar) : CapProblem::from_alpha(*p.alpha, *p.theta, p.hbar);
      const auto r = cap_bound(prob);
      out = {{"status", std::string("ok")}, {"nu1", r.nu1},         {"lambda1", r.lambda1},
             {"sigma_p_min", r.sigma_p_min}, {"product", r.product}, {"residual", r.residual},
             {"bracket_lo", r.bracket.first}, {"bracket_hi", r.bracket.second}};
      break;
    }
    default: {
      const auto r = bound_3d(*p.radius, p.alpha.value_or(0.0), p.hbar);
      out = {{"status", std::string(r.degenerate ? "degenerate" : "ok")},
             {"sigma_p_min", r.sigma_p_min},
             {"product", r.product},
             {"lambda1", r.lambda1},
             {"K", r.curvature},
             {"floor", r.floor ? Value(*r.floor) : Value(std::string())}};
      break;
    }
  }
  for (const auto& [key, value] : out) {
    if (const auto* d = std::get_if<double>(&value); d && !std::isfinite(*d)) {
      out[0].second = std::string("degenerate");
    }
  }
  return out;
}

struct Sweep {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  long count = 0;
  bool log_scale = false;

  double at(long i) const {
    if (count == 1 || i == 0) return start;
    if (i == count - 1) return stop;
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    if (log_scale) return std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
    return start + t * (stop - start);
  }
};

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("cannot parse " + what + " '" + s + "'");
  }
  if (used != s.size()) throw UsageError("cannot parse " + what + " '" + s + "'");
  return v;
}

Sweep parse_sweep(std::string spec, int dim) {
  Sweep sw;
  if (spec.rfind("log:", 0) == 0) {
    sw.log_scale = true;
    spec = spec.substr(4);
  }
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) throw UsageError("--sweep expects [log:]name:start:stop:count");
  sw.name = parts[0];
  sw.start = parse_double(parts[1], "sweep start");
  sw.stop = parse_double(parts[2], "sweep stop");
  const double count = parse_double(parts[3], "sweep count");
  if (!(count >= 1.0) || count != std::floor(count) || count > 1e7) throw UsageError("sweep count must be a positive integer");
  sw.count = static_cast<long>(count);
  if (!std::isfinite(sw.start) || !std::isfinite(sw.stop)) throw UsageError("sweep bounds must be finite");
  if (sw.log_scale && !(sw.start > 0.0 && sw.stop > 0.0)) throw UsageError("log sweep needs positive bounds");

  const std::vector<std::string> allowed = dim == 1   ? std::vector<std::string>{"alpha", "dx", "hbar"}
                                           : dim == 2 ? std::vector<std::string>{"a", "alpha", "theta", "hbar"}
                                                      : std::vector<std::string>{"alpha", "radius", "hbar"};
  if (std::find(allowed.begin(), allowed.end(), sw.name) == allowed.end()) {
    throw UsageError("cannot sweep '" + sw.name + "' for --dim " + std::to_string(dim));
  }
  return sw;
}

void apply_sweep(BoundParams& p, const std::string& name, double v) {
  if (name == "alpha") p.alpha = v;
  if (name == "dx") p.dx = v;
  if (name == "a") p.a = v;
  if (name == "theta") p.theta = v;
  if (name == "radius") p.radius = v;
  if (name == "hbar") p.hbar = v;
}

// Runs jobs concurrently and returns results in submission order.
template <typename T>
std::vector<T> run_ordered(const std::vector<std::function<T()>>& jobs) {
  std::vector<std::future<T>> futures;
  futures.reserve(jobs.size());
  for (const auto& job : jobs) futures.push_back(std::async(std::launch::async, job));
  std::vector<T> results;
  results.reserve(jobs.size());
  for (auto& f : futures) results.push_back(f.get());
  return results;
}

int cmd_bound(const BoundParams& p, Format format, std::ostream& out, std::ostream& err) {
  check_complete(p);
  Record rec{"bound", bound_inputs(p), {}};
  try {
    rec.outputs = bound_outputs(p);
  } catch (const std::exception& e) {
    report(err, classify(e).first, e.what());
    return kDomain;
  }
  RecordWriter writer(out, format, "bound", Meta{bound_tolerance(p.dim), 0});
  writer.write(rec);
  writer.finish();
  return kOk;
}

int cmd_scan(BoundParams p, const std::string& sweep_spec, Format format, std::ostream& out, std::ostream& err) {
  if (p.dim < 1 || p.dim > 3) throw UsageError("--dim must be 1, 2 or 3");
  const Sweep sw = parse_sweep(sweep_spec, p.dim);
  apply_sweep(p, sw.name, sw.start);
  if (p.dim == 2 && sw.name == "a") p.alpha.reset();
  if (p.dim == 2 && sw.name == "alpha") p.a.reset();
  check_complete(p);

  // Chunked so a long sweep does not spawn one thread per point.
  constexpr long kChunk = 64;
  std::vector<std::function<std::vector<Record>()>> jobs;
  for (long lo = 0; lo < sw.count; lo += kChunk) {
    const long hi = std::min(sw.count, lo + kChunk);
    jobs.emplace_back([p, sw, lo, hi] {
      std::vector<Record> recs;
      for (long i = lo; i < hi; ++i) {
        BoundParams q = p;
        apply_sweep(q, sw.name, sw.at(i));
        Record rec{"scan", bound_inputs(q), {}};
        try {
          rec.outputs = bound_outputs(q);
        } catch (const std::exception& e) {
          rec.outputs = blank_outputs(q.dim, classify(e).second);
        }
        recs.push_back(std::move(rec));
      }
      return recs;
    });
  }
  const auto chunks = run_ordered(jobs);

  RecordWriter writer(out, format, "scan", Meta{bound_tolerance(p.dim), 0});
  long long warnings = 0;
  for (const auto& chunk : chunks) {
    for (const auto& rec : chunk) {
      const auto& status = std::get<std::string>(rec.outputs.front().second);
      if (status != "ok" && status != "degenerate") ++warnings;
      writer.write(rec);
    }
  }
  writer.summary({{"sweep", sw.name}, {"points", static_cast<long long>(sw.count)}, {"warnings", warnings}});
  writer.finish();
  if (warnings > 0) report(err, "warning", std::to_string(warnings) + " sweep points outside the valid domain");
  return kOk;
}

// ---------------------------------------------------------------------------
// validate

struct Check {
  std::string suite;
  std::string check;
  std::string label;
  double closed_form = 0.0;
  double oracle = 0.0;
  double tolerance = 0.0;
  long long grid = 0;
  bool order_check = false;  // compares an observed order with 2 instead of two values

  double error() const {
    return order_check ? std::abs(oracle - closed_form) : std::abs(oracle - closed_form) / std::abs(closed_form);
  }
  bool pass() const { return std::isfinite(error()) && error() <= tolerance; }
};

std::string fmt_case(std::initializer_list<std::pair<const char*, double>> kv) {
  std::string s;
  for (const auto& [k, v] : kv) s += (s.empty() ? "" : ";") + std::string(k) + "=" + format_number(v);
  return s;
}

std::vector<std::function<std::vector<Check>()>> suite_1d(std::optional<int> grid) {
  std::vector<std::function<std::vector<Check>()>> jobs;
  const int n = grid.value_or(4000);
  for (double alpha : {0.0, 0.1, 1.0, 10.0}) {
    for (double dx : {0.5, 1.0, 2.0}) {
      jobs.emplace_back([alpha, dx, n] {
        const auto modes = spectrum_1d(Confinement::slit(dx, DeformationParam(alpha)), 5);
        const auto coarse = sturm::oracle_1d_p2(dx, alpha, n, 5);
        const auto fine = sturm::oracle_1d_p2(dx, alpha, 2 * n, 5);
        std::vector<Check> checks;
        double worst_order = 2.0;
        for (int k = 0; k < 5; ++k) {
          const double exact = modes[static_cast<std::size_t>(k)].p_n * modes[static_cast<std::size_t>(k)].p_n;
          checks.push_back({"1d", "eigenvalue", fmt_case({{"alpha", alpha}, {"dx", dx}, {"k", k + 1.0}}), exact,
                            coarse.eigenvalues(k), 1e-4, n, false});
          const double order = sturm::observed_order(coarse.eigenvalues(k) - exact, coarse.grid_spacing,
                                                     fine.eigenvalues(k) - exact, fine.grid_spacing);
          if (!(std::abs(order - 2.0) <= std::abs(worst_order - 2.0))) worst_order = order;
        }
        checks.push_back(
            {"1d", "order", fmt_case({{"alpha", alpha}, {"dx", dx}}), 2.0, worst_order, 0.2, n, true});
        return checks;
      });
    }
  }
  return jobs;
}

std::vector<std::function<std::vector<Check>()>> suite_2d(std::optional<int> grid) {
  std::vector<std::function<std::vector<Check>()>> jobs;
  const int n = grid.value_or(8000);
  for (double theta : {0.3, std::numbers::pi / 2.0, 2.0, 2.5}) {
    jobs.emplace_back([theta, n] {
      const auto r = cap_bound(CapProblem(1.0, theta));
      const auto o = sturm::oracle_cap(theta, n);
      return std::vector<Check>{
          {"2d", "cap_lambda1", fmt_case({{"a", 1.0}, {"theta", theta}}), r.lambda1, o.eigenvalues(0), 1e-5, n, false}};
    });
  }
  jobs.emplace_back([n] {
    const double theta = 0.01;
    const auto r = cap_bound(CapProblem(1.0, theta));
    const auto disk = sturm::oracle_flat_disk(n);
    return std::vector<Check>{{"2d", "flat_disk_limit", fmt_case({{"a", 1.0}, {"theta", theta}}), disk.eigenvalues(0),
                               r.lambda1 * theta * theta, 1e-3, n, false}};
  });
  return jobs;
}

std::vector<std::function<std::vector<Check>()>> suite_3d(std::optional<int> grid) {
  std::vector<std::function<std::vector<Check>()>> jobs;
  const int n = grid.value_or(4000);
  const std::vector<std::pair<double, double>> cases{{1, 1}, {1, 2}, {0, 1}, {-1, 1}, {-1, 5}};
  for (const auto& [curvature, radius] : cases) {
    jobs.emplace_back([curvature, radius, n] {
      const auto r = bound_3d(radius, curvature / 4.0);
      const auto o = sturm::oracle_ball(radius, curvature, n);
      return std::vector<Check>{{"3d", "ball_lambda1", fmt_case({{"K", curvature}, {"R", radius}}), r.lambda1,
                                 o.eigenvalues(0), 1e-4, n, false}};
    });
  }
  jobs.emplace_back([] {
    std::vector<Check> checks;
    for (double radius : {0.2, 0.6, 1.2}) {
      const double dx = 2.0 * coordinate_from_geodesic_radius(radius, 1.0);
      const auto b = bound_1d(Confinement::slit(dx, DeformationParam(1.0)));
      checks.push_back({"3d", "geodesic_identity", fmt_case({{"alpha", 1.0}, {"R", radius}}),
                        bound_1d_geodesic(radius), b.sigma_p_min, 1e-12, 0, false});
    }
    return checks;
  });
  return jobs;
}

int cmd_validate(const std::string& suite, std::optional<int> grid, Format format, std::ostream& out,
                 std::ostream& err) {
  if (grid && *grid < 16) throw UsageError("--grid must be >= 16");
  std::vector<std::function<std::vector<Check>()>> jobs;
  auto append = [&jobs](auto more) { jobs.insert(jobs.end(), more.begin(), more.end()); };
  if (suite == "1d" || suite == "all") append(suite_1d(grid));
  if (suite == "2d" || suite == "all") append(suite_2d(grid));
  if (suite == "3d" || suite == "all") append(suite_3d(grid));

  std::vector<std::vector<Check>> results;
  try {
    results = run_ordered(jobs);
  } catch (const std::exception& e) {
    report(err, classify(e).first, e.what());
    return kDomain;
  }

  RecordWriter writer(out, format, "validate", Meta{1e-14, grid.value_or(0)});
  long long total = 0;
  long long failures = 0;
  for (const auto& group : results) {
    for (const auto& c : group) {
      ++total;
      if (!c.pass()) ++failures;
      writer.write({"validate",
                    {{"suite", c.suite}, {"check", c.check}, {"case", c.label}},
                    {{"closed_form", c.closed_form},
                     {"oracle", c.oracle},
                     {"error", c.error()},
                     {"tolerance", c.tolerance},
                     {"grid", c.grid},
                     {"pass", c.pass()}}});
    }
  }
  writer.summary({{"suite", suite}, {"checks", total}, {"failures", failures}});
  writer.finish();
  if (failures > 0) {
    report(err, "validation", std::to_string(failures) + " of " + std::to_string(total) + " checks failed");
    return kValidationFailed;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// modes

int cmd_modes(int dim, double alpha, std::optional<double> dx, int n, int samples, double hbar, Format format,
              std::ostream& out, std::ostream& err) {
  if (dim != 1) throw UsageError("modes supports --dim 1 only");
  if (!dx) throw UsageError("modes requires --dx");
  if (samples < 2) throw UsageError("--samples must be >= 2");
  try {
    const auto c = Confinement::slit(*dx, DeformationParam(alpha, hbar));
    const Mode1D m = mode_1d(c, n);
    QuadratureOptions opt;
    const double half = c.size() / 2.0;
    const double norm = integrate(
                            [&](double x) {
                              const double psi = eval_mode_1d(m, c, x);
                              return psi * psi;
                            },
                            -half, half, opt)
                            .value;
    RecordWriter writer(out, format, "modes", Meta{opt.rel_tol, 0});
    const Fields inputs{{"alpha", alpha}, {"dx", *dx}, {"hbar", hbar}, {"n", static_cast<long long>(n)}};
    for (int j = 0; j <= samples; ++j) {
      // Exact endpoints and midpoint: numerator is an integer.
      const double x = static_cast<double>(2 * j - samples) / (2.0 * samples) * c.size();
      writer.write({"modes", inputs, {{"x", x}, {"psi", eval_mode_1d(m, c, x)}}});
    }
    writer.summary({{"n", static_cast<long long>(n)},
                    {"parity", to_string(m.parity)},
                    {"p_n", m.p_n},
                    {"norm_const", m.norm_const},
                    {"norm", norm}});
    writer.finish();
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    report(err, classify(e).first, e.what());
    return kDomain;
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extended-uncertainty momentum bounds: closed forms, spectra and oracle validation", "eup"};
  app.require_subcommand(1);
  std::optional<std::string> format_flag;
  auto add_format = [&format_flag](CLI::App* sub) {
    sub->add_option("--format", format_flag, "Output format: csv (default) or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  BoundParams bp;
  auto add_bound_params = [&bp](CLI::App* sub) {
    sub->add_option("--dim", bp.dim, "Dimension: 1 (slit), 2 (spherical cap), 3 (geodesic ball)")
        ->required()
        ->check(CLI::IsMember({1, 2, 3}));
    sub->add_option("--alpha", bp.alpha, "Deformation parameter alpha [1/length^2]");
    sub->add_option("--dx", bp.dx, "Slit width (dim 1)");
    sub->add_option("--a", bp.a, "Sphere radius (dim 2)");
    sub->add_option("--theta", bp.theta, "Cap angular radius in radians (dim 2)");
    sub->add_option("--radius", bp.radius, "Geodesic ball radius (dim 3)");
    sub->add_option("--hbar", bp.hbar, "Reduced Planck constant (default 1)");
  };

  auto* bound = app.add_subcommand("bound", "Minimal momentum spread for one confinement");
  add_bound_params(bound);
  add_format(bound);

  auto* scan = app.add_subcommand("scan", "Evaluate the bound along a parameter sweep");
  add_bound_params(scan);
  add_format(scan);
  std::string sweep;
  scan->add_option("--sweep", sweep, "[log:]name:start:stop:count")->required();

  auto* validate = app.add_subcommand("validate", "Cross-check closed forms against the finite-difference oracle");
  std::string suite = "all";
  std::optional<int> grid;
  validate->add_option("--suite", suite, "1d, 2d, 3d or all")->check(CLI::IsMember({"1d", "2d", "3d", "all"}));
  validate->add_option("--grid", grid, "Oracle grid size override");
  add_format(validate);

  auto* modes = app.add_subcommand("modes", "Sample a slit eigenfunction");
  int modes_dim = 1;
  double modes_alpha = 0.0;
  std::optional<double> modes_dx;
  int modes_n = 1;
  int modes_samples = 512;
  double modes_hbar = 1.0;
  modes->add_option("--dim", modes_dim, "Must be 1");
  modes->add_option("--alpha", modes_alpha, "Deformation parameter alpha");
  modes->add_option("--dx", modes_dx, "Slit width")->required();
  modes->add_option("--n", modes_n, "Mode index (nonzero)");
  modes->add_option("--samples", modes_samples, "Number of subintervals; M + 1 points are emitted");
  modes->add_option("--hbar", modes_hbar, "Reduced Planck constant (default 1)");
  add_format(modes);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);  // --help
    report(err, "usage", e.what());
    return kUsage;
  }

  try {
    const Format format = resolve_format(format_flag);
    if (*bound) return cmd_bound(bp, format, out, err);
    if (*scan) return cmd_scan(bp, sweep, format, out, err);
    if (*validate) return cmd_validate(suite, grid, format, out, err);
    return cmd_modes(modes_dim, modes_alpha, modes_dx, modes_n, modes_samples, modes_hbar, format, out, err);
  } catch (const UsageError& e) {
    report(err, "usage", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    report(err, classify(e).first, e.what());
    return kDomain;
  }
}

}  // namespace eup::cli
