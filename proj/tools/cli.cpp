#include "cli.hpp"

#include <cmath>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>

#include "acceptance.hpp"
#include "wsa/benchmarks.hpp"
#include "wsa/config.hpp"
#include "wsa/dirichlet.hpp"
#include "wsa/enumeration.hpp"
#include "wsa/error.hpp"
#include "wsa/formulas.hpp"
#include "wsa/fractal.hpp"
#include "wsa/report.hpp"
#include "wsa/snap.hpp"

namespace wsa::cli {

namespace {

std::string g(double v) { return format_double(v); }

std::string join(std::span<const double> xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + g(xs[i]);
  return out;
}

/// Options shared by the manifold-based subcommands.
struct Common {
  std::string config_path;
  std::string manifold_name;
  std::vector<double> tau;
  std::vector<double> tau_dep;
  std::optional<std::size_t> d;
  std::optional<std::size_t> m;
  std::string out_path;

  ExperimentConfig cfg;
  std::string config_text;

  void add_to(CLI::App* app, bool full_tau) {
    app->add_option("--config", config_path, "experiment config file");
    app->add_option("--manifold", manifold_name, "named benchmark manifold");
    if (full_tau) {
      app->add_option("--tau", tau, "full weight vector (comma separated)")->delimiter(',');
    } else {
      app->add_option("--tau-dep", tau_dep, "dependent weights (comma separated)")->delimiter(',');
    }
    app->add_option("--out", out_path, "output CSV path");
  }

  void load() {
    if (!config_path.empty()) {
      config_text = read_text_file(config_path);
      cfg = parse_config(config_text, config_path);
    }
    if (!manifold_name.empty()) cfg.manifold = benchmark_manifold(manifold_name);
    if (out_path.empty() && cfg.output) out_path = *cfg.output;
  }

  const MongeManifold& manifold() const {
    if (!cfg.manifold) throw ParseError("no manifold: pass --manifold NAME or a config with a chart");
    return *cfg.manifold;
  }

  std::vector<double> full_tau() const {
    if (!tau.empty()) return tau;
    if (!cfg.tau.empty()) return cfg.tau;
    throw ParseError("no weights: pass --tau or set 'tau' in the config");
  }

  WeightVector dependent() const {
    const std::size_t mm = manifold().m();
    std::vector<double> dep = tau_dep;
    if (dep.empty() && !cfg.tau.empty()) {
      if (cfg.tau.size() == mm) {
        dep = cfg.tau;
      } else if (cfg.tau.size() == manifold().n()) {
        dep.assign(cfg.tau.end() - static_cast<std::ptrdiff_t>(mm), cfg.tau.end());
      }
    }
    if (dep.size() != mm) {
      throw ParseError("need " + std::to_string(mm) + " dependent weights (--tau-dep or 'tau')");
    }
    return WeightVector::dependent_only(dep);
  }
};

void emit(const Common& c, std::ostream& out, std::ostream& err, const std::string& csv,
          std::string_view kind, const std::vector<std::string>& args) {
  if (c.out_path.empty()) {
    out << csv;
    return;
  }
  write_file(c.out_path, csv);
  std::string canonical;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].rfind("--out=", 0) == 0) continue;
    canonical += args[i] + "\n";
  }
  canonical += c.config_text;
  write_provenance(c.out_path, kind, canonical);
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  out << "wrote " << c.out_path << "\n";
  err << "generated " << stamp << "\n";
}

void print_violations(std::ostream& err, const HypothesisError& e) {
  err << "hypothesis violated:\n";
  for (const auto& v : e.violations()) err << "  - " << v << "\n";
}

// ---- dim / weights / order --------------------------------------------------

int cmd_dim(const Common& c, std::optional<int> n_opt, std::ostream& out, std::ostream& err) {
  const auto tau = c.full_tau();
  std::optional<std::size_t> d = c.d, m = c.m;
  if (c.cfg.manifold) {
    d = d.value_or(c.manifold().d());
    m = m.value_or(c.manifold().m());
  }
  if (!d && c.cfg.split && *c.cfg.split < tau.size()) {
    d = *c.cfg.split;
    m = tau.size() - *c.cfg.split;
  }
  const int n = n_opt.value_or(static_cast<int>(tau.size()));
  if (static_cast<std::size_t>(n) != tau.size()) throw ParseError("--n differs from the number of weights");
  const bool equal = std::all_of(tau.begin(), tau.end(), [&](double t) { return t == tau.front(); });
  int status = 0;

  auto report = [&](const std::string& label, auto&& fn, bool primary) {
    try {
      const DimensionResult r = fn();
      out << label << ": " << g(r.value);
      if (r.argmin_j != 0) out << " (argmin j=" << r.argmin_j << ")";
      out << "\n";
    } catch (const HypothesisError& e) {
      out << label << ": not applicable";
      for (const auto& v : e.violations()) out << "; " << v;
      out << "\n";
      if (primary) status = static_cast<int>(ExitCode::hypothesis);
    }
  };

  if (d && m) {
    if (*d + *m != tau.size()) throw ParseError("d + m differs from the number of weights");
    report("manifold_lower_bound", [&] { return manifold_lower_bound(WeightVector(tau, *d), *d, *m); }, true);
    if (*d == 1 && *m == 1) {
      report("planar_curve", [&] { return planar_curve_dimension(tau[0], tau[1]); }, false);
    }
    if (equal) {
      report("blvv_simultaneous", [&] { return blvv_simultaneous(n, static_cast<int>(*m), tau[0]); }, false);
    }
  } else {
    report("rynne", [&] { return rynne_dimension(std::span<const double>(tau)); }, true);
    if (equal) report("jarnik_besicovitch", [&] { return jarnik_besicovitch(n, tau[0]); }, false);
    if (n == 2) report("planar_curve", [&] { return planar_curve_dimension(tau[0], tau[1]); }, false);
  }
  (void)err;
  return status;
}

int cmd_weights(const Common& c, std::ostream& out) {
  const auto tau = c.full_tau();
  std::optional<std::size_t> d = c.d, m = c.m;
  if (c.cfg.manifold) {
    d = d.value_or(c.manifold().d());
    m = m.value_or(c.manifold().m());
  }
  if (d && m) {
    const WeightVector a = proof_weight_vector_manifold(std::span<const double>(tau), *d, *m);
    out << "manifold weights a = " << join(a.entries()) << "\n";
    out << "rectangle bound over a = " << g(wwx_rectangle_bound(a).value) << "\n";
  } else {
    const WeightVector a = proof_weight_vector_rynne(WeightVector::plain(tau));
    out << "rynne weights a = " << join(a.entries()) << "\n";
  }
  return 0;
}

ApproxFunction parse_psi(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("psi spec '" + spec + "' needs a kind, e.g. pow:2");
  const std::string kind = spec.substr(0, colon);
  std::vector<long double> args;
  std::stringstream ss(spec.substr(colon + 1));
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      args.push_back(std::stold(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ParseError("psi spec '" + spec + "': bad number '" + part + "'");
    }
  }
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw ParseError("psi spec '" + spec + "' expects " + std::to_string(k) + " numbers");
  };
  if (kind == "pow") {
    need(1);
    const long double a = args[0];
    return [a](std::uint64_t q) { return std::pow(static_cast<long double>(q), -a); };
  }
  if (kind == "powlog") {
    need(2);
    const long double a = args[0], b = args[1];
    return [a, b](std::uint64_t q) {
      const long double x = static_cast<long double>(q);
      return std::pow(x, -a) * std::pow(std::log(x), b);
    };
  }
  if (kind == "alt") {
    need(2);
    const long double a = args[0], b = args[1];
    return [a, b](std::uint64_t q) { return std::pow(static_cast<long double>(q), q % 2 == 0 ? -a : -b); };
  }
  throw ParseError("unknown psi kind '" + kind + "' (pow, powlog, alt)");
}

int cmd_order(const std::vector<std::string>& specs, std::uint64_t q_max, std::ostream& out) {
  if (specs.empty()) throw ParseError("order: pass at least one --psi");
  std::vector<ApproxFunction> psi;
  for (const auto& s : specs) psi.push_back(parse_psi(s));
  const UpperOrderEstimate est = estimate_upper_order(psi, q_max);
  out << "window " << est.window_lo << ".." << est.window_hi << "\n";
  for (std::size_t i = 0; i < est.v.size(); ++i) {
    out << "v_" << i + 1 << " = " << g(est.v[i]) << " (" << est.samples[i].size() << " samples)\n";
  }
  return 0;
}

// ---- dirichlet / enumerate / coverage / boxcount -----------------------------

std::vector<SnappedReal> snapped_x(const Common& c, const std::vector<std::string>& flag) {
  const std::vector<std::string>& src = flag.empty() ? c.cfg.x : flag;
  if (src.size() != c.manifold().d()) {
    throw ParseError("need " + std::to_string(c.manifold().d()) + " coordinates for x (--x or 'x')");
  }
  std::vector<SnappedReal> out;
  for (const auto& s : src) out.push_back(snap_expression(s));
  return out;
}

int cmd_dirichlet(const Common& c, const std::vector<std::string>& x_flag, std::optional<std::uint64_t> Q,
                  const std::vector<std::uint64_t>& ladder, std::optional<double> r, std::ostream& out) {
  const MongeManifold& M = c.manifold();
  const WeightVector tau = c.dependent();
  const auto x = snapped_x(c, x_flag);
  const ManifoldConstants k = manifold_constants(M);
  const std::uint64_t Q0 = compute_Q0(M, tau, x, r);
  out << "manifold " << M.name() << ": C = " << g(k.C) << ", D = " << g(k.D) << "\n";
  out << "Q0 = " << Q0 << "\n";
  auto print = [&](const DirichletSolution& s) {
    out << "Q = " << s.Q << ": q = " << s.point.q << ", p = (";
    for (std::size_t i = 0; i < s.point.p.size(); ++i) out << (i ? "," : "") << s.point.p[i];
    out << "), independent errors " << join(s.independent_errors) << ", dependent errors "
        << join(s.dependent_errors) << "\n";
  };
  if (!ladder.empty()) {
    const SweepResult sweep = infinitude_sweep(M, tau, x, ladder);
    for (const auto& s : sweep.solutions) print(s);
    out << "distinct q: " << sweep.distinct_q << "\n";
    return 0;
  }
  print(solve_dirichlet(M, tau, x, Q.value_or(Q0)));
  return 0;
}

int cmd_enumerate(const Common& c, std::optional<std::int64_t> q_min, std::optional<std::int64_t> q_max,
                  const std::string& bound, std::uint64_t cap, std::ostream& out, std::ostream& err,
                  const std::vector<std::string>& args) {
  EnumerationOptions opt;
  if (bound == "halved") {
    opt.bound = DependentBound::halved;
  } else if (bound != "full") {
    throw ParseError("--bound must be full or halved");
  }
  opt.candidate_cap = cap;
  const std::int64_t lo = q_min.value_or(c.cfg.q_min.value_or(1));
  const std::int64_t hi = q_max ? *q_max : c.cfg.q_max ? *c.cfg.q_max : throw ParseError("need --q-max");
  const PointFamily fam = enumerate_points(c.manifold(), c.dependent(), lo, hi, opt);
  std::ostringstream csv;
  write_points_csv(csv, fam);
  emit(c, out, err, csv.str(), "points", args);
  return 0;
}

int cmd_coverage(const Common& c, std::vector<std::int64_t> ladder, std::optional<double> k_flag,
                 std::optional<std::uint64_t> res_flag, std::ostream& out, std::ostream& err,
                 const std::vector<std::string>& args) {
  const MongeManifold& M = c.manifold();
  if (ladder.empty() && c.cfg.q_max) ladder.push_back(*c.cfg.q_max);
  if (ladder.empty()) throw ParseError("need --q-max");
  std::sort(ladder.begin(), ladder.end());
  const double k = k_flag ? *k_flag
                   : c.cfg.k ? *c.cfg.k
                             : std::pow(4.0, static_cast<double>(M.m()) / static_cast<double>(M.d()));
  const std::uint64_t res = res_flag.value_or(c.cfg.grid_resolution.value_or(4096));
  const std::int64_t q_min = c.cfg.q_min.value_or(1);
  const PointFamily fam = enumerate_points(M, c.dependent(), q_min, ladder.back());
  std::vector<CoverageReport> reports;
  for (std::int64_t Q : ladder) {
    CoverageReport r = coverage(build_balls(fam.truncated(Q), k), M.domain(), res);
    r.q_min = q_min;
    r.q_max = Q;
    reports.push_back(r);
  }
  std::ostringstream csv;
  write_coverage_csv(csv, reports);
  emit(c, out, err, csv.str(), "coverage", args);
  return 0;
}

int cmd_boxcount(const Common& c, std::optional<std::int64_t> q_max, std::optional<int> depth_flag,
                 std::optional<int> cantor, std::ostream& out, std::ostream& err,
                 const std::vector<std::string>& args) {
  const int depth = depth_flag.value_or(c.cfg.depth_max.value_or(14));
  ScaleCountTable table;
  if (cantor) {
    if (*cantor < 0 || *cantor > 20) throw HypothesisError({"0 <= cantor depth <= 20"});
    RectSet rects(1);
    std::vector<double> lo{0.0};
    double len = 1.0;
    for (int k = 0; k < *cantor; ++k) {
      std::vector<double> next;
      for (double a : lo) {
        next.push_back(a);
        next.push_back(a + 2.0 * len / 3.0);
      }
      lo = std::move(next);
      len /= 3.0;
    }
    for (double a : lo) {
      const double centre = a + len / 2.0, half = len / 2.0;
      rects.push_back(std::span<const double>(&centre, 1), std::span<const double>(&half, 1));
    }
    table = box_count(rects, DomainBox::unit(1), depth);
    err << "slope " << g(table.slope) << " (ln2/ln3 = " << g(std::log(2.0) / std::log(3.0)) << ")\n";
  } else {
    const std::int64_t Q = q_max ? *q_max : c.cfg.q_max ? *c.cfg.q_max : throw ParseError("need --q-max");
    const MongeManifold& M = c.manifold();
    const DimensionExperiment ex =
        dimension_experiment(M, WeightVector(c.full_tau(), M.d()), {Q}, depth);
    table = ex.probes.back().table;
    err << "slope " << g(table.slope) << (table.saturated ? " (saturated fit)" : "") << ", bound "
        << g(ex.formula_value) << ", k " << g(ex.k) << "\n" << "note: " << ex.caveat << "\n";
  }
  std::ostringstream csv;
  write_scale_csv(csv, table);
  emit(c, out, err, csv.str(), "scale-count", args);
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& dir, std::uint64_t seed, std::ostream& out) {
  acceptance::SuiteOptions opt;
  opt.out_dir = dir;
  opt.seed = seed;
  const auto results = acceptance::run_suite(suite, opt, out);
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  out << results.size() - failed << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted simultaneous approximation on manifolds", "wsa"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker thread cap (0 = OpenMP default)");

  Common common;

  auto* dim = app.add_subcommand("dim", "dimension formulas and hypothesis diagnostics");
  common.add_to(dim, true);
  std::optional<int> n;
  dim->add_option("--n", n, "ambient dimension");
  dim->add_option("--d", common.d, "independent dimension");
  dim->add_option("--m", common.m, "codimension");

  auto* weights = app.add_subcommand("weights", "proof weight vectors");
  common.add_to(weights, true);
  weights->add_option("--d", common.d, "independent dimension");
  weights->add_option("--m", common.m, "codimension");

  auto* order = app.add_subcommand("order", "upper order of approximation functions");
  std::vector<std::string> psi;
  std::uint64_t order_q = 1000000;
  order->add_option("--psi", psi, "per-axis spec: pow:a | powlog:a,b | alt:a,b")->required();
  order->add_option("--q-max", order_q, "top of the q window");

  auto* dirichlet = app.add_subcommand("dirichlet", "threshold Q0, solution search, infinitude sweep");
  common.add_to(dirichlet, false);
  std::vector<std::string> x;
  std::optional<std::uint64_t> Q;
  std::vector<std::uint64_t> ladder;
  std::optional<double> r;
  dirichlet->add_option("--x", x, "point, e.g. sqrt(2)-1 (comma separated)")->delimiter(',');
  dirichlet->add_option("--Q", Q, "budget (default Q0)");
  dirichlet->add_option("--ladder", ladder, "increasing budgets for the sweep")->delimiter(',');
  dirichlet->add_option("--r", r, "override of the boundary distance");

  auto* enumerate = app.add_subcommand("enumerate", "export the rational point family");
  common.add_to(enumerate, false);
  std::optional<std::int64_t> q_min, q_max;
  std::string bound = "full";
  std::uint64_t cap = EnumerationOptions{}.candidate_cap;
  enumerate->add_option("--q-min", q_min, "smallest denominator");
  enumerate->add_option("--q-max", q_max, "largest denominator");
  enumerate->add_option("--bound", bound, "full | halved");
  enumerate->add_option("--cap", cap, "candidate evaluation cap");

  auto* cover = app.add_subcommand("coverage", "grid coverage of the ball family");
  common.add_to(cover, false);
  std::vector<std::int64_t> cover_q;
  std::optional<double> k;
  std::optional<std::uint64_t> res;
  cover->add_option("--q-max", cover_q, "window tops (comma separated)")->delimiter(',');
  cover->add_option("--k", k, "ball radius constant (default 4^{m/d})");
  cover->add_option("--resolution", res, "grid points per axis");

  auto* box = app.add_subcommand("boxcount", "box-counting table of the rectangle family");
  common.add_to(box, true);
  std::optional<std::int64_t> box_q;
  std::optional<int> depth, cantor;
  box->add_option("--q-max", box_q, "largest denominator");
  box->add_option("--depth", depth, "deepest dyadic level");
  box->add_option("--cantor", cantor, "box-count the middle-thirds Cantor family of this depth instead");

  auto* verify = app.add_subcommand("verify", "acceptance suite");
  std::string suite = "all";
  std::string verify_dir = "acceptance-out";
  std::uint64_t seed = acceptance::SuiteOptions{}.seed;
  verify->add_option("--suite", suite, "formulas | dirichlet | oracle | fractal | determinism | all");
  verify->add_option("--out", verify_dir, "report directory");
  verify->add_option("--seed", seed, "sampling seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::parse);
  }

  if (threads > 0) omp_set_num_threads(threads);
  try {
    if (*dim) {
      common.load();
      return cmd_dim(common, n, out, err);
    }
    if (*weights) {
      common.load();
      return cmd_weights(common, out);
    }
    if (*order) return cmd_order(psi, order_q, out);
    if (*dirichlet) {
      common.load();
      return cmd_dirichlet(common, x, Q, ladder, r, out);
    }
    if (*enumerate) {
      common.load();
      return cmd_enumerate(common, q_min, q_max, bound, cap, out, err, args);
    }
    if (*cover) {
      common.load();
      return cmd_coverage(common, cover_q, k, res, out, err, args);
    }
    if (*box) {
      common.load();
      return cmd_boxcount(common, box_q, depth, cantor, out, err, args);
    }
    if (*verify) return cmd_verify(suite, verify_dir, seed, out);
  } catch (const HypothesisError& e) {
    print_violations(err, e);
    return static_cast<int>(e.code());
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::parse);
  }
  return static_cast<int>(ExitCode::parse);
}

}  // namespace wsa::cli
