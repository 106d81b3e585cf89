#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "wsa/benchmarks.hpp"
#include "wsa/dirichlet.hpp"
#include "wsa/enumeration.hpp"
#include "wsa/error.hpp"
#include "wsa/formulas.hpp"
#include "wsa/fractal.hpp"
#include "wsa/report.hpp"
#include "wsa/snap.hpp"

namespace wsa::acceptance {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Context {
  fs::path dir;
  std::uint64_t seed;
  std::ostream& log;
  std::vector<CriterionResult> results;

  void write(const std::string& name, const std::string& content) const {
    write_file((dir / name).string(), content);
  }

  template <class Fn>
  void criterion(int id, const std::string& name, double budget_seconds, Fn&& body) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    const auto t0 = Clock::now();
    try {
      std::ostringstream detail;
      r.pass = body(detail);
      r.detail = detail.str();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (r.seconds > budget_seconds) {
      r.pass = false;
      r.detail += "; over the " + format_double(budget_seconds) + " s budget";
    }
    char head[64];
    std::snprintf(head, sizeof head, "%s %2d ", r.pass ? "PASS" : "FAIL", id);
    char tail[48];
    std::snprintf(tail, sizeof tail, " (%.2f s)", r.seconds);
    log << head << name << ": " << r.detail << tail << "\n";
    log.flush();
    results.push_back(std::move(r));
  }
};

std::string g(double v) { return format_double(v); }

// ---- formulas -------------------------------------------------------------

struct MaxDiff {
  double worst = 0.0;
  void add(double a, double b) { worst = std::max(worst, std::fabs(a - b)); }
};

/// Sorted independent block above the floor, dependent block with sum < 1.
std::vector<double> random_manifold_tau(std::mt19937_64& rng, std::size_t d, std::size_t m) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> dep(m);
  double S = 0.0;
  for (auto& t : dep) {
    t = (0.02 + 0.98 * u(rng)) * 0.95 / static_cast<double>(m);
    S += t;
  }
  const double floor_v = std::max(*std::max_element(dep.begin(), dep.end()), (1.0 - S) / static_cast<double>(d));
  std::vector<double> indep(d);
  for (auto& t : indep) t = floor_v + 1.5 * u(rng);
  std::sort(indep.rbegin(), indep.rend());
  indep.insert(indep.end(), dep.begin(), dep.end());
  return indep;
}

void formulas_suite(Context& ctx) {
  std::ostringstream csv;
  csv << "check,samples,max_abs_diff\n";

  ctx.criterion(1, "formula collapse identities", 1.0, [&](std::ostream& detail) {
    std::mt19937_64 rng(ctx.seed + 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    MaxDiff rj, mb, mp;
    for (int s = 0; s < 1000; ++s) {
      const int n = 1 + static_cast<int>(rng() % 5);
      const double t = 1.0 / n + 3.0 * u(rng);
      rj.add(rynne_dimension(WeightVector::plain(std::vector<double>(static_cast<std::size_t>(n), t))).value,
             jarnik_besicovitch(n, t).value);
    }
    for (int s = 0; s < 1000; ++s) {
      const int n = 2 + static_cast<int>(rng() % 5);
      const int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
      const double t = 1.0 / n + (1.0 / m - 1.0 / n) * 0.999 * u(rng);
      const std::vector<double> tau(static_cast<std::size_t>(n), t);
      mb.add(manifold_lower_bound(WeightVector(tau, static_cast<std::size_t>(n - m)),
                                  static_cast<std::size_t>(n - m), static_cast<std::size_t>(m)).value,
             blvv_simultaneous(n, m, t).value);
    }
    for (int s = 0; s < 1000; ++s) {
      const double t2 = 0.001 + 0.998 * u(rng);
      const double t1 = std::max(t2, 1.0 - t2) + 2.0 * u(rng);
      mp.add(manifold_lower_bound(WeightVector({t1, t2}, 1), 1, 1).value,
             planar_curve_dimension(t1, t2).value);
    }
    csv << "rynne_vs_jarnik_besicovitch,1000," << g(rj.worst) << "\n";
    csv << "manifold_vs_blvv,1000," << g(mb.worst) << "\n";
    csv << "manifold_vs_planar_curve,1000," << g(mp.worst) << "\n";
    detail << "max |diff| " << g(rj.worst) << ", " << g(mb.worst) << ", " << g(mp.worst);
    return std::max({rj.worst, mb.worst, mp.worst}) <= 1e-12;
  });

  ctx.criterion(2, "weight-vector composition (rectangle bound of Rynne weights)", 1.0,
                [&](std::ostream& detail) {
    std::mt19937_64 rng(ctx.seed + 2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    MaxDiff lib, brute;
    // Library path: every tau_i >= 1/n, where the proof weights satisfy a_i >= 1.
    for (int s = 0; s < 1000; ++s) {
      const std::size_t n = 1 + rng() % 6;
      std::vector<double> tau(n);
      for (auto& t : tau) t = 1.0 / static_cast<double>(n) + 2.0 * u(rng);
      std::sort(tau.rbegin(), tau.rend());
      const WeightVector w = WeightVector::plain(tau);
      lib.add(wwx_rectangle_bound(proof_weight_vector_rynne(w)).value, rynne_dimension(w).value);
    }
    // Oracle algebra on the wider set sum(tau) >= 1.
    for (int s = 0; s < 1000; ++s) {
      const std::size_t n = 1 + rng() % 6;
      std::vector<double> tau(n);
      double sum = 0.0;
      for (auto& t : tau) {
        t = 0.01 + 2.0 * u(rng);
        sum += t;
      }
      if (sum < 1.0) {
        for (auto& t : tau) t /= sum * 0.999;
      }
      std::sort(tau.rbegin(), tau.rend());
      std::vector<double> a(n);
      for (std::size_t i = 0; i < n; ++i) a[i] = static_cast<double>(n) * (1.0 + tau[i]) / static_cast<double>(n + 1);
      brute.add(oracle::wwx_brute(a), oracle::rynne_brute(tau));
    }
    csv << "wwx_of_rynne_weights_vs_rynne,1000," << g(lib.worst) << "\n";
    csv << "oracle_wwx_vs_oracle_rynne,1000," << g(brute.worst) << "\n";
    detail << "max |diff| library " << g(lib.worst) << ", oracle " << g(brute.worst);
    return std::max(lib.worst, brute.worst) <= 1e-12;
  });

  ctx.criterion(3, "manifold weight reduction chain", 1.0, [&](std::ostream& detail) {
    std::mt19937_64 rng(ctx.seed + 3);
    MaxDiff lib_vs_bound, chain12, chain23, lib_vs_chain;
    for (int s = 0; s < 1000; ++s) {
      const std::size_t d = 1 + rng() % 3;
      const std::size_t m = 1 + rng() % 3;
      const auto tau = random_manifold_tau(rng, d, m);
      const WeightVector w(tau, d);
      const double bound = manifold_lower_bound(w, d, m).value;
      const double reduced = wwx_rectangle_bound(proof_weight_vector_manifold(w, d, m)).value;
      const auto lines = oracle::section_chain(tau, d, m);
      lib_vs_bound.add(reduced, bound);
      chain12.add(lines.weights, lines.reduced);
      chain23.add(lines.reduced, lines.direct);
      lib_vs_chain.add(bound, lines.direct);
    }
    csv << "weights_reduction_vs_manifold_bound,1000," << g(lib_vs_bound.worst) << "\n";
    csv << "chain_line1_vs_line2,1000," << g(chain12.worst) << "\n";
    csv << "chain_line2_vs_line3,1000," << g(chain23.worst) << "\n";
    csv << "manifold_bound_vs_chain_line3,1000," << g(lib_vs_chain.worst) << "\n";
    detail << "max |diff| " << g(lib_vs_bound.worst) << ", chain " << g(chain12.worst) << " / "
           << g(chain23.worst) << ", vs oracle " << g(lib_vs_chain.worst);
    return std::max({lib_vs_bound.worst, chain12.worst, chain23.worst, lib_vs_chain.worst}) <= 1e-12;
  });

  ctx.write("formulas.csv", csv.str());
}

// ---- dirichlet ------------------------------------------------------------

void dirichlet_suite(Context& ctx) {
  ctx.criterion(4, "Dirichlet existence on 5 benchmarks x 100 points", 120.0, [&](std::ostream& detail) {
    std::ostringstream csv;
    csv << "manifold,point,S,Q0,Q,q\n";
    std::size_t solved = 0, violations = 0, failures = 0;
    std::string first_problem;
    for (const auto& name : benchmark_names()) {
      const MongeManifold M = benchmark_manifold(name);
      std::mt19937_64 rng(ctx.seed + 4);
      std::uniform_real_distribution<double> u(0.25, 0.75);
      for (int pt = 0; pt < 100; ++pt) {
        std::vector<double> xs(M.d());
        for (std::size_t i = 0; i < M.d(); ++i) xs[i] = M.domain().lower()[i] + M.domain().width(i) * u(rng);
        const auto x = snap_all(xs);
        for (double S : {0.3, 0.5, 0.7}) {
          const WeightVector tau = WeightVector::dependent_only(
              std::vector<double>(M.m(), S / static_cast<double>(M.m())));
          const std::uint64_t Q0 = compute_Q0(M, tau, x);
          for (std::uint64_t factor : {1, 2, 10}) {
            const std::uint64_t Q = Q0 * factor;
            try {
              const DirichletSolution sol = solve_dirichlet(M, tau, x, Q);
              const auto broken = verify_solution(sol, M, tau, x);
              if (!broken.empty()) {
                ++failures;
                if (first_problem.empty()) first_problem = name + ": " + broken.front();
              } else {
                ++solved;
              }
              csv << name << "," << pt << "," << g(S) << "," << Q0 << "," << Q << "," << sol.point.q << "\n";
            } catch (const TheoremViolation& e) {
              ++violations;
              if (first_problem.empty()) first_problem = e.what();
              csv << name << "," << pt << "," << g(S) << "," << Q0 << "," << Q << ",none\n";
            }
          }
        }
      }
    }
    ctx.write("dirichlet.csv", csv.str());
    detail << solved << " solved, " << violations << " theorem violations, " << failures
           << " invariant failures";
    if (!first_problem.empty()) detail << " (first: " << first_problem << ")";
    return violations == 0 && failures == 0 && solved == 4500;
  });

  ctx.criterion(6, "threshold worked values", 10.0, [&](std::ostream& detail) {
    const MongeManifold M = benchmark_manifold("parabola");
    const WeightVector tau = WeightVector::dependent_only({0.5});
    const std::vector<SnappedReal> half{snap_expression("0.5")};
    const std::vector<SnappedReal> root{snap_expression("sqrt(2)-1")};
    const std::uint64_t a = compute_Q0(M, tau, half);
    const std::uint64_t b = compute_Q0(M, tau, root);
    ctx.write("q0.csv", "x,Q0\n0.5," + std::to_string(a) + "\nsqrt(2)-1," + std::to_string(b) + "\n");
    detail << "Q0(x=0.5) = " << a << " (want 65), Q0(x=sqrt(2)-1) = " << b << " (want 94)";
    return a == 65 && b == 94;
  });
}

// ---- oracle ---------------------------------------------------------------

std::vector<RationalPoint> as_points(const PointFamily& f) { return f.members(); }

void oracle_suite(Context& ctx) {
  ctx.criterion(5, "fast paths equal exhaustive oracles (Q <= 200)", 60.0, [&](std::ostream& detail) {
    std::ostringstream csv;
    csv << "manifold,case,Q,tau_dep,fast_count,oracle_count,equal\n";
    std::size_t cases = 0, mismatches = 0;
    std::mt19937_64 rng(ctx.seed + 5);
    std::uniform_real_distribution<double> u(0.1, 0.9);

    for (const std::string name : {"parabola", "paraboloid"}) {
      const MongeManifold M = benchmark_manifold(name);
      std::vector<std::vector<SnappedReal>> points;
      if (M.d() == 1) {
        points.push_back({snap_expression("sqrt(2)-1")});
      } else {
        points.push_back({snap_expression("sqrt(2)-1"), snap_expression("sqrt(3)-1")});
      }
      for (int k = 0; k < 5; ++k) {
        std::vector<double> xs(M.d());
        for (auto& v : xs) v = u(rng);
        points.push_back(snap_all(xs));
      }
      for (std::size_t pi = 0; pi < points.size(); ++pi) {
        const auto& x = points[pi];
        std::vector<Rational> xe;
        for (const auto& v : x) xe.push_back(v.exact());
        for (double t : {0.3, 0.5, 0.7}) {
          const WeightVector tau = WeightVector::dependent_only({t});
          for (std::uint64_t Q : {50u, 200u}) {
            const auto fast = dirichlet_solutions(M, tau, x, Q);
            const auto slow = oracle::dirichlet_solutions(M, {t}, xe, Q);
            const auto first = first_dirichlet_solution(M, tau, x, Q);
            const bool first_ok = first ? (!slow.empty() && first->point == slow.front()) : slow.empty();
            const bool equal = fast == slow && first_ok;
            ++cases;
            mismatches += equal ? 0 : 1;
            csv << name << ",solve x" << pi << "," << Q << "," << g(t) << "," << fast.size() << ","
                << slow.size() << "," << (equal ? 1 : 0) << "\n";
          }
        }
      }
      // The d = 2 oracle costs ~(Q^2) exact evaluations per run; one tau there.
      const std::vector<double> enum_taus = M.d() == 1 ? std::vector<double>{0.3, 0.5, 0.7}
                                                       : std::vector<double>{0.5};
      for (double t : enum_taus) {
        for (int c : {1, 2}) {
          EnumerationOptions opt;
          opt.bound = c == 1 ? DependentBound::full : DependentBound::halved;
          const auto fast = as_points(enumerate_points(M, WeightVector::dependent_only({t}), 1, 200, opt));
          const auto slow = oracle::enumerate(M, {t}, 1, 200, c);
          const bool equal = fast == slow;
          ++cases;
          mismatches += equal ? 0 : 1;
          csv << name << ",enumerate " << (c == 1 ? "full" : "halved") << ",200," << g(t) << ","
              << fast.size() << "," << slow.size() << "," << (equal ? 1 : 0) << "\n";
        }
      }
    }
    ctx.write("oracle.csv", csv.str());
    detail << cases << " cases, " << mismatches << " mismatches";
    return mismatches == 0;
  });
}

// ---- fractal --------------------------------------------------------------

void fractal_suite(Context& ctx) {
  ctx.criterion(7, "box-count calibration (Cantor set, full box)", 30.0, [&](std::ostream& detail) {
    RectSet cantor(1);
    for (const auto& [lo, hi] : oracle::cantor_intervals(12)) {
      const double c = to_double((lo + hi) / 2);
      const double h = to_double((hi - lo) / 2);
      cantor.push_back(std::span<const double>(&c, 1), std::span<const double>(&h, 1));
    }
    const int cantor_depth = 18;
    const ScaleCountTable ct = box_count(cantor, DomainBox::unit(1), cantor_depth);
    std::ostringstream out;
    write_scale_csv(out, ct);
    ctx.write("cantor_scale.csv", out.str());
    const double target = std::log(2.0) / std::log(3.0);

    bool full_ok = true;
    std::ostringstream full_detail;
    for (std::size_t d : {1u, 2u}) {
      RectSet full(d);
      const std::vector<double> c(d, 0.5), h(d, 0.5);
      full.push_back(c, h);
      const int depth = d == 1 ? 16 : 10;
      const ScaleCountTable t = box_count(full, DomainBox::unit(d), depth);
      std::ostringstream o;
      write_scale_csv(o, t);
      ctx.write("full_box_d" + std::to_string(d) + "_scale.csv", o.str());
      full_ok = full_ok && std::fabs(t.slope - static_cast<double>(d)) <= 0.02;
      full_detail << ", full box d=" << d << " slope " << g(t.slope);
    }
    detail << "Cantor slope " << g(ct.slope) << " (target " << g(target) << ", fit depths "
           << ct.fit_lo << ".." << ct.fit_hi << ")" << full_detail.str();
    return std::fabs(ct.slope - target) <= 0.05 && full_ok;
  });

  ctx.criterion(8, "coverage growth on the parabola", 120.0, [&](std::ostream& detail) {
    const MongeManifold M = benchmark_manifold("parabola");
    const WeightVector tau = WeightVector::dependent_only({0.5});
    const PointFamily fam = enumerate_points(M, tau, 1, 10000);
    // Radius constant of the q-only Dirichlet bound: 4^{m/d}.
    const double k = 4.0;
    std::vector<CoverageReport> reports, probe;
    for (std::int64_t Q : {100, 1000, 10000}) {
      const PointFamily part = fam.truncated(Q);
      CoverageReport r = coverage(build_balls(part, k), M.domain(), 1u << 16);
      r.q_min = 1;
      r.q_max = Q;
      reports.push_back(r);
      CoverageReport s = coverage(build_balls(part, 0.05), M.domain(), 1u << 16);
      s.q_min = 1;
      s.q_max = Q;
      probe.push_back(s);
    }
    std::ostringstream a, b;
    write_coverage_csv(a, reports);
    write_coverage_csv(b, probe);
    ctx.write("coverage.csv", a.str());
    ctx.write("coverage_small_k.csv", b.str());
    bool monotone = true;
    for (std::size_t i = 1; i < reports.size(); ++i) monotone = monotone && reports[i].fraction >= reports[i - 1].fraction;
    detail << "k=4 fractions " << g(reports[0].fraction) << ", " << g(reports[1].fraction) << ", "
           << g(reports[2].fraction) << "; k=0.05 fractions " << g(probe[0].fraction) << ", "
           << g(probe[1].fraction) << ", " << g(probe[2].fraction);
    return monotone && reports.back().fraction >= 0.95;
  });

  ctx.criterion(9, "dimension probe on the parabola", 300.0, [&](std::ostream& detail) {
    const MongeManifold M = benchmark_manifold("parabola");
    const WeightVector tau({0.8, 0.3}, 1);
    const DimensionExperiment ex = dimension_experiment(M, tau, {100, 1000, 10000}, 14);
    std::ostringstream summary;
    summary << "Q,rectangles,slope,residual,saturated,formula\n";
    for (const auto& p : ex.probes) {
      std::ostringstream o;
      write_scale_csv(o, p.table);
      ctx.write("dimension_Q" + std::to_string(p.Q) + "_scale.csv", o.str());
      summary << p.Q << "," << p.rectangles << "," << g(p.table.slope) << "," << g(p.table.residual)
              << "," << (p.table.saturated ? 1 : 0) << "," << g(ex.formula_value) << "\n";
    }
    summary << "# " << ex.caveat << "\n";
    ctx.write("dimension.csv", summary.str());
    const auto& last = ex.probes.back();
    detail << "slope " << g(last.table.slope) << (last.table.saturated ? " (saturated fit)" : "")
           << " vs bound " << g(ex.formula_value) << " - 0.15; " << ex.caveat;
    return last.table.slope >= ex.formula_value - 0.15;
  });
}

// ---- determinism ----------------------------------------------------------

using SuiteFn = void (*)(Context&);

const std::vector<std::pair<std::string, SuiteFn>>& compute_suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"formulas", formulas_suite},
      {"dirichlet", dirichlet_suite},
      {"oracle", oracle_suite},
      {"fractal", fractal_suite},
  };
  return suites;
}

void run_into(const fs::path& root, const std::string& name, SuiteFn fn, std::uint64_t seed,
              std::ostream& log, std::vector<CriterionResult>& results) {
  Context ctx{root / name, seed, log, {}};
  fs::create_directories(ctx.dir);
  fn(ctx);
  results.insert(results.end(), ctx.results.begin(), ctx.results.end());
}

std::vector<std::string> differing_files(const fs::path& a, const fs::path& b) {
  std::vector<std::string> out;
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (e.is_regular_file()) files.push_back(fs::relative(e.path(), a));
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    if (!fs::exists(b / f) || slurp(a / f) != slurp(b / f)) out.push_back(f.string());
  }
  for (const auto& e : fs::recursive_directory_iterator(b)) {
    if (e.is_regular_file() && !fs::exists(a / fs::relative(e.path(), b))) {
      out.push_back(fs::relative(e.path(), b).string());
    }
  }
  return out;
}

void determinism(const fs::path& first_root, const fs::path& out_root, std::uint64_t seed,
                 std::ostream& log, std::vector<CriterionResult>& results, bool first_done) {
  Context ctx{out_root, seed, log, {}};
  ctx.criterion(10, "byte-identical reports on rerun", 1200.0, [&](std::ostream& detail) {
    std::ostringstream quiet;
    std::vector<CriterionResult> ignored;
    if (!first_done) {
      for (const auto& [name, fn] : compute_suites()) run_into(first_root, name, fn, seed, quiet, ignored);
    }
    const fs::path second = out_root / "rerun";
    for (const auto& [name, fn] : compute_suites()) run_into(second, name, fn, seed, quiet, ignored);
    std::size_t files = 0;
    std::vector<std::string> diffs;
    for (const auto& [name, fn] : compute_suites()) {
      for (const auto& e : fs::recursive_directory_iterator(first_root / name)) files += e.is_regular_file();
      for (auto& f : differing_files(first_root / name, second / name)) diffs.push_back(name + "/" + f);
    }
    detail << files << " files compared, " << diffs.size() << " differ";
    if (!diffs.empty()) detail << " (first: " << diffs.front() << ")";
    return diffs.empty() && files > 0;
  });
  results.insert(results.end(), ctx.results.begin(), ctx.results.end());
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"formulas", "dirichlet", "oracle",
                                                 "fractal",  "determinism", "all"};
  return names;
}

std::vector<CriterionResult> run_suite(std::string_view suite, const SuiteOptions& options,
                                       std::ostream& log) {
  const fs::path root(options.out_dir);
  std::vector<CriterionResult> results;
  for (const auto& [name, fn] : compute_suites()) {
    if (suite == name) {
      run_into(root, name, fn, options.seed, log, results);
      return results;
    }
  }
  if (suite == "determinism") {
    determinism(root / "first", root / "determinism", options.seed, log, results, false);
    return results;
  }
  if (suite == "all") {
    for (const auto& [name, fn] : compute_suites()) run_into(root, name, fn, options.seed, log, results);
    determinism(root, root / "determinism", options.seed, log, results, true);
    std::sort(results.begin(), results.end(),
              [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });
    return results;
  }
  throw ParseError("unknown suite '" + std::string(suite) + "'");
}

}  // namespace wsa::acceptance
