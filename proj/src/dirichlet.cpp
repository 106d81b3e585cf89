#include "wsa/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "wsa/bounds.hpp"
#include "wsa/error.hpp"
#include "lattice_detail.hpp"

namespace wsa {

namespace {

constexpr std::uint64_t kMaxBudget = std::uint64_t{1} << 62;

double dependent_sum(const WeightVector& tau_dep) {
  double s = 0.0;
  for (double t : tau_dep.entries()) s += t;
  return s;
}

void check_shapes(const MongeManifold& manifold, const WeightVector& tau_dep,
                  std::span<const SnappedReal> x) {
  if (x.size() != manifold.d()) {
    throw std::invalid_argument("dirichlet: x has the wrong dimension");
  }
  if (tau_dep.size() != manifold.m()) {
    throw std::invalid_argument("dirichlet: dependent weight vector length differs from m");
  }
}

PowerBound independent_bound(std::size_t d, std::size_t m, const WeightVector& tau_dep,
                             std::uint64_t base) {
  PowerBound b;
  b.two_num = static_cast<std::int64_t>(2 * m);
  b.two_den = static_cast<std::int64_t>(d);
  b.base = base;
  b.constant = -1;
  b.tau_sign = 1;
  b.taus.assign(tau_dep.entries().begin(), tau_dep.entries().end());
  b.divisor = static_cast<std::int64_t>(d);
  return b;
}


/// Sign of p - q*bound, exact.
int compare_scaled(std::int64_t p, std::int64_t q, double bound) {
  const long double qq = static_cast<long double>(q);
  const long double prod = qq * bound;
  const long double err = std::fma(qq, static_cast<long double>(bound), -prod);
  const long double head = static_cast<long double>(p) - prod;
  if (std::fabs(head) > 4.0L * std::fabs(err) + 1e-30L) return head > 0 ? 1 : -1;
  const Rational diff = Rational(static_cast<long>(p)) - Rational(static_cast<long>(q)) * to_rational(bound);
  return sgn(diff);
}

bool lattice_point_in_box(std::span<const std::int64_t> p, std::int64_t q, const DomainBox& box) {
  for (std::size_t i = 0; i < box.dim(); ++i) {
    if (compare_scaled(p[i], q, box.lower()[i]) < 0) return false;
    if (compare_scaled(p[i], q, box.upper()[i]) > 0) return false;
  }
  return true;
}

Rational abs_rational(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Everything a q-scan needs, computed once per (manifold, tau, x, Q).
struct Setup {
  const MongeManifold* manifold = nullptr;
  std::size_t d = 0;
  std::size_t m = 0;
  std::vector<double> tau;
  std::vector<SnappedReal> x;
  std::vector<Rational> x_exact;
  std::vector<LatticeEvaluator> evaluators;
  PowerBound indep;
  long double indep_approx = 0.0L;
  std::uint64_t Q = 0;

  Setup(const MongeManifold& M, const WeightVector& tau_dep, std::span<const SnappedReal> xs,
        std::uint64_t budget)
      : manifold(&M), d(M.d()), m(M.m()), tau(tau_dep.entries().begin(), tau_dep.entries().end()),
        x(xs.begin(), xs.end()), Q(budget) {
    for (const auto& xi : x) x_exact.push_back(xi.exact());
    for (const auto& f : M.components()) evaluators.emplace_back(f);
    indep = independent_bound(d, m, tau_dep, budget);
    indep_approx = indep.approx();
  }
};

struct Scratch {
  std::vector<std::vector<std::int64_t>> axis;       // accepted p_i per axis
  std::vector<std::vector<std::int64_t>> dependent;  // accepted p_{d+j}
  std::vector<std::int64_t> p;
  std::vector<std::size_t> odometer;

  explicit Scratch(const Setup& s)
      : axis(s.d), dependent(s.m), p(s.d + s.m), odometer(s.d) {}
};

/// Integers p with |q x_i - p| < R, ascending.
void axis_candidates(const Setup& s, std::size_t i, std::int64_t q, std::vector<std::int64_t>& out) {
  out.clear();
  const long double qq = static_cast<long double>(q);
  const long double prod = qq * s.x[i].hi;
  const long double tail = std::fma(qq, s.x[i].hi, -prod) + qq * s.x[i].lo;
  const long double v = prod + tail;
  const auto lo = static_cast<std::int64_t>(std::floor(v - s.indep_approx)) - 1;
  const auto hi = static_cast<std::int64_t>(std::ceil(v + s.indep_approx)) + 1;
  for (std::int64_t p = lo; p <= hi; ++p) {
    const long double diff = std::fabs((prod - static_cast<long double>(p)) + tail);
    const bool ok = strictly_below(
        diff,
        [&] { return abs_rational(Rational(static_cast<long>(q)) * s.x_exact[i] - Rational(static_cast<long>(p))); },
        s.indep_approx, s.indep);
    if (ok) out.push_back(p);
  }
}

/// Tests one q. With `all` null, stops at the first accepted point and
/// writes it to `first`; otherwise appends every accepted point.
bool try_q(const Setup& s, std::int64_t q, Scratch& sc, RationalPoint* first,
           std::vector<RationalPoint>* all) {
  for (std::size_t i = 0; i < s.d; ++i) {
    axis_candidates(s, i, q, sc.axis[i]);
    if (sc.axis[i].empty()) return false;
  }
  std::vector<PowerBound> bounds;
  std::vector<long double> bound_approx;
  bool found = false;
  std::fill(sc.odometer.begin(), sc.odometer.end(), 0);
  for (;;) {
    for (std::size_t i = 0; i < s.d; ++i) sc.p[i] = sc.axis[i][sc.odometer[i]];
    const std::span<const std::int64_t> p_indep(sc.p.data(), s.d);
    if (lattice_point_in_box(p_indep, q, s.manifold->domain())) {
      if (bounds.empty()) {
        for (std::size_t j = 0; j < s.m; ++j) {
          bounds.push_back(detail::dependent_bound(s.tau[j], static_cast<std::uint64_t>(q), true));
          bound_approx.push_back(bounds.back().approx());
        }
      }
      bool every = true;
      for (std::size_t j = 0; j < s.m && every; ++j) {
        detail::dependent_candidates(s.evaluators[j], p_indep, q, bound_approx[j], bounds[j],
                                     sc.dependent[j]);
        every = !sc.dependent[j].empty();
      }
      if (every) {
        // Cartesian product of the dependent choices, lexicographic.
        std::vector<std::size_t> dep_idx(s.m, 0);
        for (;;) {
          for (std::size_t j = 0; j < s.m; ++j) sc.p[s.d + j] = sc.dependent[j][dep_idx[j]];
          found = true;
          if (all == nullptr) {
            *first = RationalPoint(sc.p, q);
            return true;
          }
          all->emplace_back(sc.p, q);
          std::size_t k = s.m;
          while (k > 0) {
            --k;
            if (++dep_idx[k] < sc.dependent[k].size()) break;
            dep_idx[k] = 0;
            if (k == 0) { k = s.m + 1; break; }
          }
          if (k == s.m + 1) break;
        }
      }
    }
    std::size_t k = s.d;
    bool done = true;
    while (k > 0) {
      --k;
      if (++sc.odometer[k] < sc.axis[k].size()) {
        done = false;
        break;
      }
      sc.odometer[k] = 0;
    }
    if (done) break;
  }
  return found;
}

DirichletSolution describe(const MongeManifold& manifold, std::span<const SnappedReal> x,
                           RationalPoint point, std::uint64_t Q) {
  DirichletSolution out;
  const std::size_t d = manifold.d();
  const Rational q(static_cast<long>(point.q));
  std::vector<Rational> centre(d);
  for (std::size_t i = 0; i < d; ++i) {
    centre[i] = Rational(static_cast<long>(point.p[i])) / q;
    centre[i].canonicalize();
    out.independent_errors.push_back(to_double(abs_rational(x[i].exact() - centre[i])));
  }
  for (std::size_t j = 0; j < manifold.m(); ++j) {
    Rational target = Rational(static_cast<long>(point.p[d + j])) / q;
    target.canonicalize();
    out.dependent_errors.push_back(
        to_double(abs_rational(manifold.component(j).evaluate(centre) - target)));
  }
  out.point = std::move(point);
  out.Q = Q;
  return out;
}

void check_budget(std::uint64_t Q) {
  if (Q < 1) throw HypothesisError({"Q >= 1"});
  if (Q > kMaxBudget) throw CapExceeded("Q exceeds 2^62");
}

}  // namespace

ManifoldConstants manifold_constants(const MongeManifold& manifold) {
  ManifoldConstants out;
  out.method = ManifoldConstants::Method::interval_bound;
  out.C_exact = 0;
  out.D_exact = 0;
  const auto& box = manifold.domain();
  for (const auto& f : manifold.components()) {
    for (std::size_t i = 0; i < manifold.d(); ++i) {
      const Polynomial df = f.derivative(i);
      const auto [dlo, dhi] = df.range_enclosure(box);
      out.D_exact = std::max({out.D_exact, abs_rational(dlo), abs_rational(dhi)});
      for (std::size_t k = 0; k < manifold.d(); ++k) {
        const auto [clo, chi] = df.derivative(k).range_enclosure(box);
        out.C_exact = std::max({out.C_exact, abs_rational(clo), abs_rational(chi)});
      }
    }
  }
  out.C = to_double_up(out.C_exact);
  out.D = to_double_up(out.D_exact);
  return out;
}

ManifoldConstants manifold_constants_sampled(const MongeManifold& manifold,
                                             std::size_t points_per_axis) {
  if (points_per_axis < 2) throw std::invalid_argument("grid sampling needs >= 2 points per axis");
  ManifoldConstants out;
  out.method = ManifoldConstants::Method::grid_sample;
  out.resolution = points_per_axis;
  const std::size_t d = manifold.d();
  const auto& box = manifold.domain();
  std::vector<Polynomial> first, second;
  for (const auto& f : manifold.components()) {
    for (std::size_t i = 0; i < d; ++i) {
      first.push_back(f.derivative(i));
      for (std::size_t k = 0; k < d; ++k) second.push_back(first.back().derivative(k));
    }
  }
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> pt(d);
  for (;;) {
    for (std::size_t i = 0; i < d; ++i) {
      pt[i] = box.lower()[i] + box.width(i) * static_cast<double>(idx[i]) /
                                   static_cast<double>(points_per_axis - 1);
    }
    for (const auto& g : first) out.D = std::max(out.D, std::fabs(g.evaluate(std::span<const double>(pt))));
    for (const auto& g : second) out.C = std::max(out.C, std::fabs(g.evaluate(std::span<const double>(pt))));
    std::size_t k = d;
    bool done = true;
    while (k > 0) {
      --k;
      if (++idx[k] < points_per_axis) { done = false; break; }
      idx[k] = 0;
    }
    if (done) break;
  }
  out.C_exact = Rational(out.C);
  out.D_exact = Rational(out.D);
  return out;
}

std::uint64_t compute_Q0(const MongeManifold& manifold, const WeightVector& tau_dep,
                         std::span<const SnappedReal> x, std::optional<double> r_override) {
  check_shapes(manifold, tau_dep, x);
  const std::size_t d = manifold.d();
  const std::size_t m = manifold.m();
  const double S = dependent_sum(tau_dep);
  Violations v;
  v.check(S < 1.0, "m * tilde-tau < 1");
  Rational r;
  if (r_override) {
    v.check(*r_override > 0.0 && std::isfinite(*r_override), "r override > 0");
    r = to_rational(*r_override);
  } else {
    const auto& box = manifold.domain();
    bool first = true;
    for (std::size_t i = 0; i < d; ++i) {
      const Rational xi = x[i].exact();
      const Rational a = xi - to_rational(box.lower()[i]);
      const Rational b = to_rational(box.upper()[i]) - xi;
      const Rational c = std::min(a, b);
      if (first || c < r) r = c;
      first = false;
    }
    v.check(r > 0, "x in the domain interior (r > 0)");
  }
  v.throw_if_any();

  const ManifoldConstants constants = manifold_constants(manifold);
  MpReal threshold;
  mpfr_set_ui(threshold.get(), 1, MPFR_RNDN);
  MpReal tmp;
  mpfr_set_q(tmp.get(), r.get_mpq_t(), MPFR_RNDN);
  mpfr_min(threshold.get(), threshold.get(), tmp.get(), MPFR_RNDN);
  if (constants.C_exact > 0) {
    Rational curv = Rational(1) / (Rational(2) * constants.C_exact *
                                   Rational(static_cast<long>(d * d)));
    mpfr_set_q(tmp.get(), curv.get_mpq_t(), MPFR_RNDN);
    mpfr_sqrt(tmp.get(), tmp.get(), MPFR_RNDN);
    mpfr_min(threshold.get(), threshold.get(), tmp.get(), MPFR_RNDN);
  }

  auto admissible = [&](std::uint64_t Q) {
    MpReal lhs;
    independent_bound(d, m, tau_dep, Q).exact(lhs);
    return mpfr_cmp(lhs.get(), threshold.get()) < 0;
  };

  const long double t = mpfr_get_ld(threshold.get(), MPFR_RNDN);
  const long double two = std::exp2(2.0L * m / static_cast<long double>(d));
  const long double estimate =
      std::pow(two / t, static_cast<long double>(d) / (1.0L - static_cast<long double>(S)));
  if (!(estimate < static_cast<long double>(kMaxBudget))) {
    std::ostringstream msg;
    msg << "Q0 estimate " << static_cast<double>(estimate) << " exceeds 2^62";
    throw CapExceeded(msg.str());
  }
  std::uint64_t Q = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(estimate)));
  while (Q > 1 && admissible(Q - 1)) --Q;
  while (!admissible(Q)) ++Q;
  return Q;
}

std::optional<DirichletSolution> first_dirichlet_solution(const MongeManifold& manifold,
                                                          const WeightVector& tau_dep,
                                                          std::span<const SnappedReal> x,
                                                          std::uint64_t Q) {
  check_shapes(manifold, tau_dep, x);
  check_budget(Q);
  const Setup setup(manifold, tau_dep, x, Q);
  const auto budget = static_cast<std::int64_t>(Q);
  std::int64_t next = 1;
  std::int64_t block = 4096;
  while (next <= budget) {
    const std::int64_t end = std::min(budget, next + block - 1);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
#pragma omp parallel
    {
      Scratch scratch(setup);
      RationalPoint ignored;
#pragma omp for schedule(static) reduction(min : best)
      for (std::int64_t q = next; q <= end; ++q) {
        if (q < best && try_q(setup, q, scratch, &ignored, nullptr)) best = std::min(best, q);
      }
    }
    if (best != std::numeric_limits<std::int64_t>::max()) {
      Scratch scratch(setup);
      RationalPoint point;
      try_q(setup, best, scratch, &point, nullptr);
      return describe(manifold, x, std::move(point), Q);
    }
    next = end + 1;
    block = std::min<std::int64_t>(block * 2, std::int64_t{1} << 22);
  }
  return std::nullopt;
}

std::vector<RationalPoint> dirichlet_solutions(const MongeManifold& manifold,
                                               const WeightVector& tau_dep,
                                               std::span<const SnappedReal> x,
                                               std::uint64_t Q) {
  check_shapes(manifold, tau_dep, x);
  check_budget(Q);
  const Setup setup(manifold, tau_dep, x, Q);
  const auto budget = static_cast<std::int64_t>(Q);
  const std::int64_t chunk = 2048;
  const std::int64_t chunks = (budget + chunk - 1) / chunk;
  std::vector<std::vector<RationalPoint>> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel
  {
    Scratch scratch(setup);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::int64_t lo = c * chunk + 1;
      const std::int64_t hi = std::min(budget, lo + chunk - 1);
      auto& out = parts[static_cast<std::size_t>(c)];
      for (std::int64_t q = lo; q <= hi; ++q) try_q(setup, q, scratch, nullptr, &out);
    }
  }
  std::vector<RationalPoint> all;
  for (auto& part : parts) all.insert(all.end(), part.begin(), part.end());
  return all;
}

DirichletSolution solve_dirichlet(const MongeManifold& manifold, const WeightVector& tau_dep,
                                  std::span<const SnappedReal> x, std::uint64_t Q) {
  const std::uint64_t Q0 = compute_Q0(manifold, tau_dep, x);
  if (Q < Q0) {
    std::ostringstream msg;
    msg << "Q >= Q0 (Q = " << Q << ", Q0 = " << Q0 << ")";
    throw HypothesisError({msg.str()});
  }
  auto found = first_dirichlet_solution(manifold, tau_dep, x, Q);
  if (!found) {
    std::ostringstream msg;
    msg << "no solution with q <= " << Q << " although Q >= Q0 = " << Q0
        << " on manifold '" << manifold.name() << "'";
    throw TheoremViolation(msg.str());
  }
  return *found;
}

SweepResult infinitude_sweep(const MongeManifold& manifold, const WeightVector& tau_dep,
                             std::span<const SnappedReal> x,
                             std::span<const std::uint64_t> Q_ladder) {
  if (Q_ladder.empty()) throw std::invalid_argument("infinitude sweep: empty ladder");
  for (std::size_t k = 1; k < Q_ladder.size(); ++k) {
    if (Q_ladder[k] <= Q_ladder[k - 1]) throw HypothesisError({"Q ladder strictly increasing"});
  }
  const std::size_t d = manifold.d();
  SweepResult out;
  std::set<std::int64_t> seen;
  for (std::uint64_t Q : Q_ladder) {
    DirichletSolution sol = solve_dirichlet(manifold, tau_dep, x, Q);
    const PowerBound q_only = independent_bound(d, manifold.m(), tau_dep,
                                                static_cast<std::uint64_t>(sol.point.q));
    for (std::size_t i = 0; i < d; ++i) {
      const Rational lhs = abs_rational(Rational(static_cast<long>(sol.point.q)) * x[i].exact() -
                                        Rational(static_cast<long>(sol.point.p[i])));
      if (!strictly_below_exact(lhs, q_only)) {
        throw TheoremViolation("solution for Q = " + std::to_string(Q) +
                               " fails the q-only bound on axis " + std::to_string(i + 1));
      }
    }
    seen.insert(sol.point.q);
    out.solutions.push_back(std::move(sol));
  }
  out.distinct_q = seen.size();
  if (Q_ladder.size() >= 2 && out.distinct_q == 1) {
    throw TheoremViolation("every rung of the Q ladder returned q = " +
                           std::to_string(*seen.begin()) +
                           "; x behaves like a rational point");
  }
  return out;
}

std::vector<std::string> verify_solution(const DirichletSolution& solution,
                                         const MongeManifold& manifold,
                                         const WeightVector& tau_dep,
                                         std::span<const SnappedReal> x) {
  check_shapes(manifold, tau_dep, x);
  Violations v;
  const auto& pt = solution.point;
  const std::size_t d = manifold.d();
  const std::size_t m = manifold.m();
  v.check(pt.q >= 1, "q >= 1");
  v.check(static_cast<std::uint64_t>(pt.q) <= solution.Q, "q <= Q");
  v.check(pt.p.size() == d + m, "p has length n");
  if (!v.empty()) return v.names();
  const Rational q(static_cast<long>(pt.q));
  std::vector<Rational> centre(d);
  for (std::size_t i = 0; i < d; ++i) {
    centre[i] = Rational(static_cast<long>(pt.p[i])) / q;
    centre[i].canonicalize();
    v.check(centre[i] >= to_rational(manifold.domain().lower()[i]) &&
                centre[i] <= to_rational(manifold.domain().upper()[i]),
            "p_" + std::to_string(i + 1) + "/q in domain");
  }
  const PowerBound indep = independent_bound(d, m, tau_dep, solution.Q);
  for (std::size_t i = 0; i < d; ++i) {
    const Rational lhs = abs_rational(q * x[i].exact() - Rational(static_cast<long>(pt.p[i])));
    v.check(strictly_below_exact(lhs, indep), "independent bound on axis " + std::to_string(i + 1));
  }
  for (std::size_t j = 0; j < m; ++j) {
    const Rational lhs = abs_rational(q * manifold.component(j).evaluate(centre) -
                                      Rational(static_cast<long>(pt.p[d + j])));
    v.check(strictly_below_exact(lhs, detail::dependent_bound(tau_dep[j], static_cast<std::uint64_t>(pt.q), true)),
            "dependent bound on component " + std::to_string(j + 1));
  }
  return v.names();
}

namespace reference {

namespace {

/// All accepted points at one q, decided entirely in exact arithmetic.
std::vector<RationalPoint> accepted_at(const MongeManifold& manifold, const WeightVector& tau_dep,
                                       const std::vector<Rational>& x, const PowerBound& indep,
                                       std::int64_t q) {
  const std::size_t d = manifold.d();
  const std::size_t m = manifold.m();
  const Rational qr(static_cast<long>(q));
  const auto reach = static_cast<long>(std::ceil(static_cast<double>(indep.approx()))) + 1;
  std::vector<std::vector<std::int64_t>> axis(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Rational v = qr * x[i];
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    for (long k = -reach; k <= reach + 1; ++k) {
      const Integer p = fl + k;
      const Rational centre = Rational(p) / qr;
      if (centre < to_rational(manifold.domain().lower()[i]) ||
          centre > to_rational(manifold.domain().upper()[i])) {
        continue;
      }
      if (strictly_below_exact(abs_rational(v - Rational(p)), indep)) {
        axis[i].push_back(p.get_si());
      }
    }
    if (axis[i].empty()) return {};
  }
  std::vector<RationalPoint> out;
  std::vector<std::size_t> idx(d, 0);
  for (;;) {
    std::vector<Rational> centre(d);
    std::vector<std::int64_t> p(d + m);
    for (std::size_t i = 0; i < d; ++i) {
      p[i] = axis[i][idx[i]];
      centre[i] = Rational(static_cast<long>(p[i])) / qr;
      centre[i].canonicalize();
    }
    std::vector<std::vector<std::int64_t>> dep(m);
    bool every = true;
    for (std::size_t j = 0; j < m && every; ++j) {
      const Rational v = qr * manifold.component(j).evaluate(centre);
      Integer fl;
      mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
      for (long k = -1; k <= 2; ++k) {
        const Integer c = fl + k;
        if (strictly_below_exact(abs_rational(v - Rational(c)),
                                 detail::dependent_bound(tau_dep[j], static_cast<std::uint64_t>(q), true))) {
          dep[j].push_back(c.get_si());
        }
      }
      every = !dep[j].empty();
    }
    if (every) {
      std::vector<std::size_t> di(m, 0);
      for (;;) {
        for (std::size_t j = 0; j < m; ++j) p[d + j] = dep[j][di[j]];
        out.emplace_back(p, q);
        std::size_t k = m;
        bool done = true;
        while (k > 0) {
          --k;
          if (++di[k] < dep[k].size()) { done = false; break; }
          di[k] = 0;
        }
        if (done) break;
      }
    }
    std::size_t k = d;
    bool done = true;
    while (k > 0) {
      --k;
      if (++idx[k] < axis[k].size()) { done = false; break; }
      idx[k] = 0;
    }
    if (done) break;
  }
  return out;
}

}  // namespace

std::optional<DirichletSolution> first_dirichlet_solution(const MongeManifold& manifold,
                                                          const WeightVector& tau_dep,
                                                          std::span<const SnappedReal> x,
                                                          std::uint64_t Q) {
  check_shapes(manifold, tau_dep, x);
  check_budget(Q);
  std::vector<Rational> xe;
  for (const auto& xi : x) xe.push_back(xi.exact());
  const PowerBound indep = independent_bound(manifold.d(), manifold.m(), tau_dep, Q);
  for (std::uint64_t q = 1; q <= Q; ++q) {
    auto pts = accepted_at(manifold, tau_dep, xe, indep, static_cast<std::int64_t>(q));
    if (!pts.empty()) return describe(manifold, x, std::move(pts.front()), Q);
  }
  return std::nullopt;
}

std::vector<RationalPoint> dirichlet_solutions(const MongeManifold& manifold,
                                               const WeightVector& tau_dep,
                                               std::span<const SnappedReal> x,
                                               std::uint64_t Q) {
  check_shapes(manifold, tau_dep, x);
  check_budget(Q);
  std::vector<Rational> xe;
  for (const auto& xi : x) xe.push_back(xi.exact());
  const PowerBound indep = independent_bound(manifold.d(), manifold.m(), tau_dep, Q);
  std::vector<RationalPoint> all;
  for (std::uint64_t q = 1; q <= Q; ++q) {
    auto pts = accepted_at(manifold, tau_dep, xe, indep, static_cast<std::int64_t>(q));
    all.insert(all.end(), pts.begin(), pts.end());
  }
  return all;
}

}  // namespace reference

}  // namespace wsa
