#include "wsa/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "lattice_detail.hpp"
#include "wsa/bounds.hpp"
#include "wsa/error.hpp"
#include "wsa/formulas.hpp"

namespace wsa {

namespace {

struct AxisRange {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
};

/// Integers p with lower <= p/q <= upper on each axis, exactly.
std::vector<AxisRange> lattice_ranges(const DomainBox& box, std::int64_t q) {
  std::vector<AxisRange> out(box.dim());
  const Rational qr(static_cast<long>(q));
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const Rational a = qr * to_rational(box.lower()[i]);
    const Rational b = qr * to_rational(box.upper()[i]);
    Integer lo, hi;
    mpz_cdiv_q(lo.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    mpz_fdiv_q(hi.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    if (!lo.fits_slong_p() || !hi.fits_slong_p()) throw CapExceeded("lattice range exceeds 64 bits");
    out[i] = {lo.get_si(), hi.get_si()};
  }
  return out;
}

void validate(const MongeManifold& manifold, const WeightVector& tau_dep, std::int64_t q_min,
              std::int64_t q_max) {
  if (tau_dep.size() != manifold.m()) {
    throw std::invalid_argument("enumeration: dependent weight vector length differs from m");
  }
  Violations v;
  v.check(q_min >= 1, "Q_min >= 1");
  v.check(q_min <= q_max, "Q_min <= Q_max");
  v.check(tau_dep.dependent_sum() < 1.0, "m * tilde-tau < 1");
  v.throw_if_any();
}

/// Appends the members with denominator q to `out` in lexicographic p order.
void scan_q(const MongeManifold& manifold, const std::vector<LatticeEvaluator>& evaluators,
            const WeightVector& tau_dep, std::int64_t q, bool halved, PointFamily& out) {
  const std::size_t d = manifold.d();
  const std::size_t m = manifold.m();
  const auto ranges = lattice_ranges(manifold.domain(), q);
  for (const auto& r : ranges) {
    if (r.lo > r.hi) return;
  }
  std::vector<PowerBound> bounds;
  std::vector<long double> approx;
  for (std::size_t j = 0; j < m; ++j) {
    bounds.push_back(detail::dependent_bound(tau_dep[j], static_cast<std::uint64_t>(q), halved));
    approx.push_back(bounds.back().approx());
  }
  std::vector<std::int64_t> p(d + m);
  for (std::size_t i = 0; i < d; ++i) p[i] = ranges[i].lo;
  std::vector<std::vector<std::int64_t>> dep(m);
  std::vector<std::size_t> di(m);
  for (;;) {
    const std::span<const std::int64_t> indep(p.data(), d);
    bool every = true;
    for (std::size_t j = 0; j < m && every; ++j) {
      detail::dependent_candidates(evaluators[j], indep, q, approx[j], bounds[j], dep[j]);
      every = !dep[j].empty();
    }
    if (every) {
      std::fill(di.begin(), di.end(), 0);
      for (;;) {
        for (std::size_t j = 0; j < m; ++j) p[d + j] = dep[j][di[j]];
        out.push_back(p, q);
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
      if (++p[k] <= ranges[k].hi) { done = false; break; }
      p[k] = ranges[k].lo;
    }
    if (done) break;
  }
}

}  // namespace

PointFamily::PointFamily(std::size_t d, std::size_t m, std::int64_t q_min, std::int64_t q_max,
                         WeightVector tau_dep)
    : d_(d), m_(m), q_min_(q_min), q_max_(q_max), tau_dep_(std::move(tau_dep)) {
  if (q_min < 1 || q_min > q_max) throw std::invalid_argument("point family: bad q window");
  for (std::int64_t q = q_min; q <= q_max; ++q) counts_.emplace_hint(counts_.end(), q, 0);
}

RationalPoint PointFamily::at(std::size_t i) const {
  const auto pi = p(i);
  return RationalPoint(std::vector<std::int64_t>(pi.begin(), pi.end()), q(i));
}

std::vector<RationalPoint> PointFamily::members() const {
  std::vector<RationalPoint> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i));
  return out;
}

void PointFamily::push_back(std::span<const std::int64_t> p, std::int64_t q) {
  if (p.size() != n()) throw std::invalid_argument("point family: member has wrong length");
  if (q < q_min_ || q > q_max_) throw std::invalid_argument("point family: q outside window");
  if (!empty() && q < this->q(size() - 1)) {
    throw std::invalid_argument("point family: members must arrive in q order");
  }
  rows_.push_back(q);
  rows_.insert(rows_.end(), p.begin(), p.end());
  ++counts_[q];
}

PointFamily PointFamily::truncated(std::int64_t q_max) const {
  const std::int64_t top = std::min(q_max, q_max_);
  PointFamily out(d_, m_, q_min_, top, tau_dep_);
  for (std::size_t i = 0; i < size() && q(i) <= top; ++i) out.push_back(p(i), q(i));
  return out;
}

PointFamily PointFamily::merge(const PointFamily& a, const PointFamily& b) {
  if (a.d_ != b.d_ || a.m_ != b.m_) throw std::invalid_argument("merge: dimension mismatch");
  if (b.q_min_ != a.q_max_ + 1) throw std::invalid_argument("merge: windows are not adjacent");
  PointFamily out(a.d_, a.m_, a.q_min_, b.q_max_, a.tau_dep_);
  out.rows_ = a.rows_;
  out.rows_.insert(out.rows_.end(), b.rows_.begin(), b.rows_.end());
  for (const auto& [q, c] : a.counts_) out.counts_[q] += c;
  for (const auto& [q, c] : b.counts_) out.counts_[q] += c;
  return out;
}

bool operator==(const PointFamily& a, const PointFamily& b) {
  return a.d_ == b.d_ && a.m_ == b.m_ && a.q_min_ == b.q_min_ && a.q_max_ == b.q_max_ &&
         a.rows_ == b.rows_ && a.counts_ == b.counts_;
}

long double enumeration_cost(const MongeManifold& manifold, std::int64_t q_min,
                             std::int64_t q_max) {
  const auto& box = manifold.domain();
  long double total = 0.0L;
  const std::int64_t span = q_max - q_min + 1;
  const std::int64_t step = std::max<std::int64_t>(1, span / 4096);
  for (std::int64_t q = q_min; q <= q_max; q += step) {
    long double cell = 1.0L;
    for (std::size_t i = 0; i < box.dim(); ++i) {
      cell *= static_cast<long double>(q + step - 1) * box.width(i) + 1.0L;
    }
    total += cell * static_cast<long double>(std::min(step, q_max - q + 1));
  }
  return total;
}

PointFamily enumerate_points(const MongeManifold& manifold, const WeightVector& tau_dep,
                             std::int64_t q_min, std::int64_t q_max,
                             const EnumerationOptions& options) {
  validate(manifold, tau_dep, q_min, q_max);
  const long double cost = enumeration_cost(manifold, q_min, q_max);
  if (cost > static_cast<long double>(options.candidate_cap)) {
    std::ostringstream msg;
    msg << "enumeration of q in [" << q_min << ", " << q_max << "] needs about "
        << static_cast<double>(cost) << " candidate evaluations (cap "
        << options.candidate_cap << ")";
    throw CapExceeded(msg.str());
  }
  std::vector<LatticeEvaluator> evaluators;
  for (const auto& f : manifold.components()) evaluators.emplace_back(f);
  const bool halved = options.bound == DependentBound::halved;

  const std::int64_t span = q_max - q_min + 1;
  const std::int64_t chunk = std::max<std::int64_t>(1, std::min<std::int64_t>(256, span / 64));
  const std::int64_t chunks = (span + chunk - 1) / chunk;
  std::vector<PointFamily> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::int64_t lo = q_min + c * chunk;
    const std::int64_t hi = std::min(q_max, lo + chunk - 1);
    PointFamily part(manifold.d(), manifold.m(), lo, hi, tau_dep);
    for (std::int64_t q = lo; q <= hi; ++q) scan_q(manifold, evaluators, tau_dep, q, halved, part);
    parts[static_cast<std::size_t>(c)] = std::move(part);
  }
  PointFamily out(manifold.d(), manifold.m(), q_min, q_max, tau_dep);
  for (const auto& part : parts) {
    for (std::size_t r = 0; r < part.size(); ++r) out.push_back(part.p(r), part.q(r));
  }
  return out;
}

RectSet build_rectangles(const PointFamily& family, const WeightVector& tau_full, double k) {
  const std::size_t d = family.d();
  const std::size_t m = family.m();
  if (tau_full.size() != d + m) {
    throw std::invalid_argument("build_rectangles: weight vector length differs from n");
  }
  Violations v;
  for (auto& name : manifold_hypothesis_violations(tau_full.entries(), d, m)) {
    v.check(false, std::move(name));
  }
  v.check(k > 0.0 && k <= 1.0, "k in (0, 1]");
  v.throw_if_any();
  const WeightVector a = proof_weight_vector_manifold(tau_full, d, m);
  std::vector<double> scale(d);
  for (std::size_t i = 0; i < d; ++i) scale[i] = std::pow(k, a[i]);

  RectSet out(d);
  out.reserve(family.size());
  std::vector<double> centre(d), hw(d);
  for (std::size_t r = 0; r < family.size(); ++r) {
    const auto q = static_cast<double>(family.q(r));
    const auto p = family.p(r);
    for (std::size_t i = 0; i < d; ++i) {
      centre[i] = static_cast<double>(p[i]) / q;
      hw[i] = scale[i] * std::pow(q, -1.0 - tau_full[i]);
    }
    out.push_back(centre, hw);
  }
  return out;
}

RectSet build_balls(const PointFamily& family, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw HypothesisError({"k > 0"});
  const std::size_t d = family.d();
  const double exponent =
      -1.0 - (1.0 - family.tau_dep().dependent_sum()) / static_cast<double>(d);
  RectSet out(d);
  out.reserve(family.size());
  std::vector<double> centre(d), hw(d);
  for (std::size_t r = 0; r < family.size(); ++r) {
    const auto q = static_cast<double>(family.q(r));
    const auto p = family.p(r);
    const double w = k * std::pow(q, exponent);
    for (std::size_t i = 0; i < d; ++i) {
      centre[i] = static_cast<double>(p[i]) / q;
      hw[i] = w;
    }
    out.push_back(centre, hw);
  }
  return out;
}

double containment_k(double D, std::size_t d, double a_d) {
  if (D < 0.0 || d == 0 || a_d < 1.0) throw std::invalid_argument("containment_k: bad arguments");
  if (D == 0.0) return 1.0;
  return std::min(1.0, std::pow(1.0 / (2.0 * D * static_cast<double>(d)), 1.0 / a_d));
}

namespace reference {

PointFamily enumerate_points(const MongeManifold& manifold, const WeightVector& tau_dep,
                             std::int64_t q_min, std::int64_t q_max, DependentBound bound) {
  validate(manifold, tau_dep, q_min, q_max);
  const std::size_t d = manifold.d();
  const std::size_t m = manifold.m();
  PointFamily out(d, m, q_min, q_max, tau_dep);
  for (std::int64_t q = q_min; q <= q_max; ++q) {
    const auto ranges = lattice_ranges(manifold.domain(), q);
    if (std::any_of(ranges.begin(), ranges.end(), [](const AxisRange& r) { return r.lo > r.hi; })) {
      continue;
    }
    const Rational qr(static_cast<long>(q));
    std::vector<std::int64_t> p(d + m);
    for (std::size_t i = 0; i < d; ++i) p[i] = ranges[i].lo;
    for (;;) {
      std::vector<Rational> x(d);
      for (std::size_t i = 0; i < d; ++i) {
        x[i] = Rational(static_cast<long>(p[i])) / qr;
        x[i].canonicalize();
      }
      std::vector<std::vector<std::int64_t>> dep(m);
      bool every = true;
      for (std::size_t j = 0; j < m && every; ++j) {
        const Rational v = qr * manifold.component(j).evaluate(x);
        Integer fl;
        mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
        const PowerBound b = detail::dependent_bound(tau_dep[j], static_cast<std::uint64_t>(q),
                                                     bound == DependentBound::halved);
        for (long k = -1; k <= 2; ++k) {
          const Integer c = fl + k;
          Rational diff = v - Rational(c);
          if (diff < 0) diff = -diff;
          if (strictly_below_exact(diff, b)) dep[j].push_back(c.get_si());
        }
        every = !dep[j].empty();
      }
      if (every) {
        std::vector<std::size_t> di(m, 0);
        for (;;) {
          for (std::size_t j = 0; j < m; ++j) p[d + j] = dep[j][di[j]];
          out.push_back(p, q);
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
        if (++p[k] <= ranges[k].hi) { done = false; break; }
        p[k] = ranges[k].lo;
      }
      if (done) break;
    }
  }
  return out;
}

}  // namespace reference

}  // namespace wsa
