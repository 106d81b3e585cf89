#include "wsa/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <omp.h>

#include "wsa/dirichlet.hpp"
#include "wsa/error.hpp"
#include "wsa/formulas.hpp"

namespace wsa {

namespace {

// ---- coverage -------------------------------------------------------------

struct Grid {
  std::vector<double> lo;
  std::vector<double> step;
  std::int64_t res = 0;

  Grid(const DomainBox& box, std::uint64_t resolution) : res(static_cast<std::int64_t>(resolution)) {
    for (std::size_t i = 0; i < box.dim(); ++i) {
      lo.push_back(box.lower()[i]);
      step.push_back(box.width(i) / static_cast<double>(resolution));
    }
  }

  double point(std::size_t axis, std::int64_t k) const {
    return lo[axis] + (static_cast<double>(k) + 0.5) * step[axis];
  }

  bool inside(std::size_t axis, std::int64_t k, double c, double hw) const {
    return std::fabs(point(axis, k) - c) < hw;
  }

  /// Inclusive index range of grid points inside (c - hw, c + hw); a > b when empty.
  std::pair<std::int64_t, std::int64_t> range(std::size_t axis, double c, double hw) const {
    auto clamp_index = [&](double v) {
      if (!(v > -1.0)) return std::int64_t{-1};
      if (v > static_cast<double>(res)) return res;
      return static_cast<std::int64_t>(v);
    };
    const double base = (c - lo[axis]) / step[axis] - 0.5;
    std::int64_t a = std::clamp<std::int64_t>(clamp_index(std::ceil(base - hw / step[axis])), 0, res - 1);
    std::int64_t b = std::clamp<std::int64_t>(clamp_index(std::floor(base + hw / step[axis])), 0, res - 1);
    while (a > 0 && inside(axis, a - 1, c, hw)) --a;
    while (a < res - 1 && !inside(axis, a, c, hw) && point(axis, a) < c) ++a;
    while (b < res - 1 && inside(axis, b + 1, c, hw)) ++b;
    while (b > 0 && !inside(axis, b, c, hw) && point(axis, b) > c) --b;
    if (a > b || !inside(axis, a, c, hw) || !inside(axis, b, c, hw)) return {1, 0};
    return {a, b};
  }
};

void check_coverage_args(const RectSet& balls, const DomainBox& box, std::uint64_t res) {
  if (res < 2) throw HypothesisError({"grid_resolution >= 2"});
  if (!balls.empty() && balls.dim() != box.dim()) {
    throw std::invalid_argument("coverage: rectangle and box dimensions differ");
  }
  long double total = 1.0L;
  for (std::size_t i = 0; i < box.dim(); ++i) total *= static_cast<long double>(res);
  if (total > static_cast<long double>(kMaxGridPoints)) {
    throw CapExceeded("coverage grid has more than 2^28 points");
  }
}

CoverageReport make_report(std::uint64_t covered, std::uint64_t total, std::uint64_t res) {
  CoverageReport out;
  out.covered = covered;
  out.total = total;
  out.grid_resolution = res;
  out.fraction = total == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(total);
  return out;
}

// ---- box counting ---------------------------------------------------------

struct Dyadic {
  const RectSet* rects;
  std::vector<double> lo;
  std::vector<double> width;
  std::size_t d;
  int depth;

  double edge(std::size_t axis, std::int64_t j, int level) const {
    return lo[axis] + width[axis] * std::ldexp(static_cast<double>(j), -level);
  }

  bool meets(std::size_t r, const std::vector<std::int64_t>& j, int level) const {
    const auto c = rects->center(r);
    const auto h = rects->half_widths(r);
    for (std::size_t i = 0; i < d; ++i) {
      if (!(c[i] - h[i] < edge(i, j[i] + 1, level) && c[i] + h[i] > edge(i, j[i], level))) return false;
    }
    return true;
  }

  bool covers(std::size_t r, const std::vector<std::int64_t>& j, int level) const {
    const auto c = rects->center(r);
    const auto h = rects->half_widths(r);
    for (std::size_t i = 0; i < d; ++i) {
      if (!(c[i] - h[i] < edge(i, j[i], level) && c[i] + h[i] > edge(i, j[i] + 1, level))) return false;
    }
    return true;
  }

  /// Counts the node and its subtree into counts[level..depth].
  void visit(const std::vector<std::int64_t>& j, int level, const std::vector<std::uint32_t>& list,
             std::vector<std::uint64_t>& counts) const {
    counts[static_cast<std::size_t>(level)] += 1;
    if (level == depth) return;
    for (std::uint32_t r : list) {
      if (covers(r, j, level)) {
        for (int l = level + 1; l <= depth; ++l) {
          counts[static_cast<std::size_t>(l)] += std::uint64_t{1} << (d * static_cast<std::size_t>(l - level));
        }
        return;
      }
    }
    std::vector<std::int64_t> child(d);
    std::vector<std::uint32_t> sub;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
      for (std::size_t i = 0; i < d; ++i) child[i] = 2 * j[i] + static_cast<std::int64_t>((mask >> i) & 1);
      sub.clear();
      for (std::uint32_t r : list) {
        if (meets(r, child, level + 1)) sub.push_back(r);
      }
      if (!sub.empty()) visit(child, level + 1, sub, counts);
    }
  }
};

void check_box_count_args(const RectSet& rects, const DomainBox& box, int depth_max) {
  Violations v;
  v.check(depth_max >= 0 && depth_max <= kMaxDepth, "0 <= depth_max <= 30");
  v.check(!rects.empty(), "rectangle family nonempty");
  v.throw_if_any();
  if (rects.dim() != box.dim()) throw std::invalid_argument("box_count: dimension mismatch");
  if (static_cast<std::size_t>(depth_max) * box.dim() > 62) {
    throw CapExceeded("box_count: d * depth_max exceeds 62, cell counters would overflow");
  }
  if (rects.size() > UINT32_MAX) throw CapExceeded("box_count: more than 2^32 rectangles");
}

ScaleCountTable rows_from_counts(const std::vector<std::uint64_t>& counts) {
  ScaleCountTable t;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    t.rows.push_back({static_cast<int>(k), std::ldexp(1.0, -static_cast<int>(k)), counts[k]});
  }
  return t;
}

}  // namespace

CoverageReport coverage(const RectSet& balls, const DomainBox& box,
                        std::uint64_t grid_resolution) {
  check_coverage_args(balls, box, grid_resolution);
  const std::size_t d = box.dim();
  const Grid grid(box, grid_resolution);
  const std::int64_t res = grid.res;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= grid_resolution;
  if (balls.empty()) return make_report(0, total, grid_resolution);

  // Per-axis extents of the difference array: res + 1 on the trailing axes.
  std::uint64_t row = 1;
  for (std::size_t i = 1; i < d; ++i) row *= static_cast<std::uint64_t>(res + 1);
  const std::int64_t slab = std::max<std::int64_t>(1, static_cast<std::int64_t>((std::uint64_t{1} << 22) / row));
  const std::int64_t slabs = (res + slab - 1) / slab;

  std::uint64_t covered = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : covered)
  for (std::int64_t s = 0; s < slabs; ++s) {
    const std::int64_t s0 = s * slab;
    const std::int64_t s1 = std::min(res, s0 + slab);  // exclusive
    const auto len0 = static_cast<std::uint64_t>(s1 - s0);
    std::vector<std::int32_t> diff((len0 + 1) * row, 0);
    std::vector<std::uint64_t> stride(d);
    stride[d - 1] = 1;
    for (std::size_t i = d - 1; i > 0; --i) stride[i - 1] = stride[i] * static_cast<std::uint64_t>(res + 1);
    std::vector<std::int64_t> a(d), b(d);
    for (std::size_t r = 0; r < balls.size(); ++r) {
      const auto c = balls.center(r);
      const auto h = balls.half_widths(r);
      bool empty = false;
      for (std::size_t i = 0; i < d && !empty; ++i) {
        auto [lo, hi] = grid.range(i, c[i], h[i]);
        if (i == 0) {
          lo = std::max(lo, s0);
          hi = std::min(hi, s1 - 1);
          lo -= s0;
          hi -= s0;
        }
        a[i] = lo;
        b[i] = hi;
        empty = lo > hi;
      }
      if (empty) continue;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
        std::uint64_t at = 0;
        int sign = 1;
        for (std::size_t i = 0; i < d; ++i) {
          if ((mask >> i) & 1) {
            at += static_cast<std::uint64_t>(b[i] + 1) * stride[i];
            sign = -sign;
          } else {
            at += static_cast<std::uint64_t>(a[i]) * stride[i];
          }
        }
        diff[at] += sign;
      }
    }
    // Prefix sums along every axis turn the corner marks into cover counts.
    const std::uint64_t size = diff.size();
    for (std::size_t i = 0; i < d; ++i) {
      const std::uint64_t st = stride[i];
      const std::uint64_t extent = i == 0 ? len0 + 1 : static_cast<std::uint64_t>(res + 1);
      for (std::uint64_t idx = 0; idx < size; ++idx) {
        if ((idx / st) % extent != 0) diff[idx] += diff[idx - st];
      }
    }
    std::uint64_t local = 0;
    for (std::uint64_t idx = 0; idx < size; ++idx) {
      bool valid = true;
      for (std::size_t i = 0; i < d && valid; ++i) {
        const std::uint64_t extent = i == 0 ? len0 + 1 : static_cast<std::uint64_t>(res + 1);
        valid = (idx / stride[i]) % extent < extent - 1;
      }
      if (valid && diff[idx] > 0) ++local;
    }
    covered += local;
  }
  return make_report(covered, total, grid_resolution);
}

ScaleCountTable box_count(const RectSet& rects, const DomainBox& box, int depth_max,
                          const FitWindow& window) {
  check_box_count_args(rects, box, depth_max);
  const std::size_t d = box.dim();
  Dyadic dy{&rects, {}, {}, d, depth_max};
  for (std::size_t i = 0; i < d; ++i) {
    dy.lo.push_back(box.lower()[i]);
    dy.width.push_back(box.width(i));
  }
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(depth_max) + 1, 0);

  struct Node {
    std::vector<std::int64_t> j;
    std::vector<std::uint32_t> list;
  };
  std::vector<Node> frontier;
  {
    Node root{std::vector<std::int64_t>(d, 0), {}};
    for (std::size_t r = 0; r < rects.size(); ++r) {
      if (dy.meets(r, root.j, 0)) root.list.push_back(static_cast<std::uint32_t>(r));
    }
    if (!root.list.empty()) frontier.push_back(std::move(root));
  }

  // Breadth-first until the frontier is wide enough to share out.
  const std::size_t wanted = 64 * static_cast<std::size_t>(omp_get_max_threads());
  int level = 0;
  while (!frontier.empty() && frontier.size() < wanted && level < depth_max) {
    std::vector<Node> next;
    for (auto& node : frontier) {
      counts[static_cast<std::size_t>(level)] += 1;
      bool full = false;
      for (std::uint32_t r : node.list) {
        if (dy.covers(r, node.j, level)) { full = true; break; }
      }
      if (full) {
        for (int l = level + 1; l <= depth_max; ++l) {
          counts[static_cast<std::size_t>(l)] += std::uint64_t{1} << (d * static_cast<std::size_t>(l - level));
        }
        continue;
      }
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
        Node child{std::vector<std::int64_t>(d), {}};
        for (std::size_t i = 0; i < d; ++i) child.j[i] = 2 * node.j[i] + static_cast<std::int64_t>((mask >> i) & 1);
        for (std::uint32_t r : node.list) {
          if (dy.meets(r, child.j, level + 1)) child.list.push_back(r);
        }
        if (!child.list.empty()) next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
    ++level;
  }

  const auto nodes = static_cast<std::int64_t>(frontier.size());
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(counts.size(), 0);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t k = 0; k < nodes; ++k) {
      const auto& node = frontier[static_cast<std::size_t>(k)];
      dy.visit(node.j, level, node.list, local);
    }
#pragma omp critical
    for (std::size_t l = 0; l < counts.size(); ++l) counts[l] += local[l];
  }

  ScaleCountTable table = rows_from_counts(counts);
  fit_slope(table, d, window);
  return table;
}

void fit_slope(ScaleCountTable& table, std::size_t dim, const FitWindow& window) {
  const int depth = table.rows.empty() ? 0 : table.rows.back().depth;
  const int span = (depth + 1 + 2) / 3;
  int lo = window.lo.value_or(std::max(0, depth - span + 1));
  int hi = window.hi.value_or(depth);
  lo = std::clamp(lo, 0, depth);
  hi = std::clamp(hi, lo, depth);
  table.fit_lo = lo;
  table.fit_hi = hi;

  auto pick = [&](bool allow_saturated) {
    std::vector<std::pair<double, double>> pts;
    for (int k = lo; k <= hi; ++k) {
      const auto& row = table.rows[static_cast<std::size_t>(k)];
      if (row.count == 0) continue;
      const bool saturated =
          dim * static_cast<std::size_t>(k) < 64 && row.count == (std::uint64_t{1} << (dim * static_cast<std::size_t>(k)));
      if (saturated && !allow_saturated) continue;
      pts.emplace_back(static_cast<double>(k) * std::log(2.0), std::log(static_cast<double>(row.count)));
    }
    return pts;
  };
  auto pts = pick(false);
  table.saturated = false;
  if (pts.size() < 2) {
    pts = pick(true);
    table.saturated = true;
  }
  if (pts.size() < 2) {
    table.slope = 0.0;
    table.intercept = pts.empty() ? 0.0 : pts.front().second;
    table.residual = 0.0;
    return;
  }
  const auto count = static_cast<double>(pts.size());
  double sx = 0, sy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double mx = sx / count;
  const double my = sy / count;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  table.slope = sxy / sxx;
  table.intercept = my - table.slope * mx;
  double ss = 0;
  for (const auto& [x, y] : pts) {
    const double e = y - (table.intercept + table.slope * x);
    ss += e * e;
  }
  table.residual = std::sqrt(ss / count);
}

DimensionExperiment dimension_experiment(const MongeManifold& manifold,
                                         const WeightVector& tau_full,
                                         const std::vector<std::int64_t>& Q_ladder,
                                         int depth_max, const EnumerationOptions& options) {
  const std::size_t d = manifold.d();
  const std::size_t m = manifold.m();
  if (Q_ladder.empty()) throw std::invalid_argument("dimension_experiment: empty ladder");
  for (std::size_t k = 1; k < Q_ladder.size(); ++k) {
    if (Q_ladder[k] <= Q_ladder[k - 1]) throw HypothesisError({"Q ladder strictly increasing"});
  }
  DimensionExperiment out;
  out.formula_value = manifold_lower_bound(tau_full, d, m).value;
  const WeightVector tau_dep = WeightVector::dependent_only(
      std::vector<double>(tau_full.dependent().begin(), tau_full.dependent().end()));
  const PointFamily family = enumerate_points(manifold, tau_dep, 1, Q_ladder.back(), options);
  const WeightVector a = proof_weight_vector_manifold(tau_full, d, m);
  out.k = containment_k(manifold_constants(manifold).D, d, a[d - 1]);
  const RectSet all = build_rectangles(family, tau_full, out.k);

  std::size_t used = 0;
  RectSet prefix(d);
  for (std::int64_t Q : Q_ladder) {
    while (used < family.size() && family.q(used) <= Q) {
      prefix.push_back(all.center(used), all.half_widths(used));
      ++used;
    }
    DimensionProbe probe;
    probe.Q = Q;
    probe.rectangles = prefix.size();
    if (prefix.empty()) {
      probe.table = rows_from_counts(std::vector<std::uint64_t>(static_cast<std::size_t>(depth_max) + 1, 0));
      fit_slope(probe.table, d, {});
    } else {
      probe.table = box_count(prefix, manifold.domain(), depth_max);
    }
    out.probes.push_back(std::move(probe));
  }
  return out;
}

namespace reference {

CoverageReport coverage(const RectSet& balls, const DomainBox& box,
                        std::uint64_t grid_resolution) {
  check_coverage_args(balls, box, grid_resolution);
  const std::size_t d = box.dim();
  const Grid grid(box, grid_resolution);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= grid_resolution;
  std::uint64_t covered = 0;
  std::vector<std::int64_t> idx(d, 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t rest = t;
    for (std::size_t i = d; i > 0; --i) {
      idx[i - 1] = static_cast<std::int64_t>(rest % grid_resolution);
      rest /= grid_resolution;
    }
    for (std::size_t r = 0; r < balls.size(); ++r) {
      const auto c = balls.center(r);
      const auto h = balls.half_widths(r);
      bool in = true;
      for (std::size_t i = 0; i < d && in; ++i) in = grid.inside(i, idx[i], c[i], h[i]);
      if (in) {
        ++covered;
        break;
      }
    }
  }
  return make_report(covered, total, grid_resolution);
}

ScaleCountTable box_count(const RectSet& rects, const DomainBox& box, int depth_max,
                          const FitWindow& window) {
  check_box_count_args(rects, box, depth_max);
  const std::size_t d = box.dim();
  Dyadic dy{&rects, {}, {}, d, depth_max};
  for (std::size_t i = 0; i < d; ++i) {
    dy.lo.push_back(box.lower()[i]);
    dy.width.push_back(box.width(i));
  }
  std::vector<std::uint64_t> counts;
  for (int level = 0; level <= depth_max; ++level) {
    const std::int64_t side = std::int64_t{1} << level;
    std::vector<std::uint8_t> hit(static_cast<std::size_t>(std::uint64_t{1} << (d * static_cast<std::size_t>(level))), 0);
    std::vector<std::int64_t> a(d), b(d), j(d);
    for (std::size_t r = 0; r < rects.size(); ++r) {
      const auto c = rects.center(r);
      const auto h = rects.half_widths(r);
      bool empty = false;
      for (std::size_t i = 0; i < d && !empty; ++i) {
        // Cells [edge(j), edge(j+1)] meeting (c - h, c + h).
        auto meets_axis = [&](std::int64_t cell) {
          return c[i] - h[i] < dy.edge(i, cell + 1, level) && c[i] + h[i] > dy.edge(i, cell, level);
        };
        const double scale = static_cast<double>(side) / dy.width[i];
        const double fa = std::floor((c[i] - h[i] - dy.lo[i]) * scale);
        const double fb = std::floor((c[i] + h[i] - dy.lo[i]) * scale);
        std::int64_t lo = static_cast<std::int64_t>(std::clamp(fa, 0.0, static_cast<double>(side - 1)));
        std::int64_t hi = static_cast<std::int64_t>(std::clamp(fb, 0.0, static_cast<double>(side - 1)));
        while (lo > 0 && meets_axis(lo - 1)) --lo;
        while (lo <= hi && !meets_axis(lo)) ++lo;
        while (hi < side - 1 && meets_axis(hi + 1)) ++hi;
        while (hi >= lo && !meets_axis(hi)) --hi;
        a[i] = lo;
        b[i] = hi;
        empty = lo > hi;
      }
      if (empty) continue;
      j = a;
      for (;;) {
        std::uint64_t at = 0;
        for (std::size_t i = 0; i < d; ++i) at = at * static_cast<std::uint64_t>(side) + static_cast<std::uint64_t>(j[i]);
        hit[at] = 1;
        std::size_t k = d;
        bool done = true;
        while (k > 0) {
          --k;
          if (++j[k] <= b[k]) { done = false; break; }
          j[k] = a[k];
        }
        if (done) break;
      }
    }
    counts.push_back(static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), 1)));
  }
  ScaleCountTable table = rows_from_counts(counts);
  fit_slope(table, d, window);
  return table;
}

}  // namespace reference

}  // namespace wsa
