#pragma once

// Measure and dimension probes for truncated limsup families.
//
// Box counting is a proxy: it bounds Hausdorff dimension from above, so a
// fitted slope is a plausibility check on a lower bound, never a proof.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wsa/core.hpp"
#include "wsa/enumeration.hpp"
#include "wsa/polynomial.hpp"

namespace wsa {

inline constexpr const char* kBoxCountCaveat =
    "box-counting dimension bounds Hausdorff dimension from above; the slope is a "
    "plausibility probe of the lower bound, not a verification";

struct CoverageReport {
  double fraction = 0.0;
  std::uint64_t covered = 0;
  std::uint64_t total = 0;
  std::uint64_t grid_resolution = 0;
  std::int64_t q_min = 0;  // 0 when the family has no window
  std::int64_t q_max = 0;
};

inline constexpr std::uint64_t kMaxGridPoints = std::uint64_t{1} << 28;

/// Fraction of the cell-centre grid (grid_resolution points per axis) lying
/// strictly inside at least one rectangle.
CoverageReport coverage(const RectSet& balls, const DomainBox& box,
                        std::uint64_t grid_resolution);

struct ScaleCountRow {
  int depth = 0;
  double delta = 1.0;  // 2^{-depth}, relative to the box side
  std::uint64_t count = 0;
};

struct FitWindow {
  std::optional<int> lo;  // default: deepest third of the ladder
  std::optional<int> hi;  // default: depth_max
};

struct ScaleCountTable {
  std::vector<ScaleCountRow> rows;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square of the fit residuals
  int fit_lo = 0;
  int fit_hi = 0;
  bool saturated = false;  // every usable scale in the window was saturated
};

inline constexpr int kMaxDepth = 30;

/// Dyadic cells of side 2^{-k} (relative to the box, anchored at its lower
/// corner) meeting the union of the open rectangles, for k = 0..depth_max.
ScaleCountTable box_count(const RectSet& rects, const DomainBox& box, int depth_max,
                          const FitWindow& window = {});

/// Least-squares slope of log N against k log 2 over [lo, hi], skipping
/// empty and saturated scales unless none would remain.
void fit_slope(ScaleCountTable& table, std::size_t dim, const FitWindow& window);

struct DimensionProbe {
  std::int64_t Q = 0;
  std::size_t rectangles = 0;
  ScaleCountTable table;
};

struct DimensionExperiment {
  double formula_value = 0.0;
  double k = 0.0;
  std::vector<DimensionProbe> probes;
  std::string caveat = kBoxCountCaveat;
};

/// Enumerates N(f,tau) up to the largest rung, builds the projected
/// rectangles with the certified containment constant and box-counts the
/// truncation at every rung.
DimensionExperiment dimension_experiment(const MongeManifold& manifold,
                                         const WeightVector& tau_full,
                                         const std::vector<std::int64_t>& Q_ladder,
                                         int depth_max,
                                         const EnumerationOptions& options = {});

namespace reference {

/// Tests every grid point against every rectangle.
CoverageReport coverage(const RectSet& balls, const DomainBox& box,
                        std::uint64_t grid_resolution);

/// One bitmap per level, filled rectangle by rectangle.
ScaleCountTable box_count(const RectSet& rects, const DomainBox& box, int depth_max,
                          const FitWindow& window = {});

}  // namespace reference

}  // namespace wsa
