#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wsa/polynomial.hpp"

namespace wsa {

/// parabola, circle-chart, affine, paraboloid, twisted-cubic-chart.
const std::vector<std::string>& benchmark_names();

/// Throws ParseError for an unknown name.
MongeManifold benchmark_manifold(std::string_view name);

}  // namespace wsa
