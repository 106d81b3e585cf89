#pragma once

// Experiment config files: UTF-8, one `key = value` per line, `#` comments.
//
//   manifold = parabola            # a named benchmark, or an explicit chart:
//   name = my-curve
//   d = 1
//   m = 1
//   domain.lower = 0
//   domain.upper = 1
//   component = 1
//   monomial = 1,2                 # coeff,e1,...,ed; coeff may be "a/b"
//   tau = 0.8,0.3
//   split = 1
//   q_min = 1
//   q_max = 10000
//   depth_max = 14
//   grid_resolution = 65536
//   seed = 7
//   x = sqrt(2)-1
//   k = 4
//   output = points.csv

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wsa/polynomial.hpp"

namespace wsa {

struct ExperimentConfig {
  std::optional<MongeManifold> manifold;
  std::vector<double> tau;
  std::optional<std::size_t> split;
  std::optional<std::int64_t> q_min;
  std::optional<std::int64_t> q_max;
  std::optional<int> depth_max;
  std::optional<std::uint64_t> grid_resolution;
  std::uint64_t seed = 0;
  std::vector<std::string> x;
  std::optional<double> k;
  std::optional<std::string> output;
};

/// Throws ParseError naming `origin`, the line and the field.
ExperimentConfig parse_config(std::string_view text, std::string_view origin = "<config>");
ExperimentConfig load_config(const std::string& path);

/// Canonical text of a chart in the config syntax above.
std::string format_manifold(const MongeManifold& manifold);

std::string read_text_file(const std::string& path);

}  // namespace wsa
