#pragma once

// Deterministic report output. Floats use 12 significant digits; every CSV
// gets a `<path>.provenance.json` sidecar with the tool version and a hash
// of the config that produced it.

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "wsa/enumeration.hpp"
#include "wsa/fractal.hpp"

namespace wsa {

inline constexpr const char* kVersion = "0.1.0";

std::string format_double(double v);

void write_points_csv(std::ostream& out, const PointFamily& family);
void write_scale_csv(std::ostream& out, const ScaleCountTable& table);
void write_coverage_csv(std::ostream& out, const std::vector<CoverageReport>& reports);

/// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

/// Writes `content` to `path`; I/O failure raises ParseError (exit code 2).
void write_file(const std::string& path, std::string_view content);

/// Writes `<csv_path>.provenance.json`.
void write_provenance(const std::string& csv_path, std::string_view kind,
                      std::string_view config_text);

}  // namespace wsa
