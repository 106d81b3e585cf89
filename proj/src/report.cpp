#include "wsa/report.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "wsa/error.hpp"

namespace wsa {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_points_csv(std::ostream& out, const PointFamily& family) {
  out << "q";
  for (std::size_t i = 1; i <= family.n(); ++i) out << ",p" << i;
  out << "\n";
  for (std::size_t r = 0; r < family.size(); ++r) {
    out << family.q(r);
    for (std::int64_t p : family.p(r)) out << "," << p;
    out << "\n";
  }
}

void write_scale_csv(std::ostream& out, const ScaleCountTable& table) {
  out << "depth,delta,count\n";
  for (const auto& row : table.rows) {
    out << row.depth << "," << format_double(row.delta) << "," << row.count << "\n";
  }
}

void write_coverage_csv(std::ostream& out, const std::vector<CoverageReport>& reports) {
  out << "q_max,fraction\n";
  for (const auto& r : reports) out << r.q_max << "," << format_double(r.fraction) << "\n";
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw ParseError("write to '" + path + "' failed");
}

void write_provenance(const std::string& csv_path, std::string_view kind,
                      std::string_view config_text) {
  nlohmann::ordered_json j;
  j["report"] = kind;
  j["version"] = kVersion;
  j["config_hash"] = fnv1a_hex(config_text);
  write_file(csv_path + ".provenance.json", j.dump(2) + "\n");
}

}  // namespace wsa
