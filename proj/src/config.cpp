#include "wsa/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "wsa/benchmarks.hpp"
#include "wsa/error.hpp"

namespace wsa {

namespace {

std::string_view trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

class LineContext {
 public:
  LineContext(std::string_view origin, std::size_t line, std::string_view key)
      : origin_(origin), line_(line), key_(key) {}

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream msg;
    msg << origin_ << ":" << line_ << ": field '" << key_ << "': " << what;
    throw ParseError(msg.str());
  }

  template <class Int>
  Int integer(std::string_view s) const {
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      fail("expected an integer, got '" + std::string(s) + "'");
    }
    return v;
  }

  double real(std::string_view s) const {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
      fail("expected a finite number, got '" + std::string(s) + "'");
    }
    return v;
  }

  std::vector<double> reals(std::string_view s) const {
    std::vector<double> out;
    for (auto part : split_commas(s)) out.push_back(real(part));
    return out;
  }

 private:
  std::string_view origin_;
  std::size_t line_;
  std::string_view key_;
};

struct ChartDraft {
  std::optional<std::string> name;
  std::optional<std::size_t> d;
  std::optional<std::size_t> m;
  std::vector<double> lower;
  std::vector<double> upper;
  std::map<std::size_t, std::vector<Monomial>> components;
  std::size_t current = 0;
  std::size_t first_line = 0;
  bool any = false;
};

}  // namespace

ExperimentConfig parse_config(std::string_view text, std::string_view origin) {
  ExperimentConfig cfg;
  ChartDraft chart;
  std::optional<std::string> benchmark;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      LineContext(origin, line_no, line).fail("expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const LineContext ctx(origin, line_no, key);
    if (value.empty()) ctx.fail("empty value");
    if (key != "monomial" && key != "component" && !seen.insert(key).second) {
      ctx.fail("duplicate key");
    }

    if (key == "manifold") {
      const auto& names = benchmark_names();
      if (std::find(names.begin(), names.end(), value) == names.end()) {
        ctx.fail("unknown benchmark '" + std::string(value) + "'");
      }
      benchmark = std::string(value);
    } else if (key == "name") {
      chart.name = std::string(value);
    } else if (key == "d" || key == "m") {
      const auto v = ctx.integer<std::size_t>(value);
      if (v == 0) ctx.fail("must be >= 1");
      (key == "d" ? chart.d : chart.m) = v;
      chart.any = true;
    } else if (key == "domain.lower" || key == "domain.upper") {
      (key == "domain.lower" ? chart.lower : chart.upper) = ctx.reals(value);
      chart.any = true;
    } else if (key == "component") {
      const auto j = ctx.integer<std::size_t>(value);
      if (j == 0) ctx.fail("components are numbered from 1");
      if (chart.components.count(j) != 0) ctx.fail("component listed twice");
      chart.components[j];
      chart.current = j;
      if (chart.first_line == 0) chart.first_line = line_no;
      chart.any = true;
    } else if (key == "monomial") {
      if (chart.current == 0) ctx.fail("monomial before any 'component = j' line");
      if (!chart.d) ctx.fail("monomial before 'd'");
      const auto parts = split_commas(value);
      if (parts.size() != *chart.d + 1) {
        ctx.fail("expected coeff followed by " + std::to_string(*chart.d) + " exponents");
      }
      Monomial mono;
      try {
        mono.coeff = parse_rational(parts[0]);
      } catch (const ParseError& e) {
        ctx.fail(e.what());
      }
      for (std::size_t i = 1; i < parts.size(); ++i) mono.exponents.push_back(ctx.integer<int>(parts[i]));
      for (int e : mono.exponents) {
        if (e < 0) ctx.fail("negative exponent");
      }
      chart.components[chart.current].push_back(std::move(mono));
    } else if (key == "tau") {
      cfg.tau = ctx.reals(value);
    } else if (key == "split") {
      cfg.split = ctx.integer<std::size_t>(value);
    } else if (key == "q_min") {
      cfg.q_min = ctx.integer<std::int64_t>(value);
    } else if (key == "q_max") {
      cfg.q_max = ctx.integer<std::int64_t>(value);
    } else if (key == "depth_max") {
      cfg.depth_max = ctx.integer<int>(value);
    } else if (key == "grid_resolution") {
      cfg.grid_resolution = ctx.integer<std::uint64_t>(value);
    } else if (key == "seed") {
      cfg.seed = ctx.integer<std::uint64_t>(value);
    } else if (key == "x") {
      for (auto part : split_commas(value)) cfg.x.emplace_back(part);
    } else if (key == "k") {
      cfg.k = ctx.real(value);
    } else if (key == "output") {
      cfg.output = std::string(value);
    } else {
      ctx.fail("unknown key");
    }
  }

  if (benchmark && chart.any) {
    throw ParseError(std::string(origin) + ": 'manifold' and an explicit chart are mutually exclusive");
  }
  if (benchmark) {
    cfg.manifold = benchmark_manifold(*benchmark);
  } else if (chart.any) {
    auto fail = [&](const std::string& what) {
      throw ParseError(std::string(origin) + ": chart: " + what);
    };
    if (!chart.d || !chart.m) fail("both 'd' and 'm' are required");
    if (chart.lower.size() != *chart.d || chart.upper.size() != *chart.d) {
      fail("domain.lower and domain.upper need d entries each");
    }
    if (chart.components.size() != *chart.m || chart.components.rbegin()->first != *chart.m) {
      fail("expected components 1.." + std::to_string(*chart.m));
    }
    try {
      std::vector<Polynomial> comps;
      for (auto& [j, terms] : chart.components) comps.emplace_back(*chart.d, std::move(terms));
      cfg.manifold = MongeManifold(chart.name.value_or("custom"),
                                   DomainBox(chart.lower, chart.upper), std::move(comps));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  return cfg;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ExperimentConfig load_config(const std::string& path) {
  return parse_config(read_text_file(path), path);
}

std::string format_manifold(const MongeManifold& manifold) {
  std::ostringstream out;
  auto list = [&](std::span<const double> xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof buf, xs[i]);
      out << (i ? "," : "") << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
    }
  };
  out << "name = " << manifold.name() << "\n";
  out << "d = " << manifold.d() << "\n";
  out << "m = " << manifold.m() << "\n";
  out << "domain.lower = ";
  list(manifold.domain().lower());
  out << "\ndomain.upper = ";
  list(manifold.domain().upper());
  out << "\n";
  for (std::size_t j = 0; j < manifold.m(); ++j) {
    out << "component = " << j + 1 << "\n";
    for (const auto& t : manifold.component(j).terms()) {
      out << "monomial = " << t.coeff.get_str();
      for (int e : t.exponents) out << "," << e;
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace wsa
