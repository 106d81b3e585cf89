#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "wsa/benchmarks.hpp"
#include "wsa/config.hpp"
#include "wsa/error.hpp"
#include "wsa/report.hpp"

using namespace wsa;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run wsa_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "wsa-cli-test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("shipped configs match the embedded benchmarks") {
  for (const auto& name : benchmark_names()) {
    const auto cfg = load_config(std::string(WSA_SOURCE_DIR) + "/configs/" + name + ".cfg");
    REQUIRE(cfg.manifold.has_value());
    CHECK(format_manifold(*cfg.manifold) == format_manifold(benchmark_manifold(name)));
    CHECK(cfg.manifold->components() == benchmark_manifold(name).components());
  }
}

TEST_CASE("config round trip and named manifolds") {
  const auto M = benchmark_manifold("twisted-cubic-chart");
  const auto back = parse_config(format_manifold(M));
  CHECK(format_manifold(*back.manifold) == format_manifold(M));
  const auto named = parse_config("manifold = paraboloid\ntau = 0.5, 0.4, 0.3\nsplit = 2\nq_max = 50 # window\n");
  CHECK(named.manifold->name() == "paraboloid");
  CHECK(named.tau == std::vector<double>{0.5, 0.4, 0.3});
  CHECK(named.split == 2u);
  CHECK(named.q_max == 50);
}

TEST_CASE("config errors name the line and the field") {
  auto message = [](const std::string& text) {
    try {
      parse_config(text, "exp.cfg");
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("q_max = 10\nq_max = 20\n").find("exp.cfg:2") != std::string::npos);
  CHECK(message("# c\n\ntau = 0.5,x\n").find("exp.cfg:3: field 'tau'") != std::string::npos);
  CHECK(message("colour = red\n").find("'colour'") != std::string::npos);
  CHECK(message("manifold = torus\n").find("exp.cfg:1") != std::string::npos);
  CHECK(message("no equals sign\n").find("exp.cfg:1") != std::string::npos);
  CHECK(message("d = 1\nm = 1\ndomain.lower = 0\ndomain.upper = 1\ncomponent = 1\nmonomial = 1,2,3\n")
            .find("exp.cfg:6: field 'monomial'") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/x.cfg"), ParseError);
}

TEST_CASE("dim examples") {
  const auto a = wsa_run({"dim", "--n", "2", "--tau", "1,0.5"});
  CHECK(a.code == 0);
  CHECK(a.out.find("rynne: 1.75 (argmin j=1)") != std::string::npos);
  const auto b = wsa_run({"dim", "--manifold", "parabola", "--tau", "0.8,0.3", "--d", "1", "--m", "1"});
  CHECK(b.code == 0);
  CHECK(b.out.find("manifold_lower_bound: 0.944444444444") != std::string::npos);
  CHECK(b.out.find("planar_curve: 0.944444444444") != std::string::npos);
  const auto c = wsa_run({"dim", "--tau", "0.5,0.3,0.4", "--d", "2", "--m", "1"});
  CHECK(c.code == 1);
  CHECK(c.out.find("not applicable") != std::string::npos);
}

TEST_CASE("weights and order") {
  const auto w = wsa_run({"weights", "--tau", "1,0.5"});
  CHECK(w.code == 0);
  CHECK(w.out.find("1.33333333333,1") != std::string::npos);
  const auto o = wsa_run({"order", "--psi", "pow:2", "--psi", "alt:1,3", "--q-max", "100000"});
  CHECK(o.code == 0);
  CHECK(o.out.find("v_1 = 2 ") != std::string::npos);
  CHECK(o.out.find("v_2 = 3 ") != std::string::npos);
  CHECK(wsa_run({"order", "--psi", "cube:2"}).code == 2);
}

TEST_CASE("dirichlet subcommand") {
  const auto r = wsa_run({"dirichlet", "--manifold", "parabola", "--tau-dep", "0.5", "--x", "sqrt(2)-1", "--Q", "100"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Q0 = 94") != std::string::npos);
  CHECK(r.out.find("q = 4, p = (2,1)") != std::string::npos);
  CHECK(wsa_run({"dirichlet", "--manifold", "parabola", "--tau-dep", "0.5", "--x", "sqrt(2)-1", "--Q", "50"}).code == 1);
  CHECK(wsa_run({"dirichlet", "--manifold", "parabola", "--tau-dep", "0.5", "--x", "1/2", "--ladder", "1000,10000,100000"})
            .code == 4);
}

TEST_CASE("exit codes") {
  CHECK(wsa_run({}).code == 2);
  CHECK(wsa_run({"frobnicate"}).code == 2);
  CHECK(wsa_run({"dim", "--tau", "abc"}).code == 2);
  CHECK(wsa_run({"enumerate", "--manifold", "nope", "--tau-dep", "0.5", "--q-max", "5"}).code == 2);
  CHECK(wsa_run({"enumerate", "--manifold", "paraboloid", "--tau-dep", "0.5", "--q-max", "1000", "--cap", "100"}).code == 3);
  CHECK(wsa_run({"enumerate", "--manifold", "parabola", "--tau-dep", "0.5", "--q-max", "5", "--out", "/nonexistent/dir/x.csv"})
            .code == 2);
}

TEST_CASE("every subcommand rejects a malformed config") {
  const fs::path bad = scratch("bad.cfg");
  write_file(bad.string(), "manifold = parabola\nq_max = ten\n");
  for (const char* sub : {"dim", "weights", "dirichlet", "enumerate", "coverage", "boxcount"}) {
    const auto r = wsa_run({sub, "--config", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find(":2: field 'q_max'") != std::string::npos);
  }
}

TEST_CASE("identical config gives byte-identical reports") {
  const fs::path cfg = scratch("exp.cfg");
  write_file(cfg.string(), "manifold = circle-chart\ntau = 0.8,0.4\nq_max = 300\ndepth_max = 10\ngrid_resolution = 2048\n");
  for (const char* sub : {"enumerate", "coverage", "boxcount"}) {
    std::vector<std::string> contents;
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = scratch(std::string(sub) + std::to_string(rep) + ".csv");
      std::vector<std::string> args{sub, "--config", cfg.string(), "--out", out.string()};
      if (std::string(sub) != "boxcount") args.insert(args.end(), {"--tau-dep", "0.4"});
      const auto r = wsa_run(args);
      REQUIRE(r.code == 0);
      contents.push_back(read_text_file(out.string()));
      const std::string prov = read_text_file(out.string() + ".provenance.json");
      CHECK(prov.find("\"config_hash\"") != std::string::npos);
      contents.push_back(prov);
    }
    CHECK(contents[0] == contents[2]);
    CHECK(contents[1] == contents[3]);
  }
}

TEST_CASE("coverage and boxcount csv headers") {
  const auto c = wsa_run({"coverage", "--manifold", "parabola", "--tau-dep", "0.5", "--q-max", "10,100", "--k", "0.05"});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("q_max,fraction\n10,", 0) == 0);
  const auto b = wsa_run({"boxcount", "--cantor", "8", "--depth", "12"});
  CHECK(b.code == 0);
  CHECK(b.out.rfind("depth,delta,count\n0,1,1\n", 0) == 0);
}

TEST_CASE("verify formulas suite") {
  const auto r = wsa_run({"verify", "--suite", "formulas", "--out", scratch("verify").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("3/3 criteria passed") != std::string::npos);
}

TEST_CASE("report formatting") {
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(format_double(2.0) == "2");
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
}
