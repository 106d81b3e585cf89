#include <iostream>
#include <string>

#include "acceptance.hpp"
#include "wsa/error.hpp"

int main(int argc, char** argv) {
  wsa::acceptance::SuiteOptions options;
  std::string suite = "all";
  if (argc > 1) suite = argv[1];
  if (argc > 2) options.out_dir = argv[2];
  try {
    const auto results = wsa::acceptance::run_suite(suite, options, std::cout);
    std::size_t failed = 0;
    for (const auto& r : results) failed += r.pass ? 0 : 1;
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
  } catch (const wsa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  }
}
