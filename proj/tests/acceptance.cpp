// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is 0 only if all criteria pass.
#include <cstring>
#include <iostream>

#include "posmom/verify.hpp"

int main(int argc, char **argv) {
  posmom::verify::Options opts;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) {
      opts.quick = true;
    } else {
      std::cerr << "usage: acceptance [--quick]\n";
      return 2;
    }
  }
  int failed = 0;
  const auto results = posmom::verify::run_acceptance(opts, [](const auto &r) {
    std::cout << posmom::verify::format_line(r) << std::endl;
  });
  for (const auto &r : results)
    failed += !r.passed;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
