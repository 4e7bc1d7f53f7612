// One line per acceptance criterion; exit status 1 if any fails.
#include "brauer/acceptance.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  const unsigned seed = argc > 1 ? static_cast<unsigned>(std::strtoul(argv[1], nullptr, 10)) : 20261019u;
  int failed = 0;
  for (int id = 1; id <= 10; ++id) {
    const auto r = brauer::run_criterion(id, seed);
    std::cout << brauer::format_result(r) << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (failed ? std::to_string(failed) + " of 10 criteria failed" : "all 10 criteria passed") << std::endl;
  return failed ? 1 : 0;
}
