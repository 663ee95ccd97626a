// Acceptance suite: runs every verification criterion at full level and
// prints one pass/fail line per criterion.

#include <iostream>

#include "perfsamp/verify.hpp"

int main() {
  perfsamp::VerifyOptions opt;
  opt.level = perfsamp::VerifyOptions::Level::Full;
  const auto results = perfsamp::run_acceptance(opt, std::cerr);
  const bool ok = perfsamp::print_acceptance(results, std::cout, true);
  return ok ? 0 : 1;
}
