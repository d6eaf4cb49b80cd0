#pragma once

#include <string>

#include "triadic/cascade.hpp"
#include "triadic/report.hpp"

namespace triadic {

struct VerifyOptions {
  Rat delta = Rat(1, 5);
  unsigned dim = 2;
  unsigned long n1 = 2;
  unsigned long k1 = 1;
  CascadeMode mode = CascadeMode::Toy;
  unsigned long levels = 2;     // cascade stages to materialize or bound
  unsigned long max_level = 8;  // triadic depth for the sweep suites
  unsigned long max_n = 60;     // largest n in the tail-bound sweep
  long start_prec = kDefaultLevel;
  long max_prec = 128;
  unsigned long cap = kDefaultSegmentCap;
};

// suite is one of doubling, oracle, tails, gamma, cascade, tour, all.
// Unknown names raise std::invalid_argument. Checks that would exceed the
// segment cap are skipped, never silently weakened.
Report run_suite(const std::string& suite, const VerifyOptions& opt);

}  // namespace triadic
