#pragma once

#include "proxcert/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace proxcert {

// One failed inequality: which check, where, and the two sides that were
// compared (the check asserted lhs >= rhs - slack, or as documented).
struct Violation {
  std::string check;
  long long index = -1;  // sample or iteration index when applicable
  double lhs = 0.0;
  double rhs = 0.0;
  Vector point;  // offending point when applicable, size 0 otherwise
};

// Outcome of a verification suite or rate check bundle.
struct Report {
  std::string suite;
  std::string family;
  double gamma = 0.0;
  double omega = 0.0;  // +inf means unrestricted
  int samples = 0;
  std::uint64_t seed = 0;
  bool proxy_distances = false;  // distances were upper bounds
  std::map<std::string, double> metrics;
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
};

}  // namespace proxcert
