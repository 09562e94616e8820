#pragma once

#include "proxcert/problem.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace proxcert {

// Optional size overrides; 0 keeps the family default. Caps: n <= 512
// variables, k <= 64 polyhedron rows, m <= 128 composition rows.
struct InstanceSizes {
  int n = 0;
  int m = 0;
  int k = 0;
};

// Named problem families:
//   quad1d     - half x^2 on the line, solution {0}
//   rankdef_ls - half (x1 + x2 - 1)^2, solution line x1 + x2 = 1
//   lasso      - least squares plus weighted l1, proxy solution set from
//                eight high-accuracy solver runs
//   box_ls     - rank-deficient least squares over an axis-aligned box
//   case_study - strongly convex composition over a polyhedron whose
//                constraints stay inactive within the sampling horizon
// Deterministic per (family, seed, sizes).
CompositeProblem make_instance(const std::string& family, std::uint64_t seed,
                               const InstanceSizes& sizes = {});

const std::vector<std::string>& instance_families();

}  // namespace proxcert
