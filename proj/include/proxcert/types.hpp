#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>

namespace proxcert {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Additive slack for one-sided inequality checks, scaled by the magnitude of
// the reference side so both tiny and large instances are judged fairly.
inline double slack_for(double reference) { return 1e-9 * (1.0 + std::abs(reference)); }

}  // namespace proxcert
