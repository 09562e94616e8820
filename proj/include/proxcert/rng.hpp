#pragma once

#include "proxcert/types.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace proxcert {

// Deterministic random source. Every randomized routine in the library is
// driven by a single 64-bit seed through this class: mt19937_64 supplies raw
// bits and all real-valued draws are derived with explicit arithmetic, so a
// seed reproduces the same stream on every platform we build for.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform in [0, 1), 53 usable bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // exp of a uniform draw on [log lo, log hi]; lo, hi > 0.
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  // Standard normal via Box-Muller. Consumes exactly two uniforms per call;
  // the sine branch is discarded to keep the stream position predictable.
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Vector gaussian(int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  // Uniform direction on the unit sphere.
  Vector sphere(int n) {
    Vector v = gaussian(n);
    double nrm = v.norm();
    while (nrm == 0.0) {
      v = gaussian(n);
      nrm = v.norm();
    }
    return v / nrm;
  }

  // Decorrelated child seed for an independent stream (splitmix64 step).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace proxcert
