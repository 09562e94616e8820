#pragma once

#include <stdexcept>
#include <string>

namespace proxcert {

// Base class for every error raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments or violated call preconditions. The CLI maps this to a usage
// failure (exit code 2).
struct InputError : Error {
  using Error::Error;
};

// Structurally inconsistent model data (empty feasible set, missing pieces,
// mismatched shapes inside a problem description).
struct ModelError : Error {
  using Error::Error;
};

// A numerical routine failed to reach its contract (iteration caps,
// non-finite values).
struct NumericalError : Error {
  using Error::Error;
};

// Instance generation could not produce a valid problem within its retry
// budget.
struct GenerationError : Error {
  using Error::Error;
};

// Point sampling exhausted its draw budget before collecting enough valid
// samples.
struct SamplingError : Error {
  using Error::Error;
};

}  // namespace proxcert
