// Shared error types and small numeric helpers.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace fullspec {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (edge lists, CSV, config files).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Semantically invalid arguments (self-loops, missing labels, infeasible
// generator targets, guarded dense materializations).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A mathematical precondition of an operation does not hold (repeated
// eigenvalues, vanishing spectral coefficients, disconnected graphs).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Mismatched matrix/vector dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Numerical failure (eigensolver non-convergence, singular systems).
class NumericError : public Error {
 public:
  using Error::Error;
};

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Derives an independent stream for sub-tasks (per-trial, per-cell seeds).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{seed, stream};
  std::uint64_t out[2];
  seq.generate(out, out + 2);
  return out[0] ^ (out[1] << 1);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double normal(Rng& rng, double mean = 0.0, double stddev = 1.0) {
  return std::normal_distribution<double>(mean, stddev)(rng);
}

}  // namespace fullspec
