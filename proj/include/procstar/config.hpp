#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace procstar {

/// Numerical tolerances shared by every module.
struct Tolerances {
  double alg = 1e-10;    // algebraic identities
  double spec = 1e-7;    // eigenvalue cluster separation
  double norm = 1e-6;    // norm comparisons
  double group = 1e-8;   // matrix identification in group closures
};

struct Caps {
  std::size_t group_order = 5000;
  std::size_t closure_size = 100000;
  int word_length = 12;
  int decompose_retries = 8;
  std::size_t dense_svd_max = 1000;
  std::size_t catalog_order = 120;
  std::size_t normal_lattice = 4096;
};

struct Config {
  Tolerances tol;
  Caps caps;
  std::uint64_t seed = 1;
};

/// Bad input: unsupported family, mismatched groups, malformed descriptors.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap would be exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical procedure could not certify its result at the configured tolerances.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bounded search finished without a result.
class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace procstar
