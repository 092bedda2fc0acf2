#pragma once

#include <stdexcept>
#include <string>

namespace kgbench {

struct dimension_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite value produced by an operator or scheme; carries context
// (e.g. the wavenumber index) in the message.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a trajectory exceeds the nodal amplitude threshold or goes
// non-finite. Sweeps catch this and flag the cell instead of failing.
struct blowup_error : std::runtime_error {
  int step = -1;
  explicit blowup_error(const std::string& what, int n = -1)
      : std::runtime_error(what), step(n) {}
};

struct convergence_error : std::runtime_error {
  double last_increment = 0.0;
  convergence_error(const std::string& what, double incr)
      : std::runtime_error(what), last_increment(incr) {}
};

struct reference_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct checksum_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace kgbench
