#pragma once

#include <stdexcept>

namespace cftray {

// Quadrature exhausted its lobe/depth budget before meeting tolerance.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Empirical characteristic function nonpositive at a requested frequency
// (the frequency lies outside the effective zone; its logarithm is undefined).
class LogDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Too many quadrature nodes fell outside the effective zone, or the scale
// estimate degenerated; the input is corrupt or degenerate.
class AllNodesInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reference frequency response too close to zero to normalize against.
class DegenerateReference : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cftray
