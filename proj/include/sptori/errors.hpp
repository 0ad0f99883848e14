#pragma once

#include <stdexcept>
#include <string>

namespace sptori {

/// Caller supplied parameters outside the supported domain (bad prime,
/// p <= 2n, precision overflow, malformed triple text, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input violates a structural invariant (malformed pair, non-squarefree
/// characteristic polynomial, unpaired factor, ...).
class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A linear system had no unit pivot modulo p.
class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value would leave the p^-1 scale or the tracked precision ran out.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The torus construction hit a state its integrality claims rule out
/// (singular cross-Gram block, non-Lagrangian half, block mismatch).
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sptori
