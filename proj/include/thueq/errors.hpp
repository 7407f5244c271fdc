#pragma once

#include <stdexcept>
#include <string>

namespace thueq {

/// Malformed textual input (coefficient strings, config files, scan specs).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold: reducible form,
/// pair that is not a solution, coincident indices, and so on.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Root isolation failed to certify within the precision cap, or a
/// certified quantity contradicts an identity it must satisfy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The unit search could not produce a lattice of the required rank.
class InsufficientUnitsError : public std::runtime_error {
 public:
  InsufficientUnitsError(int achieved, int required)
      : std::runtime_error("unit search reached rank " + std::to_string(achieved) +
                           " of required " + std::to_string(required)),
        achieved_rank(achieved),
        required_rank(required) {}
  int achieved_rank;
  int required_rank;
};

/// A phi difference could not be written as an integer combination of the
/// lattice basis within tolerance.
class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An output or journal file could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace thueq
