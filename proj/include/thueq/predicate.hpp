#pragma once

#include <string>
#include <utility>

#include "thueq/real.hpp"

namespace thueq {

/// Outcome of evaluating one inequality. `holds` means the certified
/// enclosures do not refute it; `slack` is (right side - left side) at the
/// midpoints, so negative slack accompanies a failure.
struct Predicate {
  std::string id;
  bool holds = true;
  double slack = 0;
  bool applicable = true;  ///< false: hypotheses not met, reported for information
  std::string note;
};

/// lhs <= rhs, not refuted by the enclosures.
inline Predicate predicate_le(std::string id, const Ball& lhs, const Ball& rhs) {
  Predicate p;
  p.id = std::move(id);
  p.holds = possibly_le(lhs, rhs);
  p.slack = (rhs.mid() - lhs.mid()).to_double();
  return p;
}

/// lhs < rhs strictly: fails if the enclosures prove lhs >= rhs.
inline Predicate predicate_lt(std::string id, const Ball& lhs, const Ball& rhs) {
  Predicate p;
  p.id = std::move(id);
  p.holds = lhs.lo() < rhs.hi();
  p.slack = (rhs.mid() - lhs.mid()).to_double();
  return p;
}

}  // namespace thueq
