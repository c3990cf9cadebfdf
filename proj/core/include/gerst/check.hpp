#pragma once

#include <string>
#include <vector>

#include "gerst/scalar.hpp"

namespace gerst {

/// Outcome of one exact identity check: the summed defect norm over all cases.
struct IdentityCheck {
  IdentityCheck() = default;
  explicit IdentityCheck(std::string n) : name(std::move(n)) {}

  std::string name;
  Scalar defect{0};
  std::size_t cases = 0;
  /// Short description of the first failing case, if any.
  std::string witness;

  bool passed() const { return defect.is_zero() && witness.empty(); }
};

/// Dimension comparison: passes when every expected entry matches.
struct DimensionCheck {
  std::string name;
  std::vector<long> expected;
  std::vector<long> actual;

  bool passed() const { return expected == actual; }
};

}  // namespace gerst
