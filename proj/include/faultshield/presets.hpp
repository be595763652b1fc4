#pragma once

#include <optional>
#include <string_view>

#include "faultshield/params.hpp"

namespace faultshield {

// Named operating points.  l is the minimal width covering q (overridable at
// the CLI); w is the default word split.  The kyber128 entry is the
// reduced-degree demo for the transform engine: 3329 supports a 2n-th root
// only up to n = 128 (3329 == 1 mod 256 but not mod 512).
struct ParameterSet {
  std::string_view name;
  unsigned l, w;
  u64 q;
  u32 n;
};

const std::vector<ParameterSet>& parameter_sets();
std::optional<ParameterSet> find_parameter_set(std::string_view name);

}  // namespace faultshield
