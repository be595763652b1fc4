#include "faultshield/presets.hpp"

namespace faultshield {

const std::vector<ParameterSet>& parameter_sets() {
  static const std::vector<ParameterSet> sets = {
      // name        l   w   q         n
      {"kyber",     12,  4,  3329,     256},
      {"dilithium", 24,  8,  8380417,  256},
      {"falcon",    14,  7,  12289,    512},
      {"ntru",      14,  7,  12289,    2048},
      {"kyber128",  12,  4,  3329,     128},
  };
  return sets;
}

std::optional<ParameterSet> find_parameter_set(std::string_view name) {
  for (const ParameterSet& s : parameter_sets())
    if (s.name == name) return s;
  return std::nullopt;
}

}  // namespace faultshield
