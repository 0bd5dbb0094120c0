#pragma once

// YAML form of a SequenceSpec:
//
//   family: SU11DiscreteSeries
//   validation: strict          # optional, strict | relaxed
//   parameters: {j: 3/2}
//   values: [1, 3/2, 2]         # ExplicitList
//   rho: [1, 0.5, 0.25]         # AnalyticFunctionRho
//   numerator: [0, 1]           # RationalInN, ascending powers of n
//   denominator: [1]
//
// Rational entries may be integers, "p/q" strings or decimal literals;
// decimals are read exactly.

#include <cohpoly/sequence.hpp>

#include <yaml-cpp/yaml.h>

#include <string>
#include <string_view>

namespace cohpoly {

YAML::Node to_yaml_node(const SequenceSpec& spec);
SequenceSpec sequence_from_yaml_node(const YAML::Node& node);

std::string to_yaml(const SequenceSpec& spec);
SequenceSpec sequence_from_yaml(std::string_view text);

/// Doubles are written with 17 significant digits so they read back
/// bit-identically.
std::string format_double(double value);

}  // namespace cohpoly
