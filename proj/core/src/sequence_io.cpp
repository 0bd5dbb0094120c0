#include <cohpoly/errors.hpp>
#include <cohpoly/sequence_io.hpp>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <set>

namespace cohpoly {

namespace {

std::string known_families() {
  std::string out;
  for (auto name : family_names()) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

Rational scalar_rational(const YAML::Node& node, const std::string& where) {
  if (!node.IsScalar()) throw ConfigError(where + ": expected a number or \"p/q\" string");
  try {
    return parse_rational(node.Scalar());
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

std::vector<Rational> rational_list(const YAML::Node& node, const std::string& where) {
  if (!node.IsSequence()) throw ConfigError(where + ": expected a list");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < node.size(); ++i)
    out.push_back(scalar_rational(node[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

double scalar_double(const YAML::Node& node, const std::string& where) {
  if (!node.IsScalar()) throw ConfigError(where + ": expected a number");
  const std::string& s = node.Scalar();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE) throw ConfigError(where + ": '" + s + "' is not a finite number");
  return v;
}

YAML::Node rational_seq(const std::vector<Rational>& values) {
  YAML::Node n(YAML::NodeType::Sequence);
  for (const auto& v : values) n.push_back(to_string(v));
  return n;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

YAML::Node to_yaml_node(const SequenceSpec& spec) {
  YAML::Node n;
  n["family"] = std::string(family_name(spec.family()));
  if (spec.validation() == Validation::Relaxed) n["validation"] = "relaxed";
  switch (spec.family()) {
    case Family::ExplicitList:
      n["values"] = rational_seq(spec.values());
      break;
    case Family::AnalyticFunctionRho: {
      YAML::Node r(YAML::NodeType::Sequence);
      for (double v : spec.rho()) r.push_back(format_double(v));
      n["rho"] = r;
      break;
    }
    case Family::RationalInN:
      n["numerator"] = rational_seq(spec.numerator_coefficients());
      n["denominator"] = rational_seq(spec.denominator_coefficients());
      break;
    default:
      if (!spec.parameters().empty()) {
        YAML::Node p(YAML::NodeType::Map);
        for (const auto& [k, v] : spec.parameters()) p[k] = to_string(v);
        n["parameters"] = p;
      }
  }
  return n;
}

SequenceSpec sequence_from_yaml_node(const YAML::Node& node) {
  if (!node || !node.IsMap()) throw ConfigError("sequence: expected a mapping with a 'family' key");
  static const std::set<std::string> allowed{"family", "validation", "parameters", "values",
                                             "rho",    "numerator",  "denominator"};
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError("sequence: unknown key '" + key + "'");
  }
  if (!node["family"]) throw ConfigError("sequence: missing 'family'");
  const auto name = node["family"].as<std::string>();
  const auto family = family_from_name(name);
  if (!family) throw ConfigError("unknown family '" + name + "'; known families: " + known_families());

  Validation v = Validation::Strict;
  if (node["validation"]) {
    const auto mode = node["validation"].as<std::string>();
    if (mode == "relaxed")
      v = Validation::Relaxed;
    else if (mode != "strict")
      throw ConfigError("sequence.validation: expected 'strict' or 'relaxed', got '" + mode + "'");
  }

  auto require = [&](const char* key) {
    if (!node[key]) throw ConfigError("sequence: family " + name + " needs '" + key + "'");
    return node[key];
  };

  switch (*family) {
    case Family::ExplicitList:
      return SequenceSpec::explicit_list(rational_list(require("values"), "sequence.values"));
    case Family::AnalyticFunctionRho: {
      const auto r = require("rho");
      if (!r.IsSequence()) throw ConfigError("sequence.rho: expected a list");
      std::vector<double> rho;
      for (std::size_t i = 0; i < r.size(); ++i)
        rho.push_back(scalar_double(r[i], "sequence.rho[" + std::to_string(i) + "]"));
      return SequenceSpec::analytic_rho(std::move(rho));
    }
    case Family::RationalInN:
      return SequenceSpec::rational_in_n(rational_list(require("numerator"), "sequence.numerator"),
                                         rational_list(require("denominator"), "sequence.denominator"));
    default:
      break;
  }

  std::vector<SequenceSpec::NamedParameter> params;
  if (const auto p = node["parameters"]) {
    if (!p.IsMap()) throw ConfigError("sequence.parameters: expected a mapping");
    const auto names = SequenceSpec::parameter_names(*family);
    for (const auto& kv : p) {
      const auto key = kv.first.as<std::string>();
      if (std::find(names.begin(), names.end(), key) == names.end())
        throw ConfigError("sequence.parameters: family " + name + " has no parameter '" + key + "'");
      params.emplace_back(key, scalar_rational(kv.second, "sequence.parameters." + key));
    }
  }
  return SequenceSpec::make(*family, std::move(params), v);
}

std::string to_yaml(const SequenceSpec& spec) {
  YAML::Emitter out;
  out << to_yaml_node(spec);
  return std::string(out.c_str()) + "\n";
}

SequenceSpec sequence_from_yaml(std::string_view text) {
  YAML::Node node;
  try {
    node = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed YAML: ") + e.what());
  }
  return sequence_from_yaml_node(node);
}

}  // namespace cohpoly
