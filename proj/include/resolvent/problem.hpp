#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "resolvent/euler.hpp"

namespace resolvent {

using Json = nlohmann::ordered_json;

/// Command parameters; CLI flags override the problem's `params` stanza.
struct RunOptions {
  std::string order = "grevlex";
  std::size_t max_depth = 8;
  long degree_cap = 40;
  std::uint64_t seed = 0;
};

struct ParamOverrides {
  std::optional<std::string> order;
  std::optional<std::size_t> max_depth;
  std::optional<long> degree_cap;
  std::optional<std::uint64_t> seed;
};

/// A validated problem file. Matrices and complexes live on `chart`; graded
/// matrices use the ring stanza's variables as homogeneous coordinates.
struct Problem {
  Json source;
  RunOptions options;
  ChartPtr chart;
  std::map<std::string, MatrixHom> matrices;
  std::map<std::string, ComplexOnChart> complexes;
  std::map<std::string, GradedMatrix> graded;
  std::optional<Geometry> geometry;
  std::optional<std::string> target;
  std::optional<std::string> compare;
  std::vector<std::uint64_t> seeds;
};

/// Throws ParseError (or Error with code Parse) naming the offending stanza.
Problem load_problem(const Json& source, const ParamOverrides& overrides = {});
Problem load_problem_text(const std::string& text, const ParamOverrides& overrides = {});

MonomialOrder parse_order(const std::string& name);

}  // namespace resolvent
