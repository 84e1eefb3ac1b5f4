#ifndef FOON_EXPORTER_HPP
#define FOON_EXPORTER_HPP

#include <string>
#include <vector>

#include "foon/core.hpp"

namespace foon {

// Graphviz rendering: object nodes as boxes, one motion ellipse per unit,
// edges input -> motion -> output.
std::string to_dot(const std::vector<FunctionalUnit> &units);

// JSON schema, formatVersion 1:
//   {"formatVersion": 1,
//    "units": [{"inputs": [{"name", "states": [{"label", "ingredients",
//    "container"?}], "moving"}], "motion": {"name", "start"?, "end"?,
//    "assumed"}, "outputs": [...]}]}
std::string to_json(const std::vector<FunctionalUnit> &units);
std::vector<FunctionalUnit> from_json(const std::string &text);

}  // namespace foon

#endif
