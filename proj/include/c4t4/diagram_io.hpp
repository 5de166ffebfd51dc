#pragma once

#include "c4t4/diagram.hpp"

#include <json.hpp>

namespace c4t4 {

// {"vertices": [...], "darts": [[id, inverse, origin, label]], "rotation": [[dart...]], "outer": dart}
nlohmann::json to_json(const Diagram& d, const Alphabet& a);
Diagram diagram_from_json(const nlohmann::json& j, const Alphabet& a);

std::string to_dot(const Diagram& d, const Alphabet& a);
std::string region_adjacency_dot(const Diagram& d, const Alphabet& a);

}  // namespace c4t4
