#pragma once

#include "c4t4/bsd.hpp"
#include "c4t4/oracle.hpp"

#include <json.hpp>

namespace c4t4 {

// {"generators": [...], "relators": [...]}
nlohmann::json to_json(const Presentation& p);
// Throws ParseError.
Presentation presentation_from_json(const nlohmann::json& j);
// Text or JSON, chosen by the first non-blank character.
Presentation read_presentation(const std::string& path);

// [{"kind", "position", "from", "to"}] with "relator" set on substitutions.
nlohmann::json to_json(const Certificate& c, const Alphabet& a);
Certificate certificate_from_json(const nlohmann::json& j, const Alphabet& a);

nlohmann::json ball_stats(const MetricBall& ball);

// {"header": [...], "generators": n, "relators": [{"word", "r1", "r2", "i", "j", "k", "l", "piece"}]}
nlohmann::json provenance_json(const BsdPresentation& pt);

}  // namespace c4t4
