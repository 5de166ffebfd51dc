#include "c4t4/io.hpp"

#include <fstream>
#include <sstream>

namespace c4t4 {

nlohmann::json to_json(const Presentation& p) {
    nlohmann::json j;
    j["generators"] = p.alphabet.names();
    auto rels = nlohmann::json::array();
    for (const auto& r : p.relators) rels.push_back(p.format(r));
    j["relators"] = rels;
    return j;
}

Presentation presentation_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("generators") || !j.contains("relators"))
        throw ParseError("presentation JSON needs 'generators' and 'relators'", 0);
    try {
        return make_presentation(j["generators"].get<std::vector<std::string>>(),
                                 j["relators"].get<std::vector<std::string>>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what(), 0);
    }
}

Presentation read_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return presentation_from_json(nlohmann::json::parse(text));
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(e.what(), 0);
        }
    }
    return parse_presentation(text);
}

nlohmann::json to_json(const Certificate& c, const Alphabet& a) {
    auto out = nlohmann::json::array();
    for (const auto& s : c.steps) {
        nlohmann::json j{{"kind", kind_name(s.kind)}, {"position", s.pos}, {"from", a.format(s.from)},
                         {"to", a.format(s.to)}};
        if (s.kind == Step::Kind::Substitute) j["relator"] = a.format(s.from + inverse(s.to));
        out.push_back(j);
    }
    return out;
}

Certificate certificate_from_json(const nlohmann::json& j, const Alphabet& a) {
    Certificate c;
    for (const auto& s : j) {
        std::string kind = s.at("kind").get<std::string>();
        Step::Kind k = Step::Kind::Substitute;
        if (kind == kind_name(Step::Kind::FreeDelete))
            k = Step::Kind::FreeDelete;
        else if (kind == kind_name(Step::Kind::FreeInsert))
            k = Step::Kind::FreeInsert;
        else if (kind != kind_name(Step::Kind::Substitute))
            throw ParseError("unknown step kind " + kind, 0);
        c.steps.push_back({k, s.at("position").get<std::size_t>(), a.parse(s.at("from").get<std::string>()),
                           a.parse(s.at("to").get<std::string>())});
    }
    return c;
}

nlohmann::json ball_stats(const MetricBall& ball) {
    std::size_t members = 0;
    for (auto c : ball.classes()) members += ball.members(c).size();
    return {{"radius", ball.radius()},
            {"cap", ball.cap()},
            {"saturated", ball.saturated()},
            {"classes", ball.class_count()},
            {"words", members}};
}

nlohmann::json provenance_json(const BsdPresentation& pt) {
    nlohmann::json j;
    auto header = nlohmann::json::array();
    for (std::size_t r = 0; r < pt.base.relators.size(); ++r)
        header.push_back("R" + std::to_string(r + 1) + ": " + pt.base.format(pt.base.relators[r]));
    j["header"] = header;
    j["generators"] = pt.generator_count();
    auto rels = nlohmann::json::array();
    for (std::size_t n = 0; n < pt.tilde.relators.size(); ++n) {
        const auto& p = pt.provenance[n];
        rels.push_back({{"word", pt.tilde.format(pt.tilde.relators[n])},
                        {"r1", p.r1 + 1},
                        {"r2", p.r2 + 1},
                        {"i", p.i},
                        {"j", p.j},
                        {"k", p.k},
                        {"l", p.l},
                        {"piece", pt.base.format(p.piece)}});
    }
    j["relators"] = rels;
    return j;
}

}  // namespace c4t4
