#include "c4t4/diagram_io.hpp"

#include <sstream>

namespace c4t4 {

using nlohmann::json;

json to_json(const Diagram& d, const Alphabet& a) {
    Topology t = topology(d);
    json j;
    j["vertices"] = json::array();
    for (int v = 0; v < t.vertex_count; ++v) j["vertices"].push_back(v);
    j["darts"] = json::array();
    for (std::size_t x = 0; x < d.dart_count(); ++x)
        j["darts"].push_back({int(x), int(x ^ 1), t.origin[x], a.name(d.label[x])});
    std::vector<std::vector<int>> rot(std::size_t(t.vertex_count));
    std::vector<bool> seen(d.dart_count(), false);
    for (std::size_t x = 0; x < d.dart_count(); ++x) {
        if (seen[x]) continue;
        auto& r = rot[std::size_t(t.origin[x])];
        for (int y = int(x); !seen[std::size_t(y)]; y = d.next[std::size_t(y ^ 1)]) {
            seen[std::size_t(y)] = true;
            r.push_back(y);
        }
    }
    j["rotation"] = rot;
    j["outer"] = d.outer;
    return j;
}

Diagram diagram_from_json(const json& j, const Alphabet& a) {
    Diagram d;
    try {
        const auto& darts = j.at("darts");
        const std::size_t n = darts.size();
        d.label.assign(n, 0);
        d.next.assign(n, -1);
        for (const auto& q : darts) {
            int id = q.at(0).get<int>(), iv = q.at(1).get<int>();
            if (id < 0 || std::size_t(id) >= n || iv != (id ^ 1)) throw ParseError("dart ids must be paired as (2k, 2k+1)", 0);
            Word w = a.parse(q.at(3).get<std::string>());
            if (w.size() != 1) throw ParseError("dart label must be a single letter", 0);
            d.label[std::size_t(id)] = w[0];
        }
        // rotation gives sigma; next(e) = sigma(e^-1)
        for (const auto& r : j.at("rotation")) {
            std::vector<int> ds = r.get<std::vector<int>>();
            for (std::size_t i = 0; i < ds.size(); ++i) {
                int x = ds[i], y = ds[(i + 1) % ds.size()];
                if (x < 0 || std::size_t(x) >= n || y < 0 || std::size_t(y) >= n) throw ParseError("rotation dart out of range", 0);
                d.next[std::size_t(x ^ 1)] = y;
            }
        }
        for (int x : d.next)
            if (x < 0) throw ParseError("dart missing from rotation lists", 0);
        d.outer = j.at("outer").get<int>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad diagram json: ") + e.what(), 0);
    }
    return d;
}

std::string to_dot(const Diagram& d, const Alphabet& a) {
    Topology t = topology(d);
    std::ostringstream o;
    o << "digraph diagram {\n";
    for (int v = 0; v < t.vertex_count; ++v) o << "  v" << v << " [shape=point];\n";
    for (std::size_t x = 0; x < d.dart_count(); x += 2) {
        // draw each edge along its positive-label dart
        std::size_t y = is_inverse(d.label[x]) ? x ^ 1 : x;
        o << "  v" << t.origin[y] << " -> v" << t.target(int(y)) << " [label=\"" << a.name(d.label[y]) << "\"";
        if (t.is_outer(int(x)) || t.is_outer(int(x ^ 1))) o << ", penwidth=2";
        o << "];\n";
    }
    o << "}\n";
    return o.str();
}

std::string region_adjacency_dot(const Diagram& d, const Alphabet& a) {
    Topology t = topology(d);
    std::ostringstream o;
    o << "graph regions {\n";
    for (int f : t.regions()) {
        Word w;
        for (int x : t.faces[std::size_t(f)]) w.push_back(d.label[std::size_t(x)]);
        o << "  r" << f << " [label=\"" << a.format(w) << "\"];\n";
    }
    for (std::size_t x = 0; x < d.dart_count(); x += 2) {
        int f = t.face[x], g = t.face[x ^ 1];
        if (f == t.outer_face || g == t.outer_face || f == g) continue;
        o << "  r" << std::min(f, g) << " -- r" << std::max(f, g) << ";\n";
    }
    o << "}\n";
    return o.str();
}

}  // namespace c4t4
