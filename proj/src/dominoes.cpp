#include "c4t4/dominoes.hpp"

#include <algorithm>
#include <sstream>

namespace c4t4 {

namespace {

std::uint64_t pack(Letter a, Letter b, Letter c, Letter d = 0) {
    return std::uint64_t(a) << 48 | std::uint64_t(b) << 32 | std::uint64_t(c) << 16 | std::uint64_t(d);
}

int type_at(std::size_t s) {
    static constexpr int t[3] = {3, 1, 2};
    return t[s % 3];
}

}  // namespace

Realization realization_at(std::size_t s, Letter z) { return {type_at(s), s < 3 ? z : inv(z)}; }

Diagram Domino::diagram() const {
    auto b = DiagramBuilder::polygon(first);
    b.attach(0, 1, second.substr(1));
    b.rotate(3);
    return b.build();
}

Domino Domino::mirror() const {
    return {Word(1, inv(first[0])) + inverse(first.substr(1)), Word(1, first[0]) + inverse(second.substr(1))};
}

Domino Domino::canonical() const {
    Domino m = mirror();
    return std::min({*this, swapped(), m, m.swapped()});
}

bool Domino::reduced() const { return !free_reduce(boundary_label()).empty(); }

BiasedDomino classify_biased(const Domino& d, std::size_t basepoint) {
    basepoint %= 6;
    std::size_t s = (6 - basepoint) % 6;
    auto r = realization_at(s, d.inner_label());
    return {d, basepoint, r.dtype, r.inner};
}

int classify_biased(const Diagram& d, int base) {
    auto topo = topology(d);
    auto cyc = boundary_cycle(d, base).darts;
    std::size_t t = 1;
    while (t < cyc.size() && topo.face[cyc[t]] == topo.face[cyc[0]]) ++t;
    return int(t);
}

DominoIndex::DominoIndex(const Presentation& p) : closure_(p), letters_(p.alphabet.letter_count()) {
    if (!check_H1(p)) throw H1Violated("relators must be cyclically reduced of length 4");
    for (const auto& r : closure_.relators()) {
        quads_.insert(pack(r[0], r[1], r[2], r[3]));
        completions_[pack(r[0], r[1], r[2])].push_back(r[3]);
    }
}

std::vector<std::pair<std::size_t, Letter>> DominoIndex::splits(const Word& label) const {
    std::vector<std::pair<std::size_t, Letter>> out;
    if (label.size() != 6 || free_reduce(label).empty()) return out;
    for (std::size_t s = 0; s < 6; ++s) {
        auto at = [&](std::size_t k) { return label[(s + k) % 6]; };
        auto it = completions_.find(pack(at(0), at(1), at(2)));
        if (it == completions_.end()) continue;
        for (Letter z : it->second)
            if (quads_.count(pack(inv(z), at(3), at(4), at(5)))) out.emplace_back(s, z);
    }
    return out;
}

std::vector<Realization> DominoIndex::realizations(const Word& label) const {
    std::vector<Realization> out;
    for (auto [s, z] : splits(label)) out.push_back(realization_at(s, z));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool DominoIndex::is_stable(const BiasedDomino& d, Equivalence e) const {
    auto rs = realizations(d.label());
    if (e == Equivalence::Strict) return rs.size() == 1 && rs[0] == d.realization();
    return std::all_of(rs.begin(), rs.end(), [&](const Realization& r) { return r.dtype == d.dtype; });
}

void DominoIndex::for_each_gluing(const std::function<void(const Domino&)>& fn) const {
    const auto& rel = closure_.relators();
    for (const auto& a : rel) {
        auto [lo, hi] = closure_.prefix_range(Word(1, inv(a[0])));
        for (std::size_t n = lo; n < hi; ++n) {
            Domino d{a, rel[n]};
            if (d.reduced()) fn(d);
        }
    }
}

std::vector<Domino> enumerate_dominoes(const DominoIndex& idx) {
    std::vector<Domino> out;
    idx.for_each_gluing([&](const Domino& d) {
        if (d == d.canonical()) out.push_back(d);
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Domino> enumerate_dominoes(const Presentation& p) { return enumerate_dominoes(DominoIndex(p)); }

std::vector<Realization> realizations(const Presentation& p, const Word& label) {
    return DominoIndex(p).realizations(label);
}

bool is_stable(const BiasedDomino& d, const Presentation& p, Equivalence e) {
    return DominoIndex(p).is_stable(d, e);
}

std::array<Triplet, 4> domino_triplets(const Domino& d) {
    Letter z = d.first[0];
    Letter a1 = d.first[1], a3 = d.first[3], b1 = d.second[1], b3 = d.second[3];
    return {Triplet{a3, b1, z}, Triplet{inv(b1), inv(a3), z}, Triplet{b3, a1, inv(z)},
            Triplet{inv(a1), inv(b3), inv(z)}};
}

TripletScan stable_triplets(const DominoIndex& idx, Equivalence e) {
    TripletScan scan;
    idx.for_each_gluing([&](const Domino& d) {
        if (!(d == d.canonical())) return;
        ++scan.dominoes;
        if (!idx.is_stable(d, e)) return;
        ++scan.stable;
        for (const auto& t : domino_triplets(d)) scan.triplets.insert(t);
    });
    return scan;
}

std::set<Triplet> stable_triplets(const Presentation& p) { return stable_triplets(DominoIndex(p)).triplets; }

StabilityGraph stability_graph(const std::set<Triplet>& triplets, Letter x, std::size_t letter_count) {
    StabilityGraph g{x, letter_count, {}};
    for (auto it = triplets.lower_bound(Triplet{x, 0, 0}); it != triplets.end() && (*it)[0] == x; ++it)
        g.edges.insert({(*it)[1], (*it)[2]});
    return g;
}

StabilityGraph stability_graph(const Presentation& p, Letter x) {
    return stability_graph(stable_triplets(p), x, p.alphabet.letter_count());
}

namespace {

std::vector<std::vector<Letter>> adjacency(const StabilityGraph& g) {
    std::vector<std::vector<Letter>> adj(g.vertices);
    for (auto [y, z] : g.edges) adj.at(y).push_back(z);
    return adj;
}

}  // namespace

AcyclicReport assert_acyclic(const StabilityGraph& g) {
    auto adj = adjacency(g);
    std::vector<int> color(g.vertices, 0);
    std::vector<Letter> parent(g.vertices, 0);
    for (std::size_t root = 0; root < g.vertices; ++root) {
        if (color[root]) continue;
        std::vector<std::pair<Letter, std::size_t>> stack{{Letter(root), 0}};
        color[root] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i == adj[v].size()) {
                color[v] = 2;
                stack.pop_back();
                continue;
            }
            Letter u = adj[v][i++];
            if (color[u] == 1) {
                AcyclicReport r{false, {}};
                for (Letter w = v; w != u; w = parent[w]) r.cycle.push_back(w);
                r.cycle.push_back(u);
                std::reverse(r.cycle.begin(), r.cycle.end());
                return r;
            }
            if (color[u] == 0) {
                color[u] = 1;
                parent[u] = v;
                stack.push_back({u, 0});
            }
        }
    }
    return {};
}

bool GradingTable::satisfies(const StabilityGraph& g) const {
    std::set<int> seen(grades.begin(), grades.end());
    if (seen.size() != g.vertices || grades.size() != g.vertices) return false;
    if (!seen.empty() && (*seen.begin() < 1 || *seen.rbegin() > int(g.vertices))) return false;
    return std::all_of(g.edges.begin(), g.edges.end(), [&](auto e) { return grades[e.second] < grades[e.first]; });
}

GradingTable grading(const StabilityGraph& g) {
    auto ac = assert_acyclic(g);
    if (!ac.acyclic) throw CyclicGraph("stability graph has a cycle");
    auto adj = adjacency(g);
    std::vector<int> height(g.vertices, -1);
    std::function<int(Letter)> h = [&](Letter v) {
        if (height[v] >= 0) return height[v];
        int best = 0;
        for (Letter u : adj[v]) best = std::max(best, h(u) + 1);
        return height[v] = best;
    };
    std::vector<Letter> order(g.vertices);
    for (std::size_t v = 0; v < g.vertices; ++v) order[v] = Letter(v), h(Letter(v));
    std::stable_sort(order.begin(), order.end(), [&](Letter a, Letter b) { return height[a] < height[b]; });
    GradingTable t{g.x, std::vector<int>(g.vertices, 0)};
    for (std::size_t i = 0; i < order.size(); ++i) t.grades[order[i]] = int(i + 1);
    return t;
}

namespace {

// Label of the region of d on boundary position q, read from that edge.
Word region_from(const Domino& d, std::size_t q) {
    q %= 6;
    return q < 3 ? rotate(d.first, 1 + q) : rotate(d.second, q - 2);
}

}  // namespace

// Relators that mirror the region of N across x or y are skipped: the glued diagram is not reduced.
SubstitutionReport verify_stable_substitution(const DominoIndex& idx, std::size_t budget, Equivalence e) {
    SubstitutionReport rep;
    const auto& cl = idx.closure();
    for (const auto& d : enumerate_dominoes(idx)) {
        if (!idx.is_stable(d, e)) continue;
        for (const auto& v : {d, d.mirror()})
            for (std::size_t b = 0; b < 6; ++b) {
                auto bd = classify_biased(v, b);
                Word label = bd.label();
                if (!is_cyclically_reduced(label)) continue;
                auto [lo, hi] = cl.prefix_range(label.substr(0, 2));
                for (std::size_t n = lo; n < hi; ++n) {
                    if (rep.checked >= budget) {
                        rep.exhausted_budget = true;
                        return rep;
                    }
                    ++rep.checked;
                    const Word& r = cl.relators()[n];
                    if (region_from(v, b) == r || region_from(v, b + 1) == rotate(r, 1)) continue;
                    Word moved = Word{inv(r[3]), inv(r[2])} + label.substr(2);
                    auto found = idx.realizations(moved);
                    bool same = !found.empty() && std::all_of(found.begin(), found.end(), [&](auto& x) {
                        return x.dtype == bd.dtype;
                    });
                    ++rep.checked_by_type[std::size_t(bd.dtype)];
                    if (!same) {
                        rep.holds = false;
                        ++rep.failed_by_type[std::size_t(bd.dtype)];
                        SubstitutionWitness w{label, bd.dtype, r, moved, found};
                        if (!rep.witness) rep.witness = w;
                        auto& slot = rep.witness_by_type[std::size_t(bd.dtype)];
                        if (!slot) slot = w;
                    }
                }
            }
    }
    return rep;
}

SubstitutionReport verify_stable_substitution(const Presentation& p, std::size_t budget) {
    return verify_stable_substitution(DominoIndex(p), budget);
}

std::string to_dot(const StabilityGraph& g, const Alphabet& a) {
    std::ostringstream out;
    out << "digraph \"Gamma_" << a.name(g.x) << "\" {\n";
    for (std::size_t v = 0; v < g.vertices; ++v) out << "  \"" << a.name(Letter(v)) << "\";\n";
    for (auto [y, z] : g.edges) out << "  \"" << a.name(y) << "\" -> \"" << a.name(z) << "\";\n";
    out << "}\n";
    return out.str();
}

nlohmann::json dominoes_json(const std::vector<Domino>& ds, const DominoIndex& idx, const Alphabet& a) {
    auto arr = nlohmann::json::array();
    for (const auto& d : ds)
        arr.push_back({{"regions", {a.format(d.first), a.format(d.second)}},
                       {"inner", a.name(d.inner_label())},
                       {"boundary", a.format(d.boundary_label())},
                       {"stable", idx.is_stable(d)}});
    return arr;
}

nlohmann::json triplets_json(const std::set<Triplet>& ts, const Alphabet& a) {
    auto arr = nlohmann::json::array();
    for (const auto& t : ts) arr.push_back({a.name(t[0]), a.name(t[1]), a.name(t[2])});
    return arr;
}

nlohmann::json gradings_json(const std::vector<GradingTable>& gs, const Alphabet& a) {
    auto obj = nlohmann::json::object();
    for (const auto& g : gs) {
        auto row = nlohmann::json::object();
        for (std::size_t v = 0; v < g.grades.size(); ++v) row[a.name(Letter(v))] = g.grades[v];
        obj[a.name(g.x)] = row;
    }
    return obj;
}

}  // namespace c4t4
