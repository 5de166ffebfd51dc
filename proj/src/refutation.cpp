#include "c4t4/refutation.hpp"

#include "c4t4/diagram_io.hpp"

#include <algorithm>
#include <map>

namespace c4t4 {

namespace {

void for_each_word(std::size_t letters, std::size_t len, const std::function<void(const Word&)>& fn) {
    Word w(len, 0);
    for (;;) {
        fn(w);
        std::size_t i = len;
        while (i > 0 && ++w[i - 1] == letters) w[--i] = 0;
        if (i == 0) return;
    }
}

bool bounds_small_diagram(const DominoIndex& idx, AreaSolver& solver, const Word& b) {
    if (b.size() == 6) return !idx.splits(b).empty();
    auto a = solver.area(b, 2);
    return a && *a > 0;
}

}  // namespace

std::optional<Shortable> find_shortable(const DominoIndex& idx, AreaSolver& solver, const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t pos = 0; pos < n; ++pos)
        for (std::size_t k = std::min<std::size_t>(6, n - pos); k >= 3; --k) {
            Word w2 = w.substr(pos, k);
            for (std::size_t m = 0; m < k && k + m <= 6; ++m) {
                if ((k + m) % 2) continue;
                std::optional<Word> hit;
                for_each_word(idx.letter_count(), m, [&](const Word& v) {
                    if (!hit && bounds_small_diagram(idx, solver, w2 + inverse(v))) hit = v;
                });
                if (hit) return Shortable{pos, k, *hit};
            }
        }
    return std::nullopt;
}

std::optional<Shortable> find_shortable(const Presentation& p, const Word& w) {
    DominoIndex idx(p);
    AreaSolver solver(p);
    return find_shortable(idx, solver, w);
}

std::vector<ContainedDomino> contained_dominoes(const Diagram& d, const std::vector<int>& path, const DominoIndex& idx,
                                                Equivalence e) {
    std::vector<ContainedDomino> out;
    if (path.size() < 3) return out;
    Topology t = topology(d);
    std::set<int> path_edges;
    for (int x : path) path_edges.insert(x / 2);
    for (std::size_t i = 0; i + 3 <= path.size(); ++i) {
        int n0 = path[i];
        int d1 = t.face[std::size_t(n0)];
        if (d1 == t.outer_face || t.faces[std::size_t(d1)].size() != 4) continue;
        for (int in : t.faces[std::size_t(d1)]) {
            int d2 = t.face[std::size_t(in ^ 1)];
            if (d2 == t.outer_face || d2 == d1 || t.faces[std::size_t(d2)].size() != 4) continue;
            std::size_t shared = 0;
            for (int x : t.faces[std::size_t(d1)]) shared += t.face[std::size_t(x ^ 1)] == d2;
            if (shared != 1) continue;
            ContainedDomino c;
            int x = n0;
            bool ok = true;
            for (std::size_t j = 0; j < 6; ++j) {
                if (x == in || x == (in ^ 1)) ok = false;
                c.darts[j] = x;
                int y = d.next[std::size_t(x)];
                if (y == in)
                    y = d.next[std::size_t(in ^ 1)];
                else if (y == (in ^ 1))
                    y = d.next[std::size_t(in)];
                x = y;
            }
            if (!ok || x != n0 || c.darts[1] != path[i + 1] || c.darts[2] != path[i + 2]) continue;
            std::set<int> vs;
            for (int y : c.darts) vs.insert(t.origin[std::size_t(y)]);
            if (vs.size() != 6) continue;
            for (std::size_t j = 3; j < 6; ++j)
                if (path_edges.count(c.darts[j] / 2)) ok = false;
            if (!ok || t.is_outer(c.darts[3] ^ 1)) continue;

            std::size_t s = 0;
            while (t.face[std::size_t(c.darts[s])] == t.face[std::size_t(c.darts[(s + 5) % 6])]) ++s;
            int region = t.face[std::size_t(c.darts[s])];
            int inner = t.face[std::size_t(in)] == region ? in : in ^ 1;
            Domino dom;
            dom.first.push_back(d.label[std::size_t(inner)]);
            dom.second.push_back(d.label[std::size_t(inner ^ 1)]);
            for (std::size_t j = 0; j < 3; ++j) {
                dom.first.push_back(d.label[std::size_t(c.darts[(s + j) % 6])]);
                dom.second.push_back(d.label[std::size_t(c.darts[(s + 3 + j) % 6])]);
            }
            c.start = i;
            c.inner = in;
            c.first_region = d1;
            c.second_region = d2;
            c.biased = classify_biased(dom, (6 - s) % 6);
            c.stable = idx.is_stable(c.biased, e);
            out.push_back(c);
        }
    }
    return out;
}

namespace {

// Re-glues the two regions of c along the split (s, z) of its biased label.
void reglue(Diagram& d, const ContainedDomino& c, std::size_t s, Letter z) {
    const auto& n = c.darts;
    auto at = [&](std::size_t k) { return std::size_t(n[(s + k) % 6]); };
    const int e = c.inner;
    d.next[at(0)] = int(at(1));
    d.next[at(1)] = int(at(2));
    d.next[at(2)] = e;
    d.next[std::size_t(e)] = int(at(0));
    d.label[std::size_t(e)] = z;
    d.next[at(3)] = int(at(4));
    d.next[at(4)] = int(at(5));
    d.next[at(5)] = e ^ 1;
    d.next[std::size_t(e ^ 1)] = int(at(3));
    d.label[std::size_t(e ^ 1)] = inv(z);
}

// Fixes ill-positioned dominoes of `path` from right to left; returns the count.
std::size_t fix_path(Diagram& d, const std::vector<int>& path, const DominoIndex& idx, Equivalence e) {
    std::size_t fixed = 0, limit = path.size();
    for (;;) {
        std::optional<ContainedDomino> ill;
        for (const auto& c : contained_dominoes(d, path, idx, e))
            if (!c.well_positioned() && c.start < limit && (!ill || c.start > ill->start)) ill = c;
        if (!ill) return fixed;
        Word label = ill->biased.label();
        std::optional<std::pair<std::size_t, Letter>> pick;
        for (auto sp : idx.splits(label))
            if (realization_at(sp.first, sp.second).dtype == 2) {
                pick = sp;
                break;
            }
        if (!pick) throw ReplacementUnavailable("no 2-typed realization of an unstable 1-typed domino");
        reglue(d, *ill, pick->first, pick->second);
        limit = ill->start;
        ++fixed;
    }
}

}  // namespace

bool all_well_positioned(const Diagram& d, const BoundaryPath& alpha, const BoundaryPath& beta,
                         const DominoIndex& idx, Equivalence e) {
    for (const auto& c : contained_dominoes(d, alpha.darts, idx, e))
        if (!c.well_positioned()) return false;
    Diagram m = mirror(d);
    for (const auto& c : contained_dominoes(m, beta.darts, idx, e))
        if (!c.well_positioned()) return false;
    return true;
}

WellPositioned well_position(const Diagram& d, const BoundaryPath& alpha, const BoundaryPath& beta,
                             const DominoIndex& idx, Equivalence e) {
    WellPositioned out{d, 0, 0};
    const std::size_t max_passes = 2 * (alpha.darts.size() + beta.darts.size()) + 2;
    while (out.passes < max_passes) {
        ++out.passes;
        std::size_t fixed = fix_path(out.diagram, alpha.darts, idx, e);
        Diagram m = mirror(out.diagram);
        fixed += fix_path(m, beta.darts, idx, e);
        out.diagram = mirror(m);
        out.replacements += fixed;
        if (fixed == 0) return out;
    }
    throw Error("well-positioning did not reach a fixed point");
}

const char* kind_name(Refutation::Kind k) {
    switch (k) {
        case Refutation::Kind::Shortable: return "shortable";
        case Refutation::Kind::FreeReduction: return "free_reduction";
        case Refutation::Kind::ThickConfig: return "thick_config";
        case Refutation::Kind::ThinDiagram: return "thin_diagram";
    }
    return "?";
}

Refuter::Refuter(const Presentation& p, const MetricBall& ball, Gradings g, RefuteOptions opt)
    : ball_(ball), idx_(p), solver_(p), g_(std::move(g)), opt_(opt) {}

void Refuter::measure(Refutation& r) const {
    if (!ball_.in_universe(r.original) || !ball_.in_universe(r.replacement))
        throw OracleBudget("refutation leaves the ball universe");
    r.certificate = ball_.certificate(r.original, r.replacement);
    r.fellow_constant = fellow_travel_constant(ball_, r.original, r.replacement);
}

Refutation Refuter::refute_shortable(const Word& w) {
    Refutation r;
    r.original = w;
    r.bound = 6;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i + 1] == inv(w[i])) {
            r.kind = Refutation::Kind::FreeReduction;
            r.pos = i;
            r.len = 2;
            r.replacement = w.substr(0, i) + w.substr(i + 2);
            measure(r);
            return r;
        }
    auto s = find_shortable(w);
    if (!s) throw NotApplicable("word is freely reduced and not shortable");
    r.kind = Refutation::Kind::Shortable;
    r.pos = s->pos;
    r.len = s->len;
    r.replacement = w.substr(0, s->pos) + s->replacement + w.substr(s->pos + s->len);
    r.diagram = solver_.witness(w.substr(s->pos, s->len) + inverse(s->replacement), 2);
    measure(r);
    return r;
}

Refutation Refuter::refute_thick(const Diagram& d, const BoundaryPath& alpha) {
    const Word& w = alpha.label;
    if (triplets_.empty()) triplets_ = stable_triplets(idx_, opt_.equivalence).triplets;
    for (const auto& c : detect_thick_configurations(d, alpha)) {
        if (c.kind != ThickConfiguration::Kind::Second) continue;
        const std::size_t i = c.mu_start;
        int dy = alpha.darts[i], da = alpha.darts[i + 1];
        int n1 = d.next[std::size_t(da)], n2 = d.next[std::size_t(n1)];
        if (d.next[std::size_t(dy)] != da || d.next[std::size_t(n2)] != dy) continue;
        Letter x = w[i - 1], y = w[i], z = inv(d.label[std::size_t(n2)]), b = inv(d.label[std::size_t(n1)]);
        Word u = w;
        u[i] = z;
        u[i + 1] = b;
        if (!precedes(u, w, g_, opt_.mode)) continue;
        Refutation r;
        r.original = w;
        r.replacement = u;
        r.kind = Refutation::Kind::ThickConfig;
        r.bound = 4;
        r.pos = i - 1;
        r.len = 3;
        r.diagram = d;
        r.triplet = Triplet{x, y, z};
        r.triplet_stable = triplets_.count(*r.triplet) != 0;
        r.grade_decreases = g_.has(x) && g_.grade(x, z) < g_.grade(x, y);
        measure(r);
        return r;
    }
    throw NotApplicable("no second-kind thick configuration gives a smaller word");
}

Word Refuter::least_equal(const Word& w) const {
    const Word* best = nullptr;
    for (const auto& m : ball_.members(ball_.class_of(w)))
        if (!best || precedes(m, *best, g_, opt_.mode)) best = &m;
    if (!best) throw OracleBudget("class has no member within the ball radius");
    return *best;
}

Diagram Refuter::equality_diagram(const Word& w, const Word& u) {
    auto m = solver_.witness(w + inverse(u), opt_.area_limit);
    if (!m) throw OracleBudget("no equality diagram within the area limit");
    return *m;
}

std::optional<Refutation> Refuter::refute(const Word& w) {
    if (!ball_.in_universe(w)) throw OracleBudget("word reduces outside the ball universe");
    try {
        auto r = refute_shortable(w);
        if (precedes(r.replacement, w, g_, opt_.mode)) return r;
    } catch (const NotApplicable&) {
    }
    Word u = least_equal(w);
    if (!precedes(u, w, g_, opt_.mode)) return std::nullopt;

    Diagram m = equality_diagram(w, u);
    auto [alpha, beta] = split_boundary(m, w.size());
    WellPositioned wp{m, 0, 0};
    try {
        wp = well_position(m, alpha, beta, idx_, opt_.equivalence);
    } catch (const ReplacementUnavailable&) {
    }
    try {
        return refute_thick(wp.diagram, alpha);
    } catch (const NotApplicable&) {
    }

    Refutation r;
    r.original = w;
    r.kind = Refutation::Kind::ThinDiagram;
    r.bound = 4;
    r.pos = 0;
    r.len = w.size();
    r.diagram = wp.diagram;
    r.replacement = u;
    measure(r);
    if (r.within_bound()) return r;
    // A shorter equal word that fellow travels with w.
    std::optional<Refutation> best;
    for (const auto& v : ball_.members(ball_.class_of(w))) {
        if (v.size() >= w.size()) break;
        Refutation s = r;
        s.replacement = v;
        s.diagram.reset();
        measure(s);
        if (s.within_bound() && (!best || precedes(v, best->replacement, g_, opt_.mode))) best = s;
    }
    return best ? *best : r;
}

NormalForm Refuter::normalize(const Word& w) {
    NormalForm out{w, {}, {}};
    while (auto r = refute(out.word)) {
        if (out.chain.size() >= opt_.max_chain) throw OracleBudget("refutation chain exceeds its budget");
        out.certificate.append(r->certificate);
        out.word = r->replacement;
        out.chain.push_back(std::move(*r));
    }
    return out;
}

nlohmann::json to_json(const Refutation& r, const Alphabet& a) {
    nlohmann::json j;
    j["kind"] = kind_name(r.kind);
    j["original"] = a.format(r.original);
    j["replacement"] = a.format(r.replacement);
    j["span"] = {r.pos, r.len};
    j["fellow_constant"] = r.fellow_constant;
    j["bound"] = r.bound;
    j["certificate_steps"] = r.certificate.steps.size();
    if (r.triplet) {
        j["triplet"] = {a.name((*r.triplet)[0]), a.name((*r.triplet)[1]), a.name((*r.triplet)[2])};
        j["triplet_stable"] = r.triplet_stable;
        j["grade_decreases"] = r.grade_decreases;
    }
    if (r.diagram) j["diagram"] = to_json(*r.diagram, a);
    return j;
}

nlohmann::json to_json(const NormalForm& n, const Alphabet& a) {
    nlohmann::json j;
    j["word"] = a.format(n.word);
    auto chain = nlohmann::json::array();
    for (const auto& r : n.chain) chain.push_back(to_json(r, a));
    j["chain"] = chain;
    j["certificate_steps"] = n.certificate.steps.size();
    return j;
}

EndgameReport fellow_traveller_endgame(const MetricBall& ball, const Gradings& g, std::size_t max_len,
                                       std::size_t letters, std::size_t s, OrderMode mode) {
    EndgameReport rep;
    std::map<std::size_t, Word> least;
    for (const auto& w : minimal_words_sample(ball, g, max_len, mode)) least.emplace(ball.class_of(w), w);
    std::vector<Word> sides{Word{}};
    for (std::size_t l = 0; l < letters; ++l) sides.push_back(Word(1, Letter(l)));
    for (const auto& [cw, w] : least)
        for (const auto& x : sides)
            for (const auto& y : sides) {
                if (!ball.in_universe(x + w + inverse(y)) || !ball.in_universe(x + w)) {
                    ++rep.uncertified;
                    continue;
                }
                auto it = least.find(ball.class_of(x + w + inverse(y)));
                if (it == least.end()) continue;
                Word xw = x + w, uy = it->second + y;
                if (!ball.in_universe(uy)) {
                    ++rep.uncertified;
                    continue;
                }
                ++rep.pairs;
                std::size_t k = fellow_travel_constant(ball, xw, uy);
                if (k > rep.max_constant) {
                    rep.max_constant = k;
                    rep.worst = std::array<Word, 2>{xw, uy};
                }
                rep.violations += k > 2 * s + 1;
                if (xw.size() > ball.radius() || uy.size() > ball.radius()) continue;
                if (!is_geodesic(ball, xw).geodesic || !is_geodesic(ball, uy).geodesic) continue;
                ++rep.hausdorff_checked;
                auto h = check_hausdorff_fellow_travel(ball, xw, uy, s);
                rep.hausdorff_unmet += h.status == HausdorffReport::Status::PreconditionUnmet;
                rep.hausdorff_violated += h.status == HausdorffReport::Status::Violated;
            }
    return rep;
}

}  // namespace c4t4
