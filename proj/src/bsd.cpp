#include "c4t4/bsd.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace c4t4 {

Letter BsdPresentation::gen(std::size_t r, std::size_t i, bool inverse) const {
    return make_letter(int(offset[r] + i - 1), inverse);
}

std::pair<std::size_t, std::size_t> BsdPresentation::source(Letter x) const {
    std::size_t g = std::size_t(gen_of(x));
    auto it = std::upper_bound(offset.begin(), offset.end(), g);
    std::size_t r = std::size_t(it - offset.begin()) - 1;
    return {r, g - offset[r] + 1};
}

Word BsdPresentation::relator_word(const BsdProvenance& p) const {
    return Word{gen(p.r1, p.i, true), gen(p.r1, p.j), gen(p.r2, p.l, true), gen(p.r2, p.k)};
}

std::string BsdPresentation::header() const {
    std::ostringstream o;
    for (std::size_t r = 0; r < base.relators.size(); ++r)
        o << "R" << r + 1 << ": " << base.format(base.relators[r]) << "\n";
    return o.str();
}

BsdPresentation bsd(const Presentation& p) {
    BsdPresentation pt;
    pt.base.alphabet = p.alphabet;
    std::unordered_set<Word> seen;
    for (const Word& r : p.relators)
        if (seen.insert(r).second) pt.base.relators.push_back(r);
    if (!is_symmetrically_closed(pt.base))
        throw NotSymmetricallyClosed("relators are not symmetrically closed");
    pt.free_factor_caveat = !every_generator_is_piece(pt.base).holds;

    const auto& R = pt.base.relators;
    std::vector<std::string> names;
    for (std::size_t r = 0; r < R.size(); ++r) {
        pt.offset.push_back(names.size());
        for (std::size_t i = 1; i <= R[r].size(); ++i)
            names.push_back("e[R" + std::to_string(r + 1) + "," + std::to_string(i) + "]");
    }
    pt.tilde.alphabet = Alphabet(names);

    // all (relator, start) pairs, grouped by the rotation they spell
    struct Start {
        std::size_t r, i;
        Word rot;
    };
    std::vector<Start> starts;
    for (std::size_t r = 0; r < R.size(); ++r)
        for (std::size_t i = 1; i <= R[r].size(); ++i) starts.push_back({r, i, rotate(R[r], i - 1)});

    std::unordered_set<Word> classes;
    for (const Start& s1 : starts)
        for (const Start& s2 : starts) {
            if (s1.rot == s2.rot) continue;
            std::size_t lcp = 0;
            while (lcp < s1.rot.size() && lcp < s2.rot.size() && s1.rot[lcp] == s2.rot[lcp]) ++lcp;
            const std::size_t n1 = s1.rot.size(), n2 = s2.rot.size();
            for (std::size_t m = 1; m <= lcp; ++m) {
                BsdProvenance pr;
                pr.r1 = s1.r;
                pr.r2 = s2.r;
                pr.i = s1.i;
                pr.j = (s1.i - 1 + m) % n1 + 1;
                pr.k = s2.i;
                pr.l = (s2.i - 1 + m) % n2 + 1;
                pr.piece = s1.rot.substr(0, m);
                Word t = pt.relator_word(pr);
                if (!classes.insert(cyclic_normal_form(t)).second) continue;
                pt.tilde.relators.push_back(t);
                pt.provenance.push_back(std::move(pr));
            }
        }
    return pt;
}

bool in_Y(const BsdPresentation& pt, Letter a, Letter b) {
    if (!is_inverse(a) || is_inverse(b)) return false;
    auto [ra, ia] = pt.source(a);
    auto [rb, ib] = pt.source(b);
    return ra == rb && ia != ib;
}

bool has_bsd_shape(const BsdPresentation& pt, const Word& t) {
    return t.size() == 4 && in_Y(pt, t[0], t[1]) && in_Y(pt, t[2], t[3]);
}

ShapeCheck check_shape(const BsdPresentation& pt) {
    ShapeCheck c;
    for (std::size_t n = 0; n < pt.tilde.relators.size(); ++n)
        if (!has_bsd_shape(pt, pt.tilde.relators[n])) {
            c.ok = false;
            c.relator = n;
            return c;
        }
    return c;
}

Word psi(const BsdPresentation& pt, const Word& pair) {
    if (pair.size() != 2 || !in_Y(pt, pair[0], pair[1])) throw NotInY("not of the form (e_i^R)^-1 e_j^R with i != j");
    auto [r, i] = pt.source(pair[0]);
    std::size_t j = pt.source(pair[1]).second;
    const Word& R = pt.base.relators[r];
    const std::size_t n = R.size();
    return rotate(R, i - 1).substr(0, (j + n - i) % n);
}

Alphabet gamma_alphabet(const BsdPresentation& pt) {
    std::vector<std::string> names = pt.base.alphabet.names();
    for (const auto& n : pt.tilde.alphabet.names()) names.push_back(n);
    return Alphabet(names);
}

Letter to_gamma(const BsdPresentation& pt, Letter e) { return Letter(e + 2 * pt.base.alphabet.rank()); }

Presentation gamma_presentation(const BsdPresentation& pt) { return Presentation{gamma_alphabet(pt), pt.base.relators}; }

Word phi(const BsdPresentation& pt, const Word& w) {
    Word out;
    std::size_t i = 0;
    while (i < w.size()) {
        if (i + 1 < w.size() && in_Y(pt, w[i], w[i + 1])) {
            out += psi(pt, w.substr(i, 2));
            i += 2;
        } else {
            out.push_back(to_gamma(pt, w[i]));
            ++i;
        }
    }
    return out;
}

std::vector<VertexType> classify_vertex_types(const Diagram& d) {
    Topology t = topology(d);
    std::vector<int> in(std::size_t(t.vertex_count), 0), out(std::size_t(t.vertex_count), 0);
    for (std::size_t x = 0; x < d.dart_count(); ++x) (is_inverse(d.label[x]) ? in : out)[std::size_t(t.origin[x])]++;
    std::vector<VertexType> types(std::size_t(t.vertex_count), VertexType::None);
    for (std::size_t v = 0; v < types.size(); ++v) {
        if (in[v] && out[v]) throw InconsistentTyping("vertex " + std::to_string(v) + " is neither a source nor a sink");
        if (in[v]) types[v] = VertexType::A;
        if (out[v]) types[v] = VertexType::B;
    }
    return types;
}

std::vector<MiddleSegment> middle_segments(const BsdPresentation& pt, const Diagram& d) {
    std::vector<MiddleSegment> out;
    Topology t = topology(d);
    for (int f : t.regions()) {
        const auto& cyc = t.faces[std::size_t(f)];
        if (cyc.size() != 4) continue;
        for (std::size_t s = 0; s < 4; ++s) {
            Letter a = d.label[std::size_t(cyc[s])], b = d.label[std::size_t(cyc[(s + 1) % 4])];
            Letter c = d.label[std::size_t(cyc[(s + 2) % 4])], e = d.label[std::size_t(cyc[(s + 3) % 4])];
            if (!in_Y(pt, a, b) || !in_Y(pt, c, e)) continue;
            Word p1 = psi(pt, Word{a, b});
            // sigma = inverse of the second pair
            if (!in_Y(pt, inv(e), inv(c)) || psi(pt, Word{inv(e), inv(c)}) != p1) continue;
            MiddleSegment m;
            m.region = f;
            m.mu = {cyc[s], cyc[(s + 1) % 4]};
            m.from = t.origin[std::size_t(cyc[s])];
            m.to = t.target(cyc[(s + 1) % 4]);
            m.piece = p1;
            out.push_back(std::move(m));
            break;
        }
    }
    return out;
}

PieceBound verify_piece_bound(const BsdPresentation& pt) {
    PieceBound b;
    if (!check_shape(pt).ok) {
        b.holds = false;
        b.shape_ok = false;
        return b;
    }
    RelatorIndex cl(pt.tilde);
    for (auto& p : pieces(cl))
        if (p.word.size() > b.max_piece) {
            b.max_piece = p.word.size();
            b.witness = p;
        }
    b.holds = b.max_piece <= 2;
    return b;
}

bool three_letters_determine_relator(const BsdPresentation& pt) {
    RelatorIndex cl(pt.tilde);
    for (const Word& r : cl.relators())
        if (cl.count_prefix(r.substr(0, 3)) != 1) return false;
    return true;
}

namespace {

// Area below two: the boundary reduces to nothing or to a single relator.
bool below_two(const RelatorIndex& cl, const Word& boundary) {
    Word cr = cyclic_reduce(boundary);
    return cr.empty() || cl.contains(cr);
}

}  // namespace

TwoRegionReport verify_two_region_lemma(const BsdPresentation& pt, std::size_t sample, std::size_t keep) {
    TwoRegionReport rep;
    auto cl = std::make_shared<RelatorIndex>(pt.tilde);
    AreaSolver solver(cl);
    for (const Word& A : cl->relators())
        for (std::size_t l = 1; l <= 3; ++l) {
            auto [lo, hi] = cl->prefix_range(inverse(A.substr(0, l)));
            for (std::size_t n = lo; n < hi; ++n) {
                const Word& B = cl->relators()[n];
                ++rep.glued[l];
                Word boundary = A.substr(l) + B.substr(l);
                bool small = below_two(*cl, boundary);
                if (small) ++rep.not_minimal[l];
                if (l == 2) {
                    bool typeB = is_inverse(A[0]);
                    (typeB ? rep.type_b : rep.type_a)++;
                    if (!small) (typeB ? rep.type_b_minimal : rep.type_a_minimal)++;
                    if (rep.validated < sample) {
                        auto b = DiagramBuilder::polygon(A);
                        b.attach(0, l, B.substr(l));
                        Diagram d = b.build();
                        if (!validate(d, *cl).ok) throw Error("two-region gluing does not validate");
                        if (cyclic_normal_form(boundary_label(d)) != cyclic_normal_form(boundary))
                            throw Error("two-region gluing boundary mismatch");
                        if (is_minimal(d, solver).minimal == small) throw Error("area search disagrees on a two-region diagram");
                        ++rep.validated;
                    }
                }
                if (l >= 2 && !small) {
                    rep.holds = false;
                    if (rep.counterexamples.size() < keep) rep.counterexamples.emplace_back(A, B);
                }
            }
        }
    return rep;
}

std::optional<std::pair<Word, Word>> domino_realization(const RelatorIndex& cl, const Word& w) {
    if (w.size() != 6) return std::nullopt;
    for (std::size_t p = 0; p < 6; ++p) {
        Word r = rotate(w, p);
        Word h1 = r.substr(0, 3), h2 = r.substr(3);
        auto [lo, hi] = cl.prefix_range(h1);
        for (std::size_t n = lo; n < hi; ++n) {
            const Word& a = cl.relators()[n];
            if (a.size() != 4) continue;
            Word b = Word(1, inv(a[3])) + h2;
            if (cl.contains(b)) return std::make_pair(rotate(a, 3), b);
        }
    }
    return std::nullopt;
}

namespace {

struct AreaTwo {
    bool small;
    std::optional<std::pair<Word, Word>> domino;
};

AreaTwo at_most_two(const RelatorIndex& cl, AreaSolver& solver, const Word& w) {
    Word cr = cyclic_reduce(w);
    if (cr.size() == 6) {
        auto d = domino_realization(cl, cr);
        return {d.has_value(), d};
    }
    return {solver.area(cr, 2).has_value(), std::nullopt};
}

Diagram corner_diagram(const Word& c, const Word& d, const Word& f) {
    auto b = DiagramBuilder::polygon(c);
    b.attach(0, 1, d.substr(0, 3));
    b.attach(5, 2, f.substr(1, 2));
    return b.build();
}

Diagram domino_diagram(const Word& a, const Word& b) {
    auto bl = DiagramBuilder::polygon(a);
    bl.attach(0, 1, b.substr(1));
    return bl.build();
}

bool pair_cancels(const Word& mu, const Word& sigma) { return free_reduce(mu + sigma).empty(); }

}  // namespace

Valence3Report verify_no_inner_valence3(const BsdPresentation& pt, bool strict, std::size_t sample, std::size_t keep) {
    Valence3Report rep;
    auto cl = std::make_shared<RelatorIndex>(pt.tilde);
    AreaSolver solver(cl);
    const auto& rel = cl->relators();
    for (const Word& c : rel) {
        if (c.size() != 4) continue;
        auto [lo2, hi2] = cl->prefix_range(Word(1, inv(c[0])));
        for (std::size_t n2 = lo2; n2 < hi2; ++n2) {
            const Word& dr = rel[n2];  // d3 d0 d1 d2
            Word d = rotate(dr, 1);
            auto [lo3, hi3] = cl->prefix_range(Word{inv(d[0]), inv(c[3])});
            for (std::size_t n3 = lo3; n3 < hi3; ++n3) {
                Word f = rotate(rel[n3], 1);  // f0 f1 f2 f3
                // one representative per rotation about the vertex
                auto t0 = std::tie(c, d, f);
                if (std::tie(d, f, c) < t0 || std::tie(f, c, d) < t0) continue;
                bool reduced = !pair_cancels(c.substr(1), d.substr(0, 3)) &&
                               !pair_cancels(d.substr(1), f.substr(0, 3)) &&
                               !pair_cancels(f.substr(1), c.substr(0, 3));
                if (!reduced) {
                    ++rep.non_reduced;
                    continue;
                }
                ++rep.configurations;
                bool typeB = !is_inverse(c[0]);
                (typeB ? rep.type_b : rep.type_a)++;
                if (!typeB && strict) throw TypeAValence3Constructed("reduced Type-A valence-3 configuration built");
                Word boundary = c.substr(1, 2) + f.substr(1, 2) + d.substr(1, 2);
                AreaTwo a = at_most_two(*cl, solver, boundary);
                if (rep.validated < sample) {
                    Diagram m = corner_diagram(c, d, f);
                    if (!validate(m, *cl).ok) throw Error("valence-3 configuration does not validate");
                    if (cyclic_normal_form(boundary_label(m)) != cyclic_normal_form(boundary))
                        throw Error("valence-3 configuration boundary mismatch");
                    if (solver.area(boundary, 2).has_value() != a.small) throw Error("domino test disagrees with area search");
                    if (!rep.configuration_example) rep.configuration_example = m;
                    ++rep.validated;
                }
                if (a.small) {
                    (typeB ? rep.type_b_not_minimal : rep.type_a_not_minimal)++;
                    if (typeB && a.domino && !rep.replacement_example) {
                        Diagram r = domino_diagram(a.domino->first, a.domino->second);
                        if (!validate(r, *cl).ok || cyclic_normal_form(boundary_label(r)) != cyclic_normal_form(boundary))
                            throw Error("Type-B replacement does not preserve the boundary");
                        rep.replacement_example = r;
                    }
                } else {
                    rep.holds = false;
                    if (rep.counterexamples.size() < keep) rep.counterexamples.push_back({c, d, f});
                }
            }
        }
    }
    return rep;
}

}  // namespace c4t4
