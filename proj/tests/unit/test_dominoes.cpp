#include <doctest.h>

#include "c4t4/bsd.hpp"
#include "c4t4/dominoes.hpp"
#include "fixtures.hpp"

#include <map>

using namespace c4t4;

namespace {

Presentation z3() { return make_presentation({"a", "b", "c"}, {"abAB", "acAC", "bcBC"}); }

// pqrstv bounds a 3-typed domino (inner z) and a 1-typed one (inner u).
using fx::two_fillings;

const Presentation& z2_tilde() {
    static Presentation p = bsd(symmetric_closure(fx::z2())).tilde;
    return p;
}

// Dominoes from the general enumerator: 2 regions, boundary 6, one inner edge, reduced.
std::set<std::vector<std::uint32_t>> domino_keys_by_enumeration(const Presentation& p) {
    std::set<std::vector<std::uint32_t>> keys;
    EnumerationOptions opt;
    opt.max_regions = 2;
    enumerate_diagrams(p, opt, [&](const Diagram& d) {
        if (region_count(d) != 2 || boundary_label(d).size() != 6) return;
        if (classify_elements(d).inner_edges() != 1 || !is_reduced(d).reduced) return;
        keys.insert(canonical_key(d));
    });
    return keys;
}

void check_against_enumeration(const Presentation& p) {
    auto ds = enumerate_dominoes(p);
    std::set<std::vector<std::uint32_t>> keys;
    for (const auto& d : ds) keys.insert(canonical_key(d.diagram()));
    CHECK(keys.size() == ds.size());
    CHECK(keys == domino_keys_by_enumeration(p));
}

// Valence-3 boundary vertices read off the diagram, both traversal directions.
std::set<Triplet> geometric_triplets(const Diagram& d) {
    auto topo = topology(d);
    auto cls = classify_elements(d);
    auto cyc = boundary_cycle(d);
    std::set<Triplet> out;
    std::size_t n = cyc.darts.size();
    for (std::size_t i = 0; i < n; ++i) {
        int e1 = cyc.darts[i], e2 = cyc.darts[(i + 1) % n];
        int v = topo.target(e1);
        if (cls.vertex_valence[std::size_t(v)] != 3) continue;
        for (std::size_t x = 0; x < d.dart_count(); ++x) {
            if (topo.origin[x] != v || !cls.edge_inner[x / 2]) continue;
            Letter z = d.label[x];
            out.insert({d.label[std::size_t(e1)], d.label[std::size_t(e2)], z});
            out.insert({inv(d.label[std::size_t(e2)]), inv(d.label[std::size_t(e1)]), z});
        }
    }
    return out;
}

// Independent realization table over all pairs of closure elements, keyed by label.
using RealizationTable = std::map<Word, std::set<std::pair<int, Word>>>;

RealizationTable gluing_table(const Presentation& p) {
    RelatorIndex cl(p);
    RealizationTable out;
    for (const auto& a : cl.relators())
        for (const auto& b : cl.relators()) {
            if (a[0] != inv(b[0])) continue;
            Domino d{a, b};
            if (!d.reduced()) continue;
            auto dg = d.diagram();
            auto topo = topology(dg);
            auto cyc = boundary_cycle(dg);
            for (std::size_t k = 0; k < 6; ++k) {
                int t = classify_biased(dg, cyc.darts[k]);
                std::size_t m = t == 3 ? 0 : std::size_t(t);
                int from = topo.origin[std::size_t(cyc.darts[(k + m + 3) % 6])];
                int to = topo.origin[std::size_t(cyc.darts[(k + m) % 6])];
                for (std::size_t x = 0; x < dg.dart_count(); ++x)
                    if (topo.origin[x] == from && topo.target(int(x)) == to)
                        out[rotate(cyc.label, k)].insert({t, Word(1, dg.label[x])});
            }
        }
    return out;
}

std::set<std::pair<int, Word>> realizations_by_gluing(const Presentation& p, const Word& label) {
    auto t = gluing_table(p);
    auto it = t.find(label);
    return it == t.end() ? std::set<std::pair<int, Word>>{} : it->second;
}

}  // namespace

TEST_CASE("enumerate_dominoes agrees with the diagram enumerator") {
    check_against_enumeration(fx::z2());
    check_against_enumeration(z3());
    check_against_enumeration(fx::abab());
    check_against_enumeration(fx::aaaa());
    CHECK(enumerate_dominoes(fx::z2()).size() == 2);
    CHECK(enumerate_dominoes(z3()).size() == 18);
    CHECK(enumerate_dominoes(fx::aaaa()).empty());
    CHECK(enumerate_dominoes(make_presentation({"a", "b"}, {})).empty());
    CHECK_THROWS_AS(enumerate_dominoes(fx::running()), H1Violated);
}

TEST_CASE("every domino is a valid 3+3 split") {
    for (const auto& p : {fx::z2(), z3(), fx::abab()})
        for (const auto& d : enumerate_dominoes(p)) {
            auto dg = d.diagram();
            REQUIRE(validate(dg, p).ok);
            CHECK(boundary_label(dg) == d.boundary_label());
            auto cls = classify_elements(dg);
            CHECK(cls.inner_edges() == 1);
            for (int e : cls.region_edges) CHECK(e == 4);
            CHECK(d.canonical() == d);
            CHECK(d.mirror().canonical() == d);
        }
}

TEST_CASE("classify_biased: word-level and geometric types agree") {
    auto d = enumerate_dominoes(z3()).front();
    CHECK(classify_biased(d, 0).dtype == 3);
    CHECK(classify_biased(d, 1).dtype == 2);
    CHECK(classify_biased(d, 2).dtype == 1);
    CHECK(classify_biased(d, 3).dtype == 3);
    for (const auto& p : {fx::z2(), z3()})
        for (const auto& dom : enumerate_dominoes(p)) {
            auto dg = dom.diagram();
            auto cyc = boundary_cycle(dg);
            for (std::size_t b = 0; b < 6; ++b) {
                auto bd = classify_biased(dom, b);
                CHECK(bd.dtype == classify_biased(dg, cyc.darts[b]));
                CHECK(bd.label() == rotate(cyc.label, b));
            }
        }
}

TEST_CASE("realizations agree with an independent gluing scan") {
    for (const auto& p : {fx::z2(), z3(), fx::abab()}) {
        DominoIndex idx(p);
        std::set<Word> labels;
        for (const auto& d : enumerate_dominoes(idx))
            for (std::size_t b = 0; b < 6; ++b) labels.insert(classify_biased(d, b).label());
        labels.insert(p.word("aaaaaa"));
        auto table = gluing_table(p);
        for (const auto& l : labels) {
            auto rs = idx.realizations(l);
            std::set<int> types;
            for (auto r : rs) types.insert(r.dtype);
            std::set<int> oracle_types;
            for (const auto& [t, z] : table[l]) oracle_types.insert(t);
            CHECK(types == oracle_types);
        }
        CHECK(idx.realizations(p.word("aaaaaa")).empty());
    }
}

TEST_CASE("stability: Z2 satisfies T(4) and all its dominoes are stable") {
    REQUIRE(check_T4(fx::z2()).holds);
    DominoIndex idx(fx::z2());
    for (const auto& d : enumerate_dominoes(idx)) {
        auto rs = idx.realizations(d.boundary_label());
        REQUIRE(rs.size() == 1);
        CHECK(rs[0] == classify_biased(d, 0).realization());
        for (std::size_t b = 0; b < 6; ++b) CHECK(idx.is_stable(classify_biased(d, b)));
    }
}

TEST_CASE("stability: a hexagon with two fillings") {
    REQUIRE_FALSE(check_T4(two_fillings()).holds);
    DominoIndex idx(two_fillings());
    auto label = two_fillings().word("pqrstv");
    auto rs = idx.realizations(label);
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].dtype == 1);
    CHECK(rs[1].dtype == 3);
    std::set<std::pair<int, Word>> oracle;
    for (auto r : rs) oracle.insert({r.dtype, Word(1, r.inner)});
    CHECK(oracle == realizations_by_gluing(two_fillings(), label));
    std::size_t unstable = 0, mixed = 0;
    for (const auto& d : enumerate_dominoes(idx)) {
        if (idx.is_stable(d)) continue;
        ++unstable;
        for (std::size_t b = 0; b < 6; ++b) {
            std::set<int> types;
            for (auto r : idx.realizations(classify_biased(d, b).label())) types.insert(r.dtype);
            if (types == std::set<int>{1, 2}) ++mixed;
        }
    }
    CHECK(enumerate_dominoes(idx).size() == 8);
    CHECK(unstable == 4);
    CHECK(mixed > 0);
    CHECK(enumerate_dominoes(z3()).size() == 18);
    for (const auto& d : enumerate_dominoes(z3())) CHECK(is_stable(classify_biased(d, 0), z3()));
}

TEST_CASE("stability is invariant under basepoint rotation and mirroring") {
    for (const auto& p : {fx::z2(), z3(), two_fillings(), z2_tilde()}) {
        DominoIndex idx(p);
        for (const auto& d : enumerate_dominoes(idx))
            for (auto e : {Equivalence::Strict, Equivalence::TypeOnly}) {
                bool s = idx.is_stable(d, e);
                for (const auto& v : {d, d.mirror(), d.swapped()})
                    for (std::size_t b = 0; b < 6; ++b) REQUIRE(idx.is_stable(classify_biased(v, b), e) == s);
            }
    }
}

TEST_CASE("stable triplets: word-level scan agrees with valence-3 vertices of the diagrams") {
    for (const auto& p : {fx::z2(), z3(), two_fillings(), z2_tilde()}) {
        DominoIndex idx(p);
        auto scan = stable_triplets(idx);
        auto table = gluing_table(p);
        std::set<Triplet> oracle;
        for (const auto& d : enumerate_dominoes(idx)) {
            auto dg = d.diagram();
            auto cyc = boundary_cycle(dg);
            bool stable = true;
            for (std::size_t b = 0; b < 6; ++b) {
                auto rs = table[rotate(cyc.label, b)];
                std::set<int> types;
                for (const auto& [t, z] : rs) types.insert(t);
                stable = stable && types == std::set<int>{classify_biased(dg, cyc.darts[b])} && rs.size() == 1;
            }
            if (!stable) continue;
            auto t = geometric_triplets(dg);
            oracle.insert(t.begin(), t.end());
        }
        CHECK(scan.triplets == oracle);
        CHECK(scan.dominoes == enumerate_dominoes(idx).size());
    }
    CHECK(stable_triplets(make_presentation({"a"}, {})).empty());
}

TEST_CASE("stability graphs: acyclicity and grading") {
    StabilityGraph empty{0, 4, {}};
    CHECK(assert_acyclic(empty).acyclic);
    auto g0 = grading(empty);
    CHECK(g0.grades == std::vector<int>{1, 2, 3, 4});

    StabilityGraph one{0, 4, {{1, 2}}};
    auto g1 = grading(one);
    CHECK(g1.grades[2] < g1.grades[1]);
    CHECK(g1.satisfies(one));

    StabilityGraph two{0, 4, {{1, 3}, {3, 1}, {0, 2}}};
    auto ac = assert_acyclic(two);
    REQUIRE_FALSE(ac.acyclic);
    CHECK(ac.cycle.size() == 2);
    CHECK(std::set<Letter>(ac.cycle.begin(), ac.cycle.end()) == std::set<Letter>{1, 3});
    CHECK_THROWS_AS(grading(two), CyclicGraph);

    StabilityGraph chain{0, 4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}};
    CHECK(assert_acyclic(chain).cycle.size() == 4);

    for (const auto& p : {fx::z2(), z2_tilde()}) {
        auto ts = stable_triplets(p);
        CHECK_FALSE(ts.empty());
        std::size_t n = p.alphabet.letter_count();
        for (std::size_t x = 0; x < n; ++x) {
            auto g = stability_graph(ts, Letter(x), n);
            REQUIRE(assert_acyclic(g).acyclic);
            auto t = grading(g);
            CHECK(t.satisfies(g));
            CHECK(stability_graph(ts, Letter(x), n).edges == g.edges);
        }
    }
}

TEST_CASE("stable substitution") {
    auto none = verify_stable_substitution(make_presentation({"a"}, {}));
    CHECK(none.holds);
    CHECK(none.checked == 0);
    auto z = verify_stable_substitution(fx::z2());
    CHECK(z.holds);
    CHECK(z.checked == 16);
    CHECK(verify_stable_substitution(two_fillings()).holds);

    // zpqr + Zstv is stable and pqWY leaves ywrstv without a domino.
    auto broken = make_presentation({"p", "q", "r", "s", "t", "v", "z", "w", "y"}, {"zpqr", "Zstv", "pqWY"});
    auto b = verify_stable_substitution(broken);
    REQUIRE_FALSE(b.holds);
    REQUIRE(b.witness);
    CHECK(broken.format(b.witness->label) == "pqrstv");
    CHECK(broken.format(b.witness->new_label) == "ywrstv");
    CHECK(b.witness->found.empty());

    CHECK(verify_stable_substitution(z2_tilde(), 5).exhausted_budget);
}

TEST_CASE("stable substitution fails on BSD(Z2) for 2- and 3-typed dominoes") {
    const auto& p = z2_tilde();
    auto rep = verify_stable_substitution(p);
    CHECK_FALSE(rep.holds);
    CHECK(rep.checked_by_type[1] == 0);
    CHECK(rep.checked_by_type[2] == rep.failed_by_type[2]);
    CHECK(rep.checked_by_type[3] == rep.failed_by_type[3]);
    auto table = gluing_table(p);
    for (int t : {2, 3}) {
        REQUIRE(rep.witness_by_type[std::size_t(t)]);
        const auto& w = *rep.witness_by_type[std::size_t(t)];
        CHECK(RelatorIndex(p).contains(w.relator));
        CHECK(w.relator.substr(0, 2) == w.label.substr(0, 2));
        CHECK(table[w.new_label].empty());
    }
}

TEST_CASE("exports") {
    auto p = fx::z2();
    DominoIndex idx(p);
    auto ds = enumerate_dominoes(idx);
    auto j = dominoes_json(ds, idx, p.alphabet);
    CHECK(j.size() == ds.size());
    CHECK(j[0]["boundary"].get<std::string>().size() == 6);
    auto ts = stable_triplets(p);
    CHECK(triplets_json(ts, p.alphabet).size() == ts.size());
    auto g = stability_graph(ts, 0, 4);
    CHECK(to_dot(g, p.alphabet).find("digraph") == 0);
    auto gj = gradings_json({grading(g)}, p.alphabet);
    CHECK(gj["a"].size() == 4);
}
