// One line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "../unit/fixtures.hpp"
#include "c4t4/bsd.hpp"
#include "c4t4/refutation.hpp"

using namespace c4t4;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string str(std::size_t n) { return std::to_string(n); }

const BsdPresentation& running_bsd() {
    static BsdPresentation pt = bsd(symmetric_closure(fx::running()));
    return pt;
}

std::vector<Word> words_upto(std::size_t letters, std::size_t n) {
    std::vector<Word> out;
    for (std::size_t k = 0; k <= n; ++k) fx::for_each_word(letters, k, [&](const Word& w) { out.push_back(w); });
    return out;
}

Outcome closure_counts() {
    auto p = fx::running();
    // rotations of r and r^-1, collected directly
    std::set<Word> cl;
    for (const auto& r : p.relators)
        for (const auto& w : {r, inverse(r)})
            for (std::size_t k = 0; k < w.size(); ++k) cl.insert(rotate(w, k));
    std::size_t ab = 0;
    for (const auto& w : cl) ab += w.substr(0, 2) == p.word("ab");
    RelatorIndex idx(p);
    bool ok = idx.size() == 20 && cl.size() == 20 && idx.count_prefix(p.word("ab")) == 4 && ab == 4;
    for (const auto& w : idx.relators()) ok = ok && cl.count(w);
    return {ok, "closure " + str(idx.size()) + ", prefix ab " + str(idx.count_prefix(p.word("ab")))};
}

Outcome algebraic() {
    auto p = fx::running();
    bool c4 = check_C4(p).holds, t4 = check_T4(p).holds;
    return {c4 && t4, std::string("C(4) ") + (c4 ? "holds" : "fails") + ", T(4) " + (t4 ? "holds" : "fails")};
}

Outcome bsd_structure() {
    const auto& pt = running_bsd();
    std::size_t sum = 0;
    for (const auto& r : symmetric_closure(fx::running()).relators) sum += r.size();
    std::size_t bad = 0;
    for (const auto& t : pt.tilde.relators) bad += t.size() != 4 || !is_cyclically_reduced(t);
    auto pb = verify_piece_bound(pt);
    bool ok = pt.generator_count() == 200 && sum == 200 && bad == 0 && pb.holds && pb.max_piece <= 2;
    return {ok, "|E| " + str(pt.generator_count()) + " (sum |R| " + str(sum) + "), " + str(pt.tilde.relators.size()) +
                    " T-relators, " + str(bad) + " not length-4 cyclically reduced, max piece " + str(pb.max_piece)};
}

Outcome phi_soundness() {
    const auto& pt = running_bsd();
    auto gp = gamma_presentation(pt);
    RelatorIndex closure(gp);
    std::size_t certified = 0, max_area = 0;
    for (const auto& t : pt.tilde.relators) {
        Word w = phi(pt, t);
        auto v = equal_in_group(closure, gp.alphabet.rank(), w, Word{});
        if (!v.equal()) continue;
        auto end = replay(closure, w, v.certificate);
        std::size_t a = v.certificate.area();
        max_area = std::max(max_area, a);
        if (end && end->empty() && a <= 4) ++certified;
    }
    return {certified == pt.tilde.relators.size(),
            str(certified) + "/" + str(pt.tilde.relators.size()) + " certified, max area " + str(max_area)};
}

struct GammaCount {
    std::size_t graphs = 0, acyclic = 0, graded = 0;
};

GammaCount gamma_scan(const Presentation& p) {
    DominoIndex idx(p);
    auto ts = stable_triplets(idx).triplets;
    GammaCount c;
    for (std::size_t x = 0; x < idx.letter_count(); ++x) {
        auto g = stability_graph(ts, Letter(x), idx.letter_count());
        ++c.graphs;
        if (!assert_acyclic(g).acyclic) continue;
        ++c.acyclic;
        c.graded += grading(g).satisfies(g);
    }
    return c;
}

Outcome stability_graphs() {
    auto z = gamma_scan(fx::z2());
    auto r = gamma_scan(running_bsd().tilde);
    bool ok = z.acyclic == z.graphs && z.graded == z.graphs && r.acyclic == r.graphs && r.graded == r.graphs;
    return {ok, "Z2 " + str(z.acyclic) + "/" + str(z.graphs) + " acyclic, " + str(z.graded) + " graded; BSD " +
                    str(r.acyclic) + "/" + str(r.graphs) + " acyclic, " + str(r.graded) + " graded"};
}

Outcome order_regularity() {
    auto g = stability_gradings(fx::z2());
    std::size_t pairs = 0, agree = 0;
    auto ws = words_upto(4, 4);
    for (auto mode : {OrderMode::LengthFirst, OrderMode::Literal}) {
        auto a = build_order_automaton(4, g, mode);
        for (const auto& w : ws)
            for (const auto& u : ws) {
                if (w.empty() && u.empty()) continue;
                ++pairs;
                agree += a.accepts(w, u) == (compare(w, u, g, mode) == Cmp::Less);
            }
    }
    return {agree == pairs, str(agree) + "/" + str(pairs) + " pairs agree (both orders)"};
}

Outcome minimality_lemmas() {
    const auto& pt = running_bsd();
    auto two = verify_two_region_lemma(pt);
    auto v3 = verify_no_inner_valence3(pt);
    bool ok = two.holds && v3.holds && v3.type_b > 0;
    return {ok, "(a) " + str(two.type_b_minimal + two.type_a_minimal) + " minimal length-2 gluings; (b) " +
                    str(v3.configurations) + " valence-3 configurations, " + str(v3.type_b) + " Type B, " +
                    str(v3.type_a_not_minimal + v3.type_b_not_minimal) + " with a smaller replacement"};
}

Outcome thinness() {
    std::size_t diagrams = 0, proper = 0, splits = 0, counterexamples = 0;
    for (const auto& p : {fx::z2(), fx::path3()}) {
        EnumerationOptions opt;
        opt.max_regions = 5;
        opt.cap = 5;
        enumerate_diagrams(p, opt, [&](const Diagram& d) {
            ++diagrams;
            if (!check_proper_C4T4_map(d)) return;
            ++proper;
            Topology t = topology(d);
            for (int o : t.faces[std::size_t(t.outer_face)]) {
                int base = o ^ 1;
                std::size_t n = boundary_cycle(d, base).darts.size();
                for (std::size_t s = 0; s <= 1; ++s)
                    for (std::size_t tau = 0; tau <= 1; ++tau)
                        for (std::size_t a = 0; s + a + tau <= n; ++a) {
                            auto alpha = boundary_segment(d, s, a, base);
                            auto beta = reversed(boundary_segment(d, s + a + tau, n - s - a - tau, base));
                            if (!detect_thick_configurations(d, alpha).empty() ||
                                !detect_thick_configurations(d, beta).empty())
                                continue;
                            ++splits;
                            counterexamples += !is_thin(d, s + a, base);
                        }
            }
        });
    }
    return {counterexamples == 0 && splits > 0, str(proper) + "/" + str(diagrams) + " proper diagrams, " + str(splits) +
                                                     " thick-free splits, " + str(counterexamples) + " not thin"};
}

Outcome well_positioning() {
    auto p = fx::two_fillings_covered();
    DominoIndex idx(p);
    AreaSolver solver(p);
    EnumerationOptions opt;
    opt.max_regions = 4;
    opt.cap = 4;
    std::size_t instances = 0, good = 0, unavailable = 0;
    enumerate_diagrams(p, opt, [&](const Diagram& d) {
        if (!is_minimal(d, solver).minimal) return;
        auto cyc = boundary_cycle(d);
        for (int b : cyc.darts)
            for (std::size_t k = 1; k < cyc.darts.size(); ++k) {
                auto [al, be] = split_boundary(d, k, b);
                if (all_well_positioned(d, al, be, idx)) continue;
                ++instances;
                try {
                    auto wp = well_position(d, al, be, idx);
                    auto again = well_position(wp.diagram, al, be, idx);
                    good += boundary_label(wp.diagram) == boundary_label(d) &&
                            region_count(wp.diagram) == region_count(d) && validate(wp.diagram, p).ok &&
                            all_well_positioned(wp.diagram, al, be, idx) && again.replacements == 0 &&
                            canonical_key(again.diagram) == canonical_key(wp.diagram);
                } catch (const ReplacementUnavailable&) {
                    ++unavailable;
                }
            }
    });
    return {instances > 0 && good == instances,
            str(good) + "/" + str(instances) + " instances well-positioned and idempotent, " + str(unavailable) +
                " without replacement"};
}

Outcome refutation_constants() {
    auto z = fx::z2();
    auto ball = build_ball(z, 5);
    auto g = stability_gradings(z);
    Refuter ref(z, ball, g);
    auto least = minimal_words_sample(ball, g, 5);
    std::set<Word> minimal(least.begin(), least.end());
    std::map<Refutation::Kind, std::size_t> worst, steps;
    std::size_t words = 0, refuted = 0, wrong = 0, classes_ok = 0;
    for (const auto& w : words_upto(4, 5)) {
        ++words;
        auto r = ref.refute(w);
        if (bool(r) == bool(minimal.count(w))) ++wrong;
        if (!r) continue;
        if (!precedes(r->replacement, w, g) || !ball.same_class(w, r->replacement)) ++wrong;
        ++refuted;
        ++steps[r->kind];
        worst[r->kind] = std::max(worst[r->kind], r->fellow_constant);
    }
    for (const auto& u : least) {
        const auto& ms = ball.members(ball.class_of(u));
        classes_ok += std::all_of(ms.begin(), ms.end(), [&](const Word& m) { return ref.normalize(m).word == u; });
    }
    using K = Refutation::Kind;
    std::size_t six = std::max(worst[K::Shortable], worst[K::FreeReduction]);
    bool ok = wrong == 0 && six <= 6 && worst[K::ThickConfig] <= 4 && classes_ok == least.size();
    std::ostringstream os;
    os << refuted << "/" << words << " words refuted, " << wrong << " wrong; shortable/free max " << six
       << ", thick max " << worst[K::ThickConfig] << " (" << steps[K::ThickConfig] << " steps), thin max "
       << worst[K::ThinDiagram] << "; " << classes_ok << "/" << least.size() << " classes normalize to their least word";
    return {ok, os.str()};
}

Outcome endgame() {
    struct Case {
        const char* name;
        Presentation p;
        std::size_t radius;
        std::size_t cap = 0;
    };
    // The free group has no relators, so its cap is raised to cover x W y^-1.
    // Z2 uses radius 6 so that xW and Uy of length 6 can be tested for geodesy.
    std::vector<Case> cases{{"Z2", fx::z2(), 6}, {"path3", fx::path3(), 5}, {"F2", fx::free2(), 5, 7}};
    bool ok = true;
    std::ostringstream os;
    for (const auto& c : cases) {
        auto ball = build_ball(c.p, c.radius, {.cap = c.cap});
        auto rep = fellow_traveller_endgame(ball, stability_gradings(c.p), 5, c.p.alphabet.letter_count());
        ok = ok && rep.violations == 0 && rep.hausdorff_violated == 0 && rep.pairs > 0 && rep.uncertified == 0;
        os << c.name << " " << rep.pairs << " pairs max " << rep.max_constant << " violations " << rep.violations
           << " hausdorff " << rep.hausdorff_checked - rep.hausdorff_unmet - rep.hausdorff_violated << "/"
           << rep.hausdorff_checked << "; ";
    }
    auto s = os.str();
    return {ok, s.substr(0, s.size() - 2)};
}

struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> all{
        {1, "running example closure", 1, closure_counts},
        {2, "algebraic C(4)&T(4)", 5, algebraic},
        {3, "BSD structure", 30, bsd_structure},
        {4, "phi soundness", 60, phi_soundness},
        {5, "stability graphs acyclic", 300, stability_graphs},
        {6, "order automaton regularity", 30, order_regularity},
        {7, "BSD minimality lemmas", 600, minimality_lemmas},
        {8, "thinness without thick configurations", 600, thinness},
        {9, "well-positioning", 600, well_positioning},
        {10, "refutation constants", 600, refutation_constants},
        {11, "fellow-traveller endgame", 600, endgame},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));
    std::size_t passed = 0, ran = 0;
    for (const auto& c : all) {
        if (!only.empty() && !only.count(c.id)) continue;
        ++ran;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs <= c.limit;
        bool ok = o.pass && in_time;
        passed += ok;
        std::cout << "criterion " << c.id << " [" << c.name << "]: " << (ok ? "PASS" : "FAIL") << " - " << o.detail
                  << " (" << std::fixed << std::setprecision(2) << secs << " s, limit " << c.limit << " s"
                  << (in_time ? "" : ", over time") << ")" << std::endl;
    }
    std::cout << "acceptance: " << passed << "/" << ran << " criteria pass" << std::endl;
    return passed == ran ? 0 : 1;
}
