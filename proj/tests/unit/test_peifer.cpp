#include <doctest.h>

#include "c4t4/peifer.hpp"
#include "fixtures.hpp"

using namespace c4t4;

namespace {

std::vector<Word> words_upto(std::size_t letters, std::size_t n) {
    std::vector<Word> out;
    for (std::size_t k = 0; k <= n; ++k) fx::for_each_word(letters, k, [&](const Word& w) { out.push_back(w); });
    return out;
}

// G_x(y) = ((x + 3 y) mod 4) + 1 for a in 4 letters: a bijection for each x.
Gradings skewed4() {
    Gradings g(4);
    for (Letter x = 0; x < 4; ++x) {
        std::vector<int> row(4);
        for (int y = 0; y < 4; ++y) row[std::size_t(y)] = (x + 3 * y) % 4 + 1;
        g.set(x, row);
    }
    return g;
}

// Reference order straight from the definitions.
bool reference_less(const Word& w, const Word& u, const Gradings& g, bool length_first) {
    auto kappa = [&](const Word& x) {
        std::vector<int> k;
        for (std::size_t i = 0; i < x.size(); ++i) k.push_back(i == 0 ? 0 : g.grade(x[i - 1], x[i]));
        return k;
    };
    auto kw = kappa(w), ku = kappa(u);
    if (length_first)
        return std::make_tuple(w.size(), kw, w) < std::make_tuple(u.size(), ku, u);
    return std::make_tuple(kw, w) < std::make_tuple(ku, u);
}

}  // namespace

TEST_CASE("delta_sigma") {
    auto z = fx::z2();
    auto d = delta_sigma(Word{}, z.word("a"));
    REQUIRE(d.size() == 1);
    CHECK(d[0] == PaddedPairSymbol{kPad, z.word("a")[0]});
    auto e = delta_sigma(z.word("ab"), z.word("a"));
    REQUIRE(e.size() == 2);
    CHECK(e[0] == PaddedPairSymbol{0, 0});
    CHECK(e[1] == PaddedPairSymbol{2, kPad});
    auto f = delta_sigma(z.word("ab"), z.word("BA"));
    CHECK(f[0] == PaddedPairSymbol{0, 3});
    CHECK(f[1] == PaddedPairSymbol{2, 1});
    CHECK_THROWS_AS(delta_sigma(Word{}, Word{}), BothEmpty);
}

TEST_CASE("peifer_vector") {
    auto g = skewed4();
    CHECK(peifer_vector(Word{}, g).empty());
    CHECK(peifer_vector(Word{0}, g) == std::vector<int>{0});
    CHECK(peifer_vector(Word{0, 2}, g) == std::vector<int>{0, g.grade(0, 2)});
    CHECK(peifer_vector(Word{0, 2}, g)[1] == 3);
    for (const auto& w : words_upto(4, 4)) {
        auto k = peifer_vector(w, g);
        REQUIRE(k.size() == w.size());
        for (std::size_t i = 1; i < k.size(); ++i) CHECK((k[i] >= 1 && k[i] <= 4));
    }
    Gradings partial(4);
    partial.set(0, {1, 2, 3, 4});
    CHECK_FALSE(partial.total());
    CHECK_THROWS_AS(peifer_vector(Word{1, 0}, partial), MissingGrading);
    CHECK(peifer_vector(Word{0, 1}, partial) == std::vector<int>{0, 2});
}

TEST_CASE("compare is a strict total order that matches the definition") {
    for (const auto& g : {skewed4(), stability_gradings(fx::z2())}) {
        auto ws = words_upto(4, 4);
        for (auto mode : {OrderMode::LengthFirst, OrderMode::Literal}) {
            bool lf = mode == OrderMode::LengthFirst;
            for (const auto& w : ws)
                for (const auto& u : ws) {
                    auto c = compare(w, u, g, mode);
                    REQUIRE((c == Cmp::Equal) == (w == u));
                    REQUIRE((c == Cmp::Less) == reference_less(w, u, g, lf));
                    REQUIRE((c == Cmp::Less) == (compare(u, w, g, mode) == Cmp::Greater));
                }
            auto sorted = ws;
            std::sort(sorted.begin(), sorted.end(), [&](auto& a, auto& b) { return precedes(a, b, g, mode); });
            for (std::size_t i = 0; i < sorted.size(); ++i)
                for (std::size_t j = i + 1; j < sorted.size(); ++j) REQUIRE(precedes(sorted[i], sorted[j], g, mode));
        }
    }
}

TEST_CASE("length dominance holds for the length-first order only") {
    auto g = skewed4();
    std::size_t literal_violations = 0;
    auto ws = words_upto(4, 4);
    for (const auto& v : ws)
        for (const auto& w : ws) {
            if (v.size() >= w.size()) continue;
            CHECK(precedes(v, w, g));
            if (!precedes(v, w, g, OrderMode::Literal)) ++literal_violations;
        }
    CHECK(literal_violations > 0);
    // (0,1,..) precedes (0,2) lexicographically.
    Word longer{0, 3, 0}, shorter{0, 1};
    CHECK(peifer_vector(longer, g)[1] < peifer_vector(shorter, g)[1]);
    CHECK(precedes(longer, shorter, g, OrderMode::Literal));
    CHECK(precedes(shorter, longer, g));
}

TEST_CASE("order automaton agrees with compare on all pairs up to length 4") {
    for (const auto& g : {skewed4(), stability_gradings(fx::z2())})
        for (auto mode : {OrderMode::LengthFirst, OrderMode::Literal}) {
            auto a = build_order_automaton(4, g, mode);
            auto ws = words_upto(4, 4);
            std::size_t accepted = 0;
            for (const auto& w : ws)
                for (const auto& u : ws) {
                    if (w.empty() && u.empty()) continue;
                    bool acc = a.accepts(w, u);
                    REQUIRE(acc == precedes(w, u, g, mode));
                    accepted += acc;
                }
            CHECK(accepted == ws.size() * (ws.size() - 1) / 2);
            CHECK(minimize(a) == a);
            CHECK(build_order_automaton(4, g, mode) == a);
            CHECK_FALSE(a.accepts(Word{}, Word{}));
            // PAD may not be followed by a letter on the same side.
            CHECK_FALSE(a.accepts({{kPad, 0}, {1, 2}}));
            CHECK_FALSE(a.accepts({{0, kPad}, {1, 2}}));
            CHECK_FALSE(a.accepts({{kPad, kPad}}));
        }
    // Length-first needs only the verdict for equal lengths plus padding side.
    auto lf = build_order_automaton(4, skewed4());
    auto lit = build_order_automaton(4, skewed4(), OrderMode::Literal);
    CHECK(lf.states > 2);
    CHECK(lit.states > 2);
}

TEST_CASE("automaton exports") {
    auto z = fx::z2();
    auto a = build_order_automaton(4, skewed4());
    auto j = to_json(a, z.alphabet);
    CHECK(j["states"] == a.states);
    CHECK(j["transitions"].size() == a.states * 24);
    CHECK(to_dot(a, z.alphabet).find("doublecircle") != std::string::npos);
}

TEST_CASE("gradings round trip through the dominoes JSON") {
    auto z = fx::z2();
    auto ts = stable_triplets(z);
    std::vector<GradingTable> tables;
    for (Letter x = 0; x < 4; ++x) tables.push_back(grading(stability_graph(ts, x, 4)));
    auto g = gradings_from_json(gradings_json(tables, z.alphabet), z.alphabet);
    auto h = stability_gradings(z);
    CHECK(g.total());
    for (Letter x = 0; x < 4; ++x)
        for (Letter y = 0; y < 4; ++y) CHECK(g.grade(x, y) == h.grade(x, y));
}

TEST_CASE("minimal_words_sample") {
    auto f = fx::free2();
    auto fb = build_ball(f, 3);
    auto fg = stability_gradings(f);
    auto fm = minimal_words_sample(fb, fg, 3);
    std::vector<Word> reduced;
    for (const auto& w : words_upto(4, 3))
        if (is_freely_reduced(w)) reduced.push_back(w);
    std::sort(reduced.begin(), reduced.end(), shortlex_less);
    CHECK(fm == reduced);

    auto z = fx::z2();
    auto g = stability_gradings(z);
    for (std::size_t r = 1; r <= 4; ++r) {
        auto ball = build_ball(z, r);
        auto m = minimal_words_sample(ball, g, r);
        CHECK(m.size() == 2 * r * r + 2 * r + 1);
        CHECK(std::find(m.begin(), m.end(), Word{}) != m.end());
        std::set<std::size_t> classes;
        for (const auto& w : m) classes.insert(ball.class_of(w));
        CHECK(classes.size() == m.size());
    }
    CHECK_THROWS_AS(minimal_words_sample(build_ball(z, 2), g, 3), BallTooSmall);
}
