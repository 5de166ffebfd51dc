#include <doctest.h>

#include "fixtures.hpp"

#include <algorithm>
#include <set>

using namespace c4t4;

namespace {

std::set<std::string> display(const Presentation& p, const std::vector<Word>& ws) {
    std::set<std::string> out;
    for (const auto& x : ws) out.insert(p.format(x));
    return out;
}

// Reference closure: rotate every relator and its inverse by explicit index arithmetic.
std::set<Word> closure_reference(const Presentation& p) {
    std::set<Word> out;
    for (const auto& r : p.relators) {
        const std::size_t n = r.size();
        for (std::size_t k = 0; k < n; ++k) {
            Word rot, irot;
            for (std::size_t i = 0; i < n; ++i) {
                rot.push_back(r[(k + i) % n]);
                irot.push_back(inv(r[(k + n - i) % n]));
            }
            out.insert(rot);
            out.insert(irot);
        }
    }
    return out;
}

// Reference C(4): try all splits of every closure relator into 1, 2 or 3 factors.
bool c4_reference(const Presentation& p) {
    auto cl = closure_reference(p);
    auto is_piece = [&](const Word& x) {
        int hits = 0;
        for (const auto& r : cl)
            if (r.size() >= x.size() && r.compare(0, x.size(), x) == 0) ++hits;
        return !x.empty() && hits >= 2;
    };
    for (const auto& r : cl) {
        const std::size_t n = r.size();
        if (is_piece(r)) return false;
        for (std::size_t i = 1; i < n; ++i) {
            if (is_piece(r.substr(0, i)) && is_piece(r.substr(i))) return false;
            for (std::size_t j = i + 1; j < n; ++j)
                if (is_piece(r.substr(0, i)) && is_piece(r.substr(i, j - i)) && is_piece(r.substr(j))) return false;
        }
    }
    return true;
}

bool t4_reference(const Presentation& p) {
    auto cl = closure_reference(p);
    auto reduced = [](const Word& a, const Word& b) { return a.back() != inv(b.front()); };
    for (const auto& r1 : cl)
        for (const auto& r2 : cl)
            for (const auto& r3 : cl)
                if (!reduced(r1, r2) && !reduced(r2, r3) && !reduced(r3, r1)) return false;
    return true;
}

}  // namespace

TEST_CASE("free_reduce examples") {
    auto p = fx::z2();
    CHECK(free_reduce(fx::w(p, "abBA")).empty());
    CHECK(fx::s(p, free_reduce(fx::w(p, "aAa"))) == "a");
    CHECK(fx::s(p, free_reduce(fx::w(p, "abAB"))) == "abAB");
}

TEST_CASE("free_reduce is idempotent and never lengthens, all words up to length 10") {
    for (std::size_t n = 0; n <= 10; ++n) {
        fx::for_each_word(4, n, [&](const Word& x) {
            Word r = free_reduce(x);
            REQUIRE(r.size() <= x.size());
            REQUIRE((x.size() - r.size()) % 2 == 0);
            REQUIRE(is_freely_reduced(r));
            REQUIRE(free_reduce(r) == r);
        });
    }
}

TEST_CASE("prefix and letter helpers") {
    auto p = fx::z2();
    Word x = fx::w(p, "abA");
    CHECK(fx::s(p, prefix(x, 2)) == "ab");
    CHECK(prefix(x, 7) == x);
    CHECK(prefix(x, 0).empty());
    for (Letter l = 0; l < 8; ++l) CHECK(inv(inv(l)) == l);
    CHECK(fx::s(p, inverse(x)) == "aBA");
}

TEST_CASE("cyclic_conjugates examples") {
    auto p = fx::z2();
    CHECK(display(p, cyclic_conjugates(fx::w(p, "abab"))) == std::set<std::string>{"abab", "baba"});
    CHECK(display(p, cyclic_conjugates(fx::w(p, "aa"))) == std::set<std::string>{"aa"});
    CHECK(display(p, cyclic_conjugates(fx::w(p, "abAB"))) ==
          std::set<std::string>{"abAB", "bABa", "ABab", "BabA"});
    CHECK_THROWS_AS(cyclic_conjugates(fx::w(p, "abA")), NotCyclicallyReduced);
    CHECK_THROWS_AS(cyclic_conjugates(fx::w(p, "aAb")), NotCyclicallyReduced);
}

TEST_CASE("symmetric closure sizes") {
    CHECK(symmetric_closure(fx::running()).relators.size() == 20);
    auto a = fx::aa();
    CHECK(display(a, symmetric_closure(a).relators) == std::set<std::string>{"aa", "AA"});
    CHECK(symmetric_closure(fx::z2()).relators.size() == 8);
}

TEST_CASE("symmetric closure agrees with reference and is idempotent") {
    for (const auto& p : {fx::running(), fx::z2(), fx::abab(), fx::aa(), fx::aaaa(), fx::free2()}) {
        auto c = symmetric_closure(p);
        std::set<Word> mine(c.relators.begin(), c.relators.end());
        CHECK(mine == closure_reference(p));
        CHECK(symmetric_closure(c).relators == c.relators);
        CHECK(is_symmetrically_closed(c));
        CHECK(c.relators.size() <= 2 * p.relators.size() * p.max_relator_length());
        for (const auto& r : c.relators) CHECK(is_cyclically_reduced(r));
    }
}

TEST_CASE("closure order is shortlex on display strings") {
    auto c = symmetric_closure(fx::z2());
    for (std::size_t i = 1; i < c.relators.size(); ++i) {
        std::string a = c.format(c.relators[i - 1]), b = c.format(c.relators[i]);
        CHECK((a.size() < b.size() || (a.size() == b.size() && a < b)));
    }
}

TEST_CASE("pieces examples") {
    auto r = fx::running();
    auto ps = pieces(r);
    auto ab = std::find_if(ps.begin(), ps.end(), [&](const Piece& x) { return r.format(x.word) == "ab"; });
    REQUIRE(ab != ps.end());
    CHECK(RelatorIndex(r).count_prefix(fx::w(r, "ab")) == 4);
    CHECK(pieces(fx::abab()).empty());
    auto z = fx::z2();
    std::set<std::string> words;
    for (const auto& pc : pieces(z)) words.insert(z.format(pc.word));
    CHECK(words == std::set<std::string>{"a", "b", "A", "B"});
}

TEST_CASE("every piece is a proper prefix of two distinct closure witnesses") {
    for (const auto& p : {fx::running(), fx::z2(), fx::aaaa()}) {
        auto cl = closure_reference(p);
        for (const auto& pc : pieces(p)) {
            CHECK(pc.witness1 != pc.witness2);
            CHECK(cl.count(pc.witness1));
            CHECK(cl.count(pc.witness2));
            CHECK(pc.word.size() < pc.witness1.size());
            CHECK(pc.witness1.compare(0, pc.word.size(), pc.word) == 0);
            CHECK(pc.witness2.compare(0, pc.word.size(), pc.word) == 0);
        }
    }
}

TEST_CASE("C(4) and T(4) examples") {
    for (const auto& p : {fx::running(), fx::aaaa(), fx::z2()}) {
        CHECK(check_C4(p).holds);
        CHECK(check_T4(p).holds);
    }
}

TEST_CASE("C(4) and T(4) agree with brute force on fixtures") {
    std::vector<Presentation> ps = {fx::running(), fx::aaaa(), fx::z2(), fx::abab(), fx::aa(), fx::free2(),
                                    make_presentation({"a", "b"}, {"abAB", "aabb"}),
                                    make_presentation({"a", "b"}, {"aab"}),
                                    make_presentation({"a", "b", "c"}, {"abc", "aBc"}),
                                    make_presentation({"a", "b"}, {"abAABB"})};
    for (const auto& p : ps) {
        auto c4 = check_C4(p);
        CHECK(c4.holds == c4_reference(p));
        if (!c4.holds) {
            Word joined;
            for (const auto& f : c4.decomposition) joined += f;
            CHECK(joined == c4.relator);
            CHECK(c4.decomposition.size() <= 3);
        }
        auto t4 = check_T4(p);
        CHECK(t4.holds == t4_reference(p));
        if (!t4.holds) {
            const auto& [a, b, c] = t4.triple;
            CHECK(a.back() == inv(b.front()));
            CHECK(b.back() == inv(c.front()));
            CHECK(c.back() == inv(a.front()));
        }
    }
}

TEST_CASE("check_H1") {
    CHECK(check_H1(fx::z2()));
    CHECK_FALSE(check_H1(fx::running()));
}

TEST_CASE("every_generator_is_piece") {
    CHECK(every_generator_is_piece(fx::z2()).holds);
    auto ab = every_generator_is_piece(fx::abab());
    CHECK_FALSE(ab.holds);
    CHECK(ab.offenders == std::vector<int>{0, 1});
    auto a = every_generator_is_piece(fx::aa());
    CHECK_FALSE(a.holds);
    CHECK(a.offenders == std::vector<int>{0});
}

TEST_CASE("degenerate presentations give vacuous truths") {
    auto f = fx::free2();
    CHECK(symmetric_closure(f).relators.empty());
    CHECK(pieces(f).empty());
    CHECK(check_C4(f).holds);
    CHECK(check_T4(f).holds);
    CHECK(check_H1(f));
}

TEST_CASE("text format round trip and errors") {
    auto p = parse_presentation("gens: a b\n# comment\n\nababaBABAB\n");
    CHECK(p.relators.size() == 1);
    CHECK(to_text(p) == "gens: a b\nababaBABAB\n");
    CHECK(parse_presentation(to_text(p)).relators == p.relators);
    try {
        parse_presentation("gens: a b\nabAB\nabxB\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_presentation("abAB\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("gens: a b\naAbB\n"), NotCyclicallyReduced);
    CHECK_THROWS_AS(parse_presentation("gens: a b\nabA\n"), NotCyclicallyReduced);
    CHECK_THROWS_AS(make_presentation({"a", "a"}, {}), Error);
}

TEST_CASE("multi-character generator names") {
    Alphabet a({"e[R1,1]", "e[R1,2]", "x"});
    Word w = a.parse("e[R1,1]E[R1,2]xX");
    REQUIRE(w.size() == 4);
    CHECK(w[1] == make_letter(1, true));
    CHECK(a.format(w) == "e[R1,1]E[R1,2]xX");
}
