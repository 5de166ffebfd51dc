#include "c4t4/peifer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace c4t4 {

std::vector<PaddedPairSymbol> delta_sigma(const Word& w, const Word& u) {
    if (w.empty() && u.empty()) throw BothEmpty("(empty, empty) has no padded encoding");
    std::size_t n = std::max(w.size(), u.size());
    std::vector<PaddedPairSymbol> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = {i < w.size() ? w[i] : kPad, i < u.size() ? u[i] : kPad};
    return out;
}

Gradings::Gradings(const std::vector<GradingTable>& tables) {
    std::size_t n = 0;
    for (const auto& t : tables) n = std::max({n, t.grades.size(), std::size_t(t.x) + 1});
    rows_.resize(n);
    for (const auto& t : tables) rows_[t.x] = t.grades;
}

bool Gradings::total() const {
    return std::all_of(rows_.begin(), rows_.end(), [&](const auto& r) { return r.size() == rows_.size(); });
}

int Gradings::grade(Letter prev, Letter x) const {
    if (!has(prev) || x >= rows_[prev].size()) throw MissingGrading("no grading for letter code " + std::to_string(prev));
    return rows_[prev][x];
}

Gradings stability_gradings(const Presentation& p) {
    DominoIndex idx(p);
    auto ts = stable_triplets(idx).triplets;
    std::size_t n = idx.letter_count();
    Gradings g(n);
    for (std::size_t x = 0; x < n; ++x) g.set(Letter(x), grading(stability_graph(ts, Letter(x), n)).grades);
    return g;
}

Gradings gradings_from_json(const nlohmann::json& j, const Alphabet& a) {
    Gradings g(a.letter_count());
    auto letter = [&](const std::string& name) {
        auto w = a.parse(name);
        if (w.size() != 1) throw ParseError("not a letter: " + name, 0);
        return w[0];
    };
    for (const auto& [x, row] : j.items()) {
        std::vector<int> grades(a.letter_count(), 0);
        for (const auto& [y, v] : row.items()) grades.at(letter(y)) = v.get<int>();
        g.set(letter(x), grades);
    }
    return g;
}

std::vector<int> peifer_vector(const Word& w, const Gradings& g) {
    std::vector<int> k(w.size(), 0);
    for (std::size_t i = 1; i < w.size(); ++i) k[i] = g.grade(w[i - 1], w[i]);
    return k;
}

Cmp compare(const Word& w, const Word& u, const Gradings& g, OrderMode mode) {
    if (w == u) return Cmp::Equal;
    if (mode == OrderMode::LengthFirst && w.size() != u.size()) return w.size() < u.size() ? Cmp::Less : Cmp::Greater;
    auto kw = peifer_vector(w, g), ku = peifer_vector(u, g);
    if (kw != ku) return kw < ku ? Cmp::Less : Cmp::Greater;
    return w < u ? Cmp::Less : Cmp::Greater;
}

std::size_t PairAutomaton::symbol(PaddedPairSymbol s) const {
    std::size_t l = s.left == kPad ? letters : s.left, r = s.right == kPad ? letters : s.right;
    return l * (letters + 1) + r;
}

bool PairAutomaton::accepts(const std::vector<PaddedPairSymbol>& input) const {
    std::size_t q = start;
    for (auto s : input) q = step(q, s);
    return accepting[q];
}

bool PairAutomaton::accepts(const Word& w, const Word& u) const {
    if (w.empty() && u.empty()) return accepting[start];
    return accepts(delta_sigma(w, u));
}

namespace {

// Verdict so far: equal, kappa decided, or kappa equal with the words already differing.
enum Verdict { Eq, KLess, KGreater, WLess, WGreater };

struct State {
    std::size_t left, right;  // previous letters, `letters` when none
    int pad;                  // 0 none, 1 left padded, 2 right padded
    int verdict;
    auto operator<=>(const State&) const = default;
};

bool accepting_state(const State& s, OrderMode mode) {
    if (mode == OrderMode::LengthFirst) {
        if (s.pad != 0) return s.pad == 1;
        return s.verdict == KLess || s.verdict == WLess;
    }
    if (s.verdict == KLess || s.verdict == KGreater) return s.verdict == KLess;
    if (s.pad != 0) return s.pad == 1;
    return s.verdict == WLess;
}

}  // namespace

PairAutomaton build_order_automaton(std::size_t letters, const Gradings& g, OrderMode mode) {
    const std::size_t none = letters, syms = (letters + 1) * (letters + 1);
    std::map<State, std::size_t> id;
    std::vector<State> states;
    const std::size_t dead = 0;
    PairAutomaton a;
    a.letters = letters;
    a.accepting.push_back(false);
    a.transition.assign(syms, dead);
    auto intern = [&](const State& s) {
        auto [it, fresh] = id.emplace(s, id.size() + 1);
        if (fresh) {
            states.push_back(s);
            a.accepting.push_back(accepting_state(s, mode));
            a.transition.resize(a.transition.size() + syms, dead);
        }
        return it->second;
    };
    a.start = intern({none, none, 0, Eq});
    for (std::size_t q = 0; q < states.size(); ++q) {
        for (std::size_t l = 0; l <= letters; ++l)
            for (std::size_t r = 0; r <= letters; ++r) {
                State s = states[q];
                bool lp = l == none, rp = r == none;
                if (lp && rp) continue;
                if ((s.pad == 1 && !lp) || (s.pad == 2 && !rp)) continue;
                State t = s;
                if (lp || rp) {
                    t = {none, none, lp ? 1 : 2, s.verdict};
                } else {
                    int el = s.left == none ? 0 : g.grade(Letter(s.left), Letter(l));
                    int er = s.right == none ? 0 : g.grade(Letter(s.right), Letter(r));
                    t.left = l;
                    t.right = r;
                    if (s.verdict == Eq || s.verdict == WLess || s.verdict == WGreater) {
                        if (el != er)
                            t.verdict = el < er ? KLess : KGreater;
                        else if (s.verdict == Eq && l != r)
                            t.verdict = l < r ? WLess : WGreater;
                    }
                }
                std::size_t target = intern(t);
                a.transition[(q + 1) * syms + l * (letters + 1) + r] = target;
            }
    }
    a.states = states.size() + 1;
    return minimize(a);
}

PairAutomaton minimize(const PairAutomaton& a) {
    const std::size_t syms = a.symbol_count();
    std::vector<std::size_t> cls(a.states);
    for (std::size_t q = 0; q < a.states; ++q) cls[q] = a.accepting[q] ? 1 : 0;
    std::size_t count = 0;
    for (;;) {
        std::map<std::vector<std::size_t>, std::size_t> sig;
        std::vector<std::size_t> next(a.states);
        for (std::size_t q = 0; q < a.states; ++q) {
            std::vector<std::size_t> key{cls[q]};
            for (std::size_t s = 0; s < syms; ++s) key.push_back(cls[a.transition[q * syms + s]]);
            next[q] = sig.emplace(std::move(key), sig.size()).first->second;
        }
        bool stable = sig.size() == count;
        count = sig.size();
        cls = std::move(next);
        if (stable) break;
    }
    // Breadth-first renumbering from the start state.
    std::vector<std::size_t> rep(count, a.states), order;
    for (std::size_t q = 0; q < a.states; ++q)
        if (rep[cls[q]] == a.states) rep[cls[q]] = q;
    std::vector<std::size_t> num(count, count);
    std::deque<std::size_t> queue{cls[a.start]};
    num[cls[a.start]] = 0;
    order.push_back(cls[a.start]);
    while (!queue.empty()) {
        std::size_t c = queue.front();
        queue.pop_front();
        for (std::size_t s = 0; s < syms; ++s) {
            std::size_t d = cls[a.transition[rep[c] * syms + s]];
            if (num[d] == count) {
                num[d] = order.size();
                order.push_back(d);
                queue.push_back(d);
            }
        }
    }
    PairAutomaton m;
    m.letters = a.letters;
    m.states = order.size();
    m.start = 0;
    m.accepting.resize(m.states);
    m.transition.resize(m.states * syms);
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::size_t q = rep[order[i]];
        m.accepting[i] = a.accepting[q];
        for (std::size_t s = 0; s < syms; ++s) m.transition[i * syms + s] = num[cls[a.transition[q * syms + s]]];
    }
    return m;
}

namespace {

std::string symbol_name(const Alphabet& alpha, std::size_t letters, std::size_t x) {
    return x == letters ? "$" : alpha.name(Letter(x));
}

}  // namespace

nlohmann::json to_json(const PairAutomaton& a, const Alphabet& alpha) {
    nlohmann::json j;
    j["letters"] = a.letters;
    j["states"] = a.states;
    j["start"] = a.start;
    auto acc = nlohmann::json::array();
    for (std::size_t q = 0; q < a.states; ++q)
        if (a.accepting[q]) acc.push_back(q);
    j["accepting"] = acc;
    auto tr = nlohmann::json::array();
    for (std::size_t q = 0; q < a.states; ++q)
        for (std::size_t l = 0; l <= a.letters; ++l)
            for (std::size_t r = 0; r <= a.letters; ++r) {
                if (l == a.letters && r == a.letters) continue;
                tr.push_back({q, symbol_name(alpha, a.letters, l), symbol_name(alpha, a.letters, r),
                              a.transition[q * a.symbol_count() + l * (a.letters + 1) + r]});
            }
    j["transitions"] = tr;
    return j;
}

std::string to_dot(const PairAutomaton& a, const Alphabet& alpha) {
    std::ostringstream out;
    out << "digraph order {\n  rankdir=LR;\n";
    for (std::size_t q = 0; q < a.states; ++q)
        out << "  q" << q << " [shape=" << (a.accepting[q] ? "doublecircle" : "circle") << "];\n";
    for (std::size_t q = 0; q < a.states; ++q) {
        std::map<std::size_t, std::vector<std::string>> by_target;
        for (std::size_t l = 0; l <= a.letters; ++l)
            for (std::size_t r = 0; r <= a.letters; ++r) {
                if (l == a.letters && r == a.letters) continue;
                by_target[a.transition[q * a.symbol_count() + l * (a.letters + 1) + r]].push_back(
                    symbol_name(alpha, a.letters, l) + "/" + symbol_name(alpha, a.letters, r));
            }
        for (const auto& [t, labels] : by_target) {
            out << "  q" << q << " -> q" << t << " [label=\"";
            for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? " " : "") << labels[i];
            out << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::vector<Word> minimal_words_sample(const MetricBall& ball, const Gradings& g, std::size_t max_len,
                                       OrderMode mode) {
    if (ball.radius() < max_len)
        throw BallTooSmall("ball radius " + std::to_string(ball.radius()) + " below " + std::to_string(max_len));
    std::vector<Word> out;
    for (std::size_t c : ball.classes()) {
        const Word* best = nullptr;
        for (const auto& m : ball.members(c)) {
            if (m.size() > max_len) continue;
            if (!best || precedes(m, *best, g, mode)) best = &m;
        }
        if (best) out.push_back(*best);
    }
    std::sort(out.begin(), out.end(), shortlex_less);
    return out;
}

}  // namespace c4t4
