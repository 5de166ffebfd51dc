#pragma once

#include "c4t4/dominoes.hpp"
#include "c4t4/oracle.hpp"

#include <json.hpp>

namespace c4t4 {

class BothEmpty : public Error {
public:
    using Error::Error;
};
class MissingGrading : public Error {
public:
    using Error::Error;
};
class BallTooSmall : public Error {
public:
    using Error::Error;
};

constexpr Letter kPad = 0xFFFF;

struct PaddedPairSymbol {
    Letter left = kPad;
    Letter right = kPad;
    auto operator<=>(const PaddedPairSymbol&) const = default;
};

std::vector<PaddedPairSymbol> delta_sigma(const Word& w, const Word& u);

// G_x for every letter x; rows may be missing.
class Gradings {
public:
    Gradings() = default;
    explicit Gradings(std::size_t letters) : rows_(letters) {}
    explicit Gradings(const std::vector<GradingTable>& tables);

    std::size_t letter_count() const { return rows_.size(); }
    void set(Letter x, std::vector<int> row) { rows_.at(x) = std::move(row); }
    bool has(Letter x) const { return x < rows_.size() && !rows_[x].empty(); }
    bool total() const;
    // G_prev(x). Throws MissingGrading.
    int grade(Letter prev, Letter x) const;

private:
    std::vector<std::vector<int>> rows_;
};

// Gradings of all stability graphs of p.
Gradings stability_gradings(const Presentation& p);
Gradings gradings_from_json(const nlohmann::json& j, const Alphabet& a);

std::vector<int> peifer_vector(const Word& w, const Gradings& g);

enum class Cmp { Less, Equal, Greater };

// LengthFirst: (|w|, kappa, word). Literal: (kappa, word) with lexicographic kappa.
enum class OrderMode { LengthFirst, Literal };

Cmp compare(const Word& w, const Word& u, const Gradings& g, OrderMode mode = OrderMode::LengthFirst);
inline bool precedes(const Word& w, const Word& u, const Gradings& g, OrderMode mode = OrderMode::LengthFirst) {
    return compare(w, u, g, mode) == Cmp::Less;
}

// Deterministic, complete automaton over (letters+1)^2 padded symbols; symbol
// (l, r) has index l * (letters + 1) + r with PAD encoded as `letters`.
struct PairAutomaton {
    std::size_t letters = 0;
    std::size_t states = 0;
    std::size_t start = 0;
    std::vector<bool> accepting;
    std::vector<std::size_t> transition;  // state * symbol_count() + symbol

    std::size_t symbol_count() const { return (letters + 1) * (letters + 1); }
    std::size_t symbol(PaddedPairSymbol s) const;
    std::size_t step(std::size_t state, PaddedPairSymbol s) const {
        return transition[state * symbol_count() + symbol(s)];
    }
    bool accepts(const std::vector<PaddedPairSymbol>& input) const;
    bool accepts(const Word& w, const Word& u) const;

    bool operator==(const PairAutomaton&) const = default;
};

// Accepts delta_sigma(w, u) iff compare(w, u) == Less. Minimized, states numbered in
// breadth-first order from the start state.
PairAutomaton build_order_automaton(std::size_t letters, const Gradings& g, OrderMode mode = OrderMode::LengthFirst);
PairAutomaton minimize(const PairAutomaton& a);

// {"letters", "states", "start", "accepting": [...], "transitions": [[state, left, right, target]]}
// with PAD written as "$" and letters by name.
nlohmann::json to_json(const PairAutomaton& a, const Alphabet& alpha);
std::string to_dot(const PairAutomaton& a, const Alphabet& alpha);

// The least word of each equality class that has a member of length <= max_len.
// Throws BallTooSmall when the ball radius is below max_len.
std::vector<Word> minimal_words_sample(const MetricBall& ball, const Gradings& g, std::size_t max_len,
                                       OrderMode mode = OrderMode::LengthFirst);

}  // namespace c4t4
