#pragma once

#include "c4t4/diagram.hpp"

#include <array>
#include <functional>
#include <json.hpp>
#include <set>

namespace c4t4 {

class H1Violated : public Error {
public:
    using Error::Error;
};
class CyclicGraph : public Error {
public:
    using Error::Error;
};

// Two length-4 closure elements glued along their first letters: first = z a1 a2 a3,
// second = z^-1 b1 b2 b3. The ccw boundary label is a1 a2 a3 b1 b2 b3.
struct Domino {
    Word first;
    Word second;

    Letter inner_label() const { return first[0]; }
    Word boundary_label() const { return first.substr(1) + second.substr(1); }
    Diagram diagram() const;

    // Least of the four readings (swap regions, mirror).
    Domino canonical() const;
    Domino mirror() const;
    Domino swapped() const { return {second, first}; }
    bool reduced() const;

    auto operator<=>(const Domino&) const = default;
};

// dtype and inner label of one domino with respect to a basepoint of its boundary label.
// The inner label is read on the inner edge directed from boundary position (s mod 3) + 3
// towards (s mod 3), where s is the position where the run of `first` starts.
struct Realization {
    int dtype = 3;
    Letter inner = 0;
    auto operator<=>(const Realization&) const = default;
};

struct BiasedDomino {
    Domino domino;
    std::size_t basepoint = 0;  // index into domino.boundary_label()
    int dtype = 3;
    Letter inner_label = 0;

    Word label() const { return rotate(domino.boundary_label(), basepoint); }
    Realization realization() const { return {dtype, inner_label}; }
};

BiasedDomino classify_biased(const Domino& d, std::size_t basepoint);
Realization realization_at(std::size_t s, Letter z);
// Geometric typing from region membership of the boundary darts starting at `base`.
int classify_biased(const Diagram& d, int base);

enum class Equivalence { Strict, TypeOnly };

using Triplet = std::array<Letter, 3>;

// Length-4 closure with packed membership and 3-letter completion lookup.
class DominoIndex {
public:
    // Throws H1Violated.
    explicit DominoIndex(const Presentation& p);

    std::size_t letter_count() const { return letters_; }
    const RelatorIndex& closure() const { return closure_; }

    std::vector<Realization> realizations(const Word& label) const;
    // Raw gluings (s, z): regions z label[s..s+3) and z^-1 label[s+3..s+6), cyclically.
    std::vector<std::pair<std::size_t, Letter>> splits(const Word& label) const;
    bool is_stable(const BiasedDomino& d, Equivalence e = Equivalence::Strict) const;
    bool is_stable(const Domino& d, Equivalence e = Equivalence::Strict) const {
        return is_stable(classify_biased(d, 0), e);
    }

    // Every reduced ordered gluing (each equivalence class is visited four times).
    void for_each_gluing(const std::function<void(const Domino&)>& fn) const;

private:
    RelatorIndex closure_;
    std::size_t letters_ = 0;
    std::unordered_set<std::uint64_t> quads_;
    std::unordered_map<std::uint64_t, std::vector<Letter>> completions_;
};

// Canonical representatives, sorted.
std::vector<Domino> enumerate_dominoes(const Presentation& p);
std::vector<Domino> enumerate_dominoes(const DominoIndex& idx);

std::vector<Realization> realizations(const Presentation& p, const Word& label);
bool is_stable(const BiasedDomino& d, const Presentation& p, Equivalence e = Equivalence::Strict);

// The two triplets at each valence-3 vertex, in both orientations of the boundary.
std::array<Triplet, 4> domino_triplets(const Domino& d);

struct TripletScan {
    std::set<Triplet> triplets;
    std::size_t dominoes = 0;  // equivalence classes
    std::size_t stable = 0;
};

TripletScan stable_triplets(const DominoIndex& idx, Equivalence e = Equivalence::Strict);
std::set<Triplet> stable_triplets(const Presentation& p);

struct StabilityGraph {
    Letter x = 0;
    std::size_t vertices = 0;  // letter codes 0 .. vertices-1
    std::set<std::pair<Letter, Letter>> edges;
};

StabilityGraph stability_graph(const std::set<Triplet>& triplets, Letter x, std::size_t letter_count);
StabilityGraph stability_graph(const Presentation& p, Letter x);

struct AcyclicReport {
    bool acyclic = true;
    std::vector<Letter> cycle;  // witness, first vertex not repeated
};
AcyclicReport assert_acyclic(const StabilityGraph& g);

struct GradingTable {
    Letter x = 0;
    std::vector<int> grades;  // by letter code, values in 1 .. vertices
    bool satisfies(const StabilityGraph& g) const;
};

// Longest-path layering then code order. Throws CyclicGraph.
GradingTable grading(const StabilityGraph& g);

struct SubstitutionWitness {
    Word label;  // stable biased domino label x y a b c d
    int dtype = 0;
    Word relator;    // x y w^-1 z^-1
    Word new_label;  // z w a b c d
    std::vector<Realization> found;
};

struct SubstitutionReport {
    bool holds = true;
    bool exhausted_budget = false;
    std::size_t checked = 0;
    std::array<std::size_t, 4> checked_by_type{};  // index dtype
    std::array<std::size_t, 4> failed_by_type{};
    std::array<std::optional<SubstitutionWitness>, 4> witness_by_type;
    std::optional<SubstitutionWitness> witness;  // first failure
};

SubstitutionReport verify_stable_substitution(const DominoIndex& idx, std::size_t budget = 100'000'000,
                                              Equivalence e = Equivalence::Strict);
SubstitutionReport verify_stable_substitution(const Presentation& p, std::size_t budget = 100'000'000);

std::string to_dot(const StabilityGraph& g, const Alphabet& a);
nlohmann::json dominoes_json(const std::vector<Domino>& ds, const DominoIndex& idx, const Alphabet& a);
nlohmann::json triplets_json(const std::set<Triplet>& ts, const Alphabet& a);
nlohmann::json gradings_json(const std::vector<GradingTable>& gs, const Alphabet& a);

}  // namespace c4t4
