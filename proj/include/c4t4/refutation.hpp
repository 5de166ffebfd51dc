#pragma once

#include "c4t4/peifer.hpp"

namespace c4t4 {

class NotApplicable : public Error {
public:
    using Error::Error;
};
class ReplacementUnavailable : public Error {
public:
    using Error::Error;
};
class OracleBudget : public Error {
public:
    using Error::Error;
};

struct Shortable {
    std::size_t pos = 0;
    std::size_t len = 0;
    Word replacement;  // V, with |V| < len
};

// Leftmost, then longest, subword W2 with a strictly shorter V such that W2 V^-1
// bounds a diagram of one or two regions (|W2| + |V| <= 6). Uses only the local test.
std::optional<Shortable> find_shortable(const DominoIndex& idx, AreaSolver& solver, const Word& w);
std::optional<Shortable> find_shortable(const Presentation& p, const Word& w);

// A domino contained in a ccw boundary path, biased from the first dart of mu.
struct ContainedDomino {
    std::size_t start = 0;       // index of mu in the path
    std::array<int, 6> darts{};  // boundary cycle of N from mu
    int inner = -1;              // inner dart of the first region
    int first_region = -1, second_region = -1;
    BiasedDomino biased;
    bool stable = false;

    bool well_positioned() const { return biased.dtype != 1 || stable; }
};

// `path` darts have the diagram on their left (a ccw boundary path).
std::vector<ContainedDomino> contained_dominoes(const Diagram& d, const std::vector<int>& path, const DominoIndex& idx,
                                                Equivalence e = Equivalence::Strict);

struct WellPositioned {
    Diagram diagram;
    std::size_t replacements = 0;
    std::size_t passes = 0;
};

// alpha is ccw, beta runs in its own direction (boundary cycle alpha beta^-1), as
// returned by split_boundary. Dart ids of both paths stay valid in the result.
WellPositioned well_position(const Diagram& d, const BoundaryPath& alpha, const BoundaryPath& beta,
                             const DominoIndex& idx, Equivalence e = Equivalence::Strict);
bool all_well_positioned(const Diagram& d, const BoundaryPath& alpha, const BoundaryPath& beta,
                         const DominoIndex& idx, Equivalence e = Equivalence::Strict);

struct Refutation {
    enum class Kind { Shortable, FreeReduction, ThickConfig, ThinDiagram };

    Word original;
    Word replacement;
    std::size_t fellow_constant = 0;  // measured
    std::size_t bound = 0;            // declared
    Kind kind = Kind::FreeReduction;
    std::size_t pos = 0, len = 0;     // rewritten span of the original
    std::optional<Diagram> diagram;
    Certificate certificate;          // original -> replacement
    // ThickConfig gates.
    std::optional<Triplet> triplet;
    bool triplet_stable = false;
    bool grade_decreases = false;

    bool within_bound() const { return fellow_constant <= bound; }
};

const char* kind_name(Refutation::Kind k);

struct RefuteOptions {
    std::size_t area_limit = 12;
    std::size_t max_chain = 64;
    Equivalence equivalence = Equivalence::Strict;
    OrderMode mode = OrderMode::LengthFirst;
};

struct NormalForm {
    Word word;
    std::vector<Refutation> chain;
    Certificate certificate;  // input -> word
};

// Refutations against a fixed presentation, grading and metric ball.
class Refuter {
public:
    Refuter(const Presentation& p, const MetricBall& ball, Gradings g, RefuteOptions opt = {});

    const DominoIndex& index() const { return idx_; }
    const Gradings& gradings() const { return g_; }
    const MetricBall& ball() const { return ball_; }
    AreaSolver& solver() { return solver_; }

    std::optional<Shortable> find_shortable(const Word& w) { return c4t4::find_shortable(idx_, solver_, w); }
    // Throws NotApplicable.
    Refutation refute_shortable(const Word& w);
    // d has boundary cycle alpha beta^-1. Throws NotApplicable.
    Refutation refute_thick(const Diagram& d, const BoundaryPath& alpha);

    // The least member of the class of w among ball words.
    Word least_equal(const Word& w) const;
    // Minimal equality diagram for w and u, with alpha = first |w| boundary darts.
    Diagram equality_diagram(const Word& w, const Word& u);

    // nullopt when w is the least word of its class. Throws OracleBudget.
    std::optional<Refutation> refute(const Word& w);
    NormalForm normalize(const Word& w);

private:
    const MetricBall& ball_;
    DominoIndex idx_;
    AreaSolver solver_;
    Gradings g_;
    RefuteOptions opt_;
    std::set<Triplet> triplets_;

    void measure(Refutation& r) const;
};

nlohmann::json to_json(const Refutation& r, const Alphabet& a);
nlohmann::json to_json(const NormalForm& n, const Alphabet& a);

struct EndgameReport {
    std::size_t pairs = 0;        // (x, W, y, U) with xW = Uy
    std::size_t uncertified = 0;  // x W y^-1 outside the ball universe
    std::size_t max_constant = 0;
    std::size_t violations = 0;  // constant > 9
    std::size_t hausdorff_checked = 0;
    std::size_t hausdorff_unmet = 0;
    std::size_t hausdorff_violated = 0;
    std::optional<std::array<Word, 2>> worst;  // xW, Uy
};

// All least words W, U of length <= max_len and x, y in letters or empty with xW = Uy in the ball.
EndgameReport fellow_traveller_endgame(const MetricBall& ball, const Gradings& g, std::size_t max_len,
                                       std::size_t letters, std::size_t s = 4, OrderMode mode = OrderMode::LengthFirst);

}  // namespace c4t4
