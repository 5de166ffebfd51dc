#pragma once

#include "c4t4/words.hpp"

#include <map>
#include <memory>
#include <optional>

namespace c4t4 {

// One rewriting move: the factor `from` at `pos` is replaced by `to`.
struct Step {
    enum class Kind { FreeDelete, FreeInsert, Substitute };
    Kind kind;
    std::size_t pos;
    Word from;
    Word to;

    Step reversed() const;
};

const char* kind_name(Step::Kind k);

struct Certificate {
    std::vector<Step> steps;

    std::size_t area() const;
    Certificate reversed() const;
    void append(const Certificate& other);
};

// Replays a certificate from `start`; returns the final word, or nullopt with a
// reason if some step is not a legal move over the closure.
std::optional<Word> replay(const RelatorIndex& closure, const Word& start, const Certificate& cert,
                           std::string* why = nullptr);

// Free-reduction steps turning w into free_reduce(w).
Certificate free_reduction_steps(const Word& w);

class BudgetInvalid : public Error {
public:
    using Error::Error;
};

struct Budget {
    std::size_t max_len = 0;    // 0: max(|w|,|u|) + 2 * max relator length
    std::size_t max_steps = 0;  // 0: (|w| + |u| + 1)^2
    std::size_t max_nodes = 400000;
};

struct EqualityVerdict {
    enum class Status { Equal, Unknown };
    Status status = Status::Unknown;
    Certificate certificate;
    std::size_t budget_spent = 0;

    bool equal() const { return status == Status::Equal; }
};

EqualityVerdict equal_in_group(const RelatorIndex& closure, std::size_t rank, const Word& w, const Word& u,
                               Budget budget = {});
EqualityVerdict equal_in_group(const Presentation& p, const Word& w, const Word& u, Budget budget = {});

class WordExceedsBall : public Error {
public:
    using Error::Error;
};

class BallBudgetExceeded : public Error {
public:
    using Error::Error;
};

class NotEqual : public Error {
public:
    using Error::Error;
};

class NotGeodesic : public Error {
public:
    using Error::Error;
};

struct BallBudget {
    std::size_t cap = 0;  // 0: radius + max relator length
    std::size_t max_words = 4'000'000;
};

// Equality classes of freely reduced words of length <= radius, merged through
// certified moves among words of length <= cap.
class MetricBall {
public:
    std::size_t radius() const { return radius_; }
    std::size_t cap() const { return cap_; }
    bool saturated() const { return saturated_; }

    std::size_t class_count() const { return ball_classes_.size(); }
    const std::vector<std::size_t>& classes() const { return ball_classes_; }
    std::size_t identity_class() const { return class_of(Word{}); }

    // Any word whose free reduction is within the cap.
    std::size_t class_of(const Word& w) const;
    bool in_universe(const Word& w) const;

    // Freely reduced members of length <= radius, shortlex ascending.
    const std::vector<Word>& members(std::size_t cls) const;
    const Word& shortest(std::size_t cls) const;

    bool same_class(const Word& a, const Word& b) const { return class_of(a) == class_of(b); }
    std::size_t distance(std::size_t c1, std::size_t c2) const;
    std::size_t distance(const Word& a, const Word& b) const { return distance(class_of(a), class_of(b)); }

    // Replayable certificate a -> b for two words of one class.
    Certificate certificate(const Word& a, const Word& b) const;

    const RelatorIndex& closure() const { return *closure_; }

private:
    friend MetricBall build_ball(const Presentation& p, std::size_t radius, BallBudget budget);

    // A merge from word a to word b: `step` applied to a gives `via`, which freely reduces to b.
    struct Merge {
        std::uint32_t a, b;
        Step step;
        Word via;
    };
    struct ForestEdge {
        std::uint32_t other;
        std::uint32_t merge;
        bool forward;
    };

    std::size_t radius_ = 0;
    std::size_t cap_ = 0;
    std::size_t rank_ = 0;
    bool saturated_ = false;
    std::shared_ptr<RelatorIndex> closure_;
    std::vector<Word> words_;
    std::unordered_map<Word, std::uint32_t> ids_;
    std::vector<std::uint32_t> cls_;  // word id -> dense class id
    std::vector<Merge> merges_;
    std::vector<std::vector<ForestEdge>> forest_;
    std::size_t dense_classes_ = 0;
    std::vector<std::size_t> ball_classes_;
    std::map<std::size_t, std::vector<Word>> members_;
    std::vector<std::vector<std::uint32_t>> quotient_;
    mutable std::map<std::size_t, std::vector<std::uint32_t>> dist_cache_;

    std::uint32_t id_of(const Word& w) const;
};

MetricBall build_ball(const Presentation& p, std::size_t radius, BallBudget budget = {});

struct GeodesicVerdict {
    bool geodesic = true;  // within the ball's budget
    Word shorter;
    Certificate certificate;
};

GeodesicVerdict is_geodesic(const MetricBall& ball, const Word& w);

std::size_t fellow_travel_constant(const MetricBall& ball, const Word& w, const Word& u);

struct HausdorffReport {
    enum class Status { Holds, Violated, PreconditionUnmet };
    Status status = Status::PreconditionUnmet;
    std::size_t measured = 0;
    std::string reason;

    bool holds() const { return status == Status::Holds; }
};

// Throws NotEqual / NotGeodesic when the words are not equal or not geodesic.
HausdorffReport check_hausdorff_fellow_travel(const MetricBall& ball, const Word& xw, const Word& uy,
                                              std::size_t s);

}  // namespace c4t4
