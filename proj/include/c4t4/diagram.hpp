#pragma once

#include "c4t4/words.hpp"

#include <functional>
#include <memory>
#include <optional>

namespace c4t4 {

// Combinatorial map: darts come in pairs (d, d ^ 1); next[d] is the dart after d
// along the face on the left of d. Faces are the orbits of next. The outer face is
// the orbit containing `outer`; every other face is a region. A diagram with no
// darts is a single vertex.
struct Diagram {
    std::vector<int> next;
    std::vector<Letter> label;
    int outer = -1;

    std::size_t dart_count() const { return next.size(); }
    std::size_t edge_count() const { return next.size() / 2; }
};

struct Topology {
    std::vector<int> face;    // dart -> face id
    std::vector<int> origin;  // dart -> vertex id
    std::vector<int> prev;
    std::vector<std::vector<int>> faces;  // darts of each face in cycle order
    int outer_face = -1;
    int vertex_count = 1;

    std::vector<int> regions() const;
    bool is_outer(int d) const { return face[std::size_t(d)] == outer_face; }
    int target(int d) const { return origin[std::size_t(d ^ 1)]; }
};

Topology topology(const Diagram& d);

std::size_t region_count(const Diagram& d);
std::vector<Word> region_labels(const Diagram& d);

// Ccw boundary traversal; darts have the diagram on their left.
struct BoundaryPath {
    std::vector<int> darts;
    Word label;
};

class NotBoundaryDart : public Error {
public:
    using Error::Error;
};

// Default basepoint is outer ^ 1.
int default_basepoint(const Diagram& d);
BoundaryPath boundary_cycle(const Diagram& d, int basepoint);
BoundaryPath boundary_cycle(const Diagram& d);
Word boundary_label(const Diagram& d);

// Sub-path of the ccw boundary cycle starting at position `start`.
BoundaryPath boundary_segment(const Diagram& d, std::size_t start, std::size_t len, int basepoint = -1);
// A path read in the opposite direction.
BoundaryPath reversed(const BoundaryPath& p);

struct Defect {
    std::string what;
};

struct Validation {
    bool ok = true;
    std::vector<Defect> defects;
};

Validation validate(const Diagram& d, const RelatorIndex& closure);
Validation validate(const Diagram& d, const Presentation& p);

struct Classification {
    std::vector<bool> vertex_inner;
    std::vector<int> vertex_valence;
    std::vector<bool> edge_inner;           // by edge id = dart / 2
    std::vector<int> regions;               // face ids of regions
    std::vector<bool> region_inner;         // indexed like `regions`
    std::vector<int> region_neighbors;      // edge-sharing neighbor counts
    std::vector<int> region_edges;          // distinct edges on each region boundary

    std::size_t inner_vertices() const;
    std::size_t inner_edges() const;
};

Classification classify_elements(const Diagram& d);

struct ReducedResult {
    bool reduced = true;
    int dart = -1;  // shared dart between the offending regions
    int region1 = -1, region2 = -1;
};

ReducedResult is_reduced(const Diagram& d);

// Reflection of the plane; region labels become inverse relators.
Diagram mirror(const Diagram& d);

// Lexicographically least traversal code over roots and both orientations.
std::vector<std::uint32_t> canonical_key(const Diagram& d);
bool equivalent(const Diagram& a, const Diagram& b);

// Grows diagrams from the outside. Positions index the ccw boundary cycle.
class DiagramBuilder {
public:
    DiagramBuilder() = default;
    static DiagramBuilder polygon(const Word& r);
    static DiagramBuilder from(const Diagram& d);

    std::size_t boundary_length() const { return ccw_.size(); }
    Word boundary_label() const;
    std::size_t region_count() const { return regions_; }

    // Replaces the arc [pos, pos+len) by a new path labelled `path` (nonempty), closing
    // a region whose ccw label is inverse(arc label) followed by path.
    void attach(std::size_t pos, std::size_t len, const Word& path);
    // Inserts x x^-1 before position pos.
    void spike(std::size_t pos, Letter x);
    // Position k becomes position 0.
    void rotate(std::size_t k);

    Diagram build() const;

private:
    std::vector<int> next_;
    std::vector<Letter> label_;
    std::vector<int> ccw_;
    std::size_t regions_ = 0;

    int new_edge(Letter l);
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

struct EnumerationOptions {
    std::size_t max_regions = 4;
    std::size_t cap = 4;
    std::optional<Word> boundary;  // compared up to rotation and inversion
    std::size_t max_diagrams = 20'000'000;
};

// Disk diagrams with simple boundary obtained by attaching regions along proper
// boundary arcs, one per equivalence class, by region count then canonical key.
void enumerate_diagrams(const Presentation& p, const EnumerationOptions& opt,
                        const std::function<void(const Diagram&)>& fn);
std::vector<Diagram> enumerate_diagrams(const Presentation& p, const EnumerationOptions& opt);

// Exact minimal region count of disk diagrams with a given boundary label, by
// peeling one region off a boundary arc at a time (boundary search with memo).
class AreaSolver {
public:
    explicit AreaSolver(const Presentation& p);
    explicit AreaSolver(std::shared_ptr<const RelatorIndex> closure);

    std::optional<std::size_t> area(const Word& w, std::size_t limit);
    // A diagram with boundary_label() == w and area(w) regions.
    std::optional<Diagram> witness(const Word& w, std::size_t limit);

    const RelatorIndex& closure() const { return *closure_; }

private:
    std::shared_ptr<const RelatorIndex> closure_;
    std::unordered_map<Word, std::size_t> fails_;  // canonical word -> largest k proved unfillable
    std::unordered_map<Word, std::size_t> exact_;  // canonical word -> area

    bool fillable(const Word& cr, std::size_t k);
    std::optional<DiagramBuilder> build(const Word& cr, std::size_t k);
};

struct MinimalityCertificate {
    bool minimal = true;
    std::size_t bound = 0;           // regions of d; no diagram with fewer exists
    std::optional<Diagram> smaller;  // same boundary label, fewer regions
};

MinimalityCertificate is_minimal(const Diagram& d, AreaSolver& solver);
MinimalityCertificate is_minimal(const Diagram& d, const Presentation& p);

bool check_C4T4_map(const Diagram& d);
bool check_proper_C4T4_map(const Diagram& d);

struct ThickConfiguration {
    enum class Kind { First, Second };
    Kind kind;
    std::vector<int> regions;  // First: {D}; Second: {D1, D2}
    std::size_t mu_start = 0;  // index into alpha
    std::size_t mu_length = 0;
    std::vector<int> sigma;    // darts of the region boundary not on mu
    int extra_edge = -1;       // Second: the dart e of alpha preceding mu
};

// `alpha` is a boundary path in its own direction (ccw or clockwise).
std::vector<ThickConfiguration> detect_thick_configurations(const Diagram& d, const BoundaryPath& alpha);

class BadDecomposition : public Error {
public:
    using Error::Error;
};

// Vertex: a region boundary meets a path if they share a vertex. Edge: they share an edge.
enum class ThinMode { Vertex, Edge };

// delta and mu share endpoints and delta * mu^-1 is a ccw boundary cycle.
bool is_thin(const Diagram& d, const BoundaryPath& delta, const BoundaryPath& mu, ThinMode mode = ThinMode::Vertex);
// Split of the ccw boundary from `basepoint`: delta = first k darts, mu^-1 = the rest.
bool is_thin(const Diagram& d, std::size_t k, int basepoint = -1, ThinMode mode = ThinMode::Vertex);
std::pair<BoundaryPath, BoundaryPath> split_boundary(const Diagram& d, std::size_t k, int basepoint = -1);

struct H2Report {
    bool holds = true;
    bool exhausted_budget = false;
    std::size_t diagrams = 0;
    std::size_t minimal = 0;
    std::optional<Diagram> counterexample;
    std::string clause;
};

// Clause (b): two distinct regions never share two edges meeting at a vertex.
bool shared_paths_are_single_edges(const Diagram& d);

H2Report check_H2(const Presentation& p, std::size_t max_regions, std::size_t max_diagrams = 5'000'000);

}  // namespace c4t4
