#pragma once

#include "c4t4/diagram.hpp"

namespace c4t4 {

class NotSymmetricallyClosed : public Error {
public:
    using Error::Error;
};
class NotInY : public Error {
public:
    using Error::Error;
};
class InconsistentTyping : public Error {
public:
    using Error::Error;
};
class TypeAValence3Constructed : public Error {
public:
    using Error::Error;
};

// Relator E_i^{R1} e_j^{R1} E_l^{R2} e_k^{R2} for the piece P = x_i..x_{j-1} of R1 = y_k..y_{l-1} of R2.
// Relator numbers are 0-based positions in base.relators; letter indices are 1-based.
struct BsdProvenance {
    std::size_t r1 = 0, r2 = 0;
    std::size_t i = 0, j = 0, k = 0, l = 0;
    Word piece;
};

struct BsdPresentation {
    Presentation base;               // symmetrically closed, fixed relator numbering
    Presentation tilde;              // generators e[R<n>,<i>], one relator per cyclic/inverse class
    std::vector<BsdProvenance> provenance;  // parallel to tilde.relators
    std::vector<std::size_t> offset;        // first generator index of each base relator
    bool free_factor_caveat = false;        // some base generator is not a piece

    std::size_t generator_count() const { return tilde.alphabet.rank(); }
    Letter gen(std::size_t r, std::size_t i, bool inverse = false) const;
    // (relator number, 1-based index) of a letter of tilde
    std::pair<std::size_t, std::size_t> source(Letter x) const;
    Word relator_word(const BsdProvenance& p) const;
    // Relator numbering header, one "R<n>: <word>" line per base relator.
    std::string header() const;
};

// Throws NotSymmetricallyClosed unless p.relators is its own symmetric closure.
BsdPresentation bsd(const Presentation& p);

struct ShapeCheck {
    bool ok = true;
    std::size_t relator = 0;  // first offending relator
};
bool has_bsd_shape(const BsdPresentation& pt, const Word& t);
ShapeCheck check_shape(const BsdPresentation& pt);

// pair = E_i^R e_j^R with i != j; returns x_i .. x_{j-1} of R read cyclically.
Word psi(const BsdPresentation& pt, const Word& pair);
bool in_Y(const BsdPresentation& pt, Letter a, Letter b);

// Alphabet X followed by E; letters of X keep their codes, e-letters are shifted.
Alphabet gamma_alphabet(const BsdPresentation& pt);
Letter to_gamma(const BsdPresentation& pt, Letter e);
// <X u E | R>: the base relators over the gamma alphabet
Presentation gamma_presentation(const BsdPresentation& pt);
// Left-to-right rewrite of Y-pairs by psi; other letters are kept (over the gamma alphabet).
Word phi(const BsdPresentation& pt, const Word& w);

enum class VertexType { None, A, B };

// A = sink, B = source of the positive edge orientation.
std::vector<VertexType> classify_vertex_types(const Diagram& d);

struct MiddleSegment {
    int region = -1;
    int from = -1, to = -1;  // vertices i(mu), t(mu)
    std::vector<int> mu;     // the two darts of the side mu
    Word piece;
};
std::vector<MiddleSegment> middle_segments(const BsdPresentation& pt, const Diagram& d);

struct PieceBound {
    bool holds = true;
    bool shape_ok = true;
    std::size_t max_piece = 0;
    std::optional<Piece> witness;
};
PieceBound verify_piece_bound(const BsdPresentation& pt);

// Every length-3 prefix of a closure element of tilde determines the element.
bool three_letters_determine_relator(const BsdPresentation& pt);

struct TwoRegionReport {
    bool holds = true;
    std::array<std::size_t, 4> glued{};        // ordered (A, B) gluings by inner path length
    std::array<std::size_t, 4> not_minimal{};  // of those, area below two
    std::size_t type_a = 0, type_b = 0;        // middle-vertex types at length 2
    std::size_t type_a_minimal = 0, type_b_minimal = 0;
    std::size_t validated = 0;                 // sample rebuilt as diagrams
    std::vector<std::pair<Word, Word>> counterexamples;  // (A, B) glued along 2 letters, minimal
};
TwoRegionReport verify_two_region_lemma(const BsdPresentation& pt, std::size_t sample = 32,
                                        std::size_t keep = 8);

struct Valence3Report {
    bool holds = true;
    std::size_t configurations = 0;  // reduced, up to rotation about the vertex
    std::size_t non_reduced = 0;
    std::size_t type_a = 0, type_b = 0;
    std::size_t type_a_not_minimal = 0, type_b_not_minimal = 0;
    std::size_t validated = 0;       // sample checked against full diagrams and area search
    std::vector<std::array<Word, 3>> counterexamples;
    std::optional<Diagram> replacement_example;  // two-region diagram for a Type-B case
    std::optional<Diagram> configuration_example;
};
// Spokes of length one. Throws TypeAValence3Constructed if strict and a reduced Type-A
// configuration is built.
Valence3Report verify_no_inner_valence3(const BsdPresentation& pt, bool strict = false,
                                        std::size_t sample = 64, std::size_t keep = 8);

// Area at most two for a word of length six, via a two-region single-edge gluing.
std::optional<std::pair<Word, Word>> domino_realization(const RelatorIndex& closure, const Word& w);

}  // namespace c4t4
