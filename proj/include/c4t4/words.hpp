#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace c4t4 {

// A letter packs a generator index and a sign: code = 2*gen + (inverse ? 1 : 0).
// Code order is the canonical letter order a < A < b < B < ...
using Letter = char16_t;
using Word = std::u16string;

constexpr Letter make_letter(int gen, bool inverse = false) {
    return static_cast<Letter>(gen * 2 + (inverse ? 1 : 0));
}
constexpr int gen_of(Letter l) { return l >> 1; }
constexpr bool is_inverse(Letter l) { return (l & 1) != 0; }
constexpr Letter inv(Letter l) { return static_cast<Letter>(l ^ 1); }

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotCyclicallyReduced : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

Word inverse(const Word& w);
Word free_reduce(const Word& w);
bool is_freely_reduced(const Word& w);
bool is_cyclically_reduced(const Word& w);
Word cyclic_reduce(const Word& w);
Word prefix(const Word& w, std::size_t n);
Word rotate(const Word& w, std::size_t k);

// All distinct rotations, sorted in code order.
std::vector<Word> cyclic_conjugates(const Word& w);

// Least rotation in code order (Booth-free quadratic scan; relators are short).
Word least_rotation(const Word& w);

// Least rotation of w or of its inverse.
Word cyclic_normal_form(const Word& w);

bool shortlex_less(const Word& a, const Word& b);

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    std::size_t rank() const { return names_.size(); }
    std::size_t letter_count() const { return 2 * names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<int> find(const std::string& name) const;

    // Inverse letters are written with the first character upper-cased.
    std::string name(Letter l) const;
    std::string format(const Word& w) const;
    Word parse(std::string_view text) const;

    bool operator==(const Alphabet& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Letter> lookup_;
    std::size_t max_token_ = 0;
};

struct Presentation {
    Alphabet alphabet;
    std::vector<Word> relators;

    std::size_t max_relator_length() const;
    std::string format(const Word& w) const { return alphabet.format(w); }
    Word word(std::string_view text) const { return alphabet.parse(text); }
};

// Throws NotCyclicallyReduced (or Error for empty relators).
void validate_relators(const Presentation& p);

Presentation make_presentation(const std::vector<std::string>& gens,
                               const std::vector<std::string>& relators);
Presentation parse_presentation(std::string_view text);
std::string to_text(const Presentation& p);

// Sorts words shortlex on their display strings.
void sort_display(const Alphabet& a, std::vector<Word>& words);

Presentation symmetric_closure(const Presentation& p);
bool is_symmetrically_closed(const Presentation& p);

// Symmetric closure with membership and prefix lookup.
class RelatorIndex {
public:
    RelatorIndex() = default;
    explicit RelatorIndex(const Presentation& p);

    const std::vector<Word>& relators() const { return sorted_; }
    std::size_t size() const { return sorted_.size(); }
    std::size_t max_length() const { return max_len_; }
    bool contains(const Word& w) const { return members_.count(w) != 0; }

    // Closure elements that start with p, as a contiguous range of relators().
    std::pair<std::size_t, std::size_t> prefix_range(const Word& p) const;
    std::size_t count_prefix(const Word& p) const {
        auto [lo, hi] = prefix_range(p);
        return hi - lo;
    }

private:
    std::vector<Word> sorted_;
    std::unordered_set<Word> members_;
    std::size_t max_len_ = 0;
};

struct Piece {
    Word word;
    Word witness1;
    Word witness2;
};

std::vector<Piece> pieces(const Presentation& p);
std::vector<Piece> pieces(const RelatorIndex& closure);

struct C4Result {
    bool holds = true;
    Word relator;
    std::vector<Word> decomposition;
};

struct T4Result {
    bool holds = true;
    std::array<Word, 3> triple;
};

C4Result check_C4(const Presentation& p);
T4Result check_T4(const Presentation& p);
bool check_H1(const Presentation& p);

struct GeneratorPieceResult {
    bool holds = true;
    std::vector<int> offenders;
};

GeneratorPieceResult every_generator_is_piece(const Presentation& p);

}  // namespace c4t4
