#include "c4t4/words.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace c4t4 {

Word inverse(const Word& w) {
    Word r(w.rbegin(), w.rend());
    for (auto& l : r) l = inv(l);
    return r;
}

Word free_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (Letter l : w) {
        if (!out.empty() && out.back() == inv(l))
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

bool is_freely_reduced(const Word& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == inv(w[i - 1])) return false;
    return true;
}

bool is_cyclically_reduced(const Word& w) {
    if (!is_freely_reduced(w)) return false;
    return w.size() < 2 || w.front() != inv(w.back());
}

Word cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    std::size_t i = 0, j = r.size();
    while (j - i >= 2 && r[i] == inv(r[j - 1])) {
        ++i;
        --j;
    }
    return r.substr(i, j - i);
}

Word prefix(const Word& w, std::size_t n) { return w.substr(0, std::min(n, w.size())); }

Word rotate(const Word& w, std::size_t k) {
    if (w.empty()) return w;
    k %= w.size();
    return w.substr(k) + w.substr(0, k);
}

std::vector<Word> cyclic_conjugates(const Word& w) {
    if (!is_cyclically_reduced(w)) throw NotCyclicallyReduced("word is not cyclically reduced");
    std::vector<Word> out;
    for (std::size_t k = 0; k < std::max<std::size_t>(w.size(), 1); ++k) out.push_back(rotate(w, k));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Word least_rotation(const Word& w) {
    Word best = w;
    for (std::size_t k = 1; k < w.size(); ++k) {
        Word r = rotate(w, k);
        if (r < best) best = std::move(r);
    }
    return best;
}

Word cyclic_normal_form(const Word& w) {
    Word a = least_rotation(w);
    Word b = least_rotation(inverse(w));
    return std::min(a, b);
}

bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t g = 0; g < names_.size(); ++g) {
        const std::string& n = names_[g];
        if (n.empty() || !std::islower(static_cast<unsigned char>(n[0])))
            throw Error("generator name must start with a lowercase letter: '" + n + "'");
        for (Letter l : {make_letter(int(g)), make_letter(int(g), true)}) {
            std::string s = name(l);
            if (!lookup_.emplace(s, l).second) throw Error("duplicate generator name '" + s + "'");
            max_token_ = std::max(max_token_, s.size());
        }
    }
}

std::optional<int> Alphabet::find(const std::string& name) const {
    auto it = lookup_.find(name);
    if (it == lookup_.end() || is_inverse(it->second)) return std::nullopt;
    return gen_of(it->second);
}

std::string Alphabet::name(Letter l) const {
    std::string s = names_.at(gen_of(l));
    if (is_inverse(l)) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

std::string Alphabet::format(const Word& w) const {
    std::string s;
    for (Letter l : w) s += name(l);
    return s;
}

Word Alphabet::parse(std::string_view text) const {
    Word w;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        bool matched = false;
        for (std::size_t len = std::min(max_token_, text.size() - i); len > 0; --len) {
            auto it = lookup_.find(std::string(text.substr(i, len)));
            if (it != lookup_.end()) {
                w.push_back(it->second);
                i += len;
                matched = true;
                break;
            }
        }
        if (!matched) throw ParseError("unknown letter at '" + std::string(text.substr(i)) + "'", 0);
    }
    return w;
}

std::size_t Presentation::max_relator_length() const {
    std::size_t m = 0;
    for (const auto& r : relators) m = std::max(m, r.size());
    return m;
}

void validate_relators(const Presentation& p) {
    for (const auto& r : p.relators) {
        if (r.empty()) throw Error("empty relator");
        for (Letter l : r)
            if (std::size_t(gen_of(l)) >= p.alphabet.rank()) throw Error("relator uses an undeclared generator");
        if (!is_cyclically_reduced(r))
            throw NotCyclicallyReduced("relator " + p.format(r) + " is not cyclically reduced");
    }
}

Presentation make_presentation(const std::vector<std::string>& gens, const std::vector<std::string>& relators) {
    Presentation p{Alphabet(gens), {}};
    for (const auto& r : relators) p.relators.push_back(p.alphabet.parse(r));
    validate_relators(p);
    return p;
}

Presentation parse_presentation(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    std::optional<Alphabet> alphabet;
    std::vector<std::pair<int, Word>> rels;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::string body = line.substr(first);
        while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.pop_back();
        if (!alphabet) {
            if (body.rfind("gens:", 0) != 0) throw ParseError("expected 'gens:' header", lineno);
            std::istringstream gs(body.substr(5));
            std::vector<std::string> names;
            for (std::string g; gs >> g;) names.push_back(g);
            try {
                alphabet = Alphabet(names);
            } catch (const Error& e) {
                throw ParseError(e.what(), lineno);
            }
            continue;
        }
        try {
            rels.emplace_back(lineno, alphabet->parse(body));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    if (!alphabet) throw ParseError("missing 'gens:' header", lineno);
    Presentation p{*alphabet, {}};
    for (auto& [ln, w] : rels) {
        if (w.empty()) throw ParseError("empty relator", ln);
        if (!is_cyclically_reduced(w))
            throw NotCyclicallyReduced("line " + std::to_string(ln) + ": relator " + p.format(w) +
                                       " is not cyclically reduced");
        p.relators.push_back(std::move(w));
    }
    return p;
}

std::string to_text(const Presentation& p) {
    std::string s = "gens:";
    for (const auto& n : p.alphabet.names()) s += " " + n;
    s += "\n";
    for (const auto& r : p.relators) s += p.format(r) + "\n";
    return s;
}

void sort_display(const Alphabet& a, std::vector<Word>& words) {
    std::vector<std::pair<std::string, Word>> keyed;
    keyed.reserve(words.size());
    for (auto& w : words) keyed.emplace_back(a.format(w), std::move(w));
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
        if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
    });
    words.clear();
    for (auto& [k, w] : keyed) words.push_back(std::move(w));
}

namespace {

std::vector<Word> closure_words(const Presentation& p) {
    validate_relators(p);
    std::vector<Word> out;
    for (const auto& r : p.relators) {
        for (const auto& base : {r, inverse(r)})
            for (std::size_t k = 0; k < base.size(); ++k) out.push_back(rotate(base, k));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

Presentation symmetric_closure(const Presentation& p) {
    Presentation q{p.alphabet, closure_words(p)};
    sort_display(q.alphabet, q.relators);
    return q;
}

bool is_symmetrically_closed(const Presentation& p) {
    std::vector<Word> mine = p.relators;
    std::sort(mine.begin(), mine.end());
    mine.erase(std::unique(mine.begin(), mine.end()), mine.end());
    return mine == closure_words(p);
}

RelatorIndex::RelatorIndex(const Presentation& p) : sorted_(closure_words(p)) {
    members_.reserve(sorted_.size() * 2);
    for (const auto& r : sorted_) {
        members_.insert(r);
        max_len_ = std::max(max_len_, r.size());
    }
}

std::pair<std::size_t, std::size_t> RelatorIndex::prefix_range(const Word& p) const {
    auto lo = std::lower_bound(sorted_.begin(), sorted_.end(), p);
    auto hi = std::upper_bound(lo, sorted_.end(), p, [](const Word& key, const Word& r) {
        return r.compare(0, key.size(), key) > 0;
    });
    return {std::size_t(lo - sorted_.begin()), std::size_t(hi - sorted_.begin())};
}

std::vector<Piece> pieces(const RelatorIndex& closure) {
    // Every common prefix of two sorted words is a prefix of some adjacent common prefix.
    std::map<Word, Piece> found;
    const auto& rs = closure.relators();
    for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
        const Word& a = rs[i];
        const Word& b = rs[i + 1];
        std::size_t n = 0;
        while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
        for (std::size_t len = 1; len <= n; ++len) {
            Word w = a.substr(0, len);
            found.try_emplace(w, Piece{w, a, b});
        }
    }
    std::vector<Piece> out;
    for (auto& [w, pc] : found) out.push_back(std::move(pc));
    std::sort(out.begin(), out.end(),
              [](const Piece& x, const Piece& y) { return shortlex_less(x.word, y.word); });
    return out;
}

std::vector<Piece> pieces(const Presentation& p) {
    auto out = pieces(RelatorIndex(p));
    std::vector<Word> order;
    for (const auto& pc : out) order.push_back(pc.word);
    sort_display(p.alphabet, order);
    std::map<Word, Piece> by_word;
    for (auto& pc : out) by_word.emplace(pc.word, std::move(pc));
    std::vector<Piece> sorted;
    for (const auto& w : order) sorted.push_back(std::move(by_word[w]));
    return sorted;
}

C4Result check_C4(const Presentation& p) {
    RelatorIndex closure(p);
    std::unordered_set<Word> piece_set;
    for (const auto& pc : pieces(closure)) piece_set.insert(pc.word);
    C4Result res;
    for (const auto& r : closure.relators()) {
        // best[i]: fewest pieces covering r[0..i); from[i]: start of the last piece.
        std::vector<int> best(r.size() + 1, 1 << 20), from(r.size() + 1, -1);
        best[0] = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (best[i] >= 3) continue;
            for (std::size_t j = i + 1; j <= r.size(); ++j) {
                if (piece_set.count(r.substr(i, j - i)) && best[i] + 1 < best[j]) {
                    best[j] = best[i] + 1;
                    from[j] = int(i);
                }
            }
        }
        if (best[r.size()] <= 3) {
            res.holds = false;
            res.relator = r;
            for (std::size_t j = r.size(); j > 0; j = std::size_t(from[j]))
                res.decomposition.insert(res.decomposition.begin(), r.substr(std::size_t(from[j]), j - std::size_t(from[j])));
            return res;
        }
    }
    return res;
}

T4Result check_T4(const Presentation& p) {
    // R1R2, R2R3, R3R1 all cancel exactly when last(Ri) = first(Ri+1)^-1 around the
    // triangle, so only the (first, last) letter pairs matter.
    RelatorIndex closure(p);
    std::map<std::pair<Letter, Letter>, Word> by_ends;
    for (const auto& r : closure.relators()) by_ends.try_emplace({r.front(), r.back()}, r);
    T4Result res;
    for (const auto& [e1, r1] : by_ends) {
        for (const auto& [e2, r2] : by_ends) {
            if (e2.first != inv(e1.second)) continue;
            for (const auto& [e3, r3] : by_ends) {
                if (e3.first == inv(e2.second) && e1.first == inv(e3.second)) {
                    res.holds = false;
                    res.triple = {r1, r2, r3};
                    return res;
                }
            }
        }
    }
    return res;
}

bool check_H1(const Presentation& p) {
    for (const auto& r : p.relators)
        if (r.size() != 4 || !is_cyclically_reduced(r)) return false;
    return true;
}

GeneratorPieceResult every_generator_is_piece(const Presentation& p) {
    RelatorIndex closure(p);
    GeneratorPieceResult res;
    for (std::size_t g = 0; g < p.alphabet.rank(); ++g) {
        bool ok = true;
        for (Letter l : {make_letter(int(g)), make_letter(int(g), true)})
            if (closure.count_prefix(Word(1, l)) < 2) ok = false;
        if (!ok) {
            res.holds = false;
            res.offenders.push_back(int(g));
        }
    }
    return res;
}

}  // namespace c4t4
