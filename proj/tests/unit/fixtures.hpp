#pragma once

#include "c4t4/words.hpp"

#include <functional>

namespace fx {

inline c4t4::Presentation running() { return c4t4::make_presentation({"a", "b"}, {"ababaBABAB"}); }
inline c4t4::Presentation z2() { return c4t4::make_presentation({"a", "b"}, {"abAB"}); }
inline c4t4::Presentation free2() { return c4t4::make_presentation({"a", "b"}, {}); }
inline c4t4::Presentation abab() { return c4t4::make_presentation({"a", "b"}, {"abab"}); }
inline c4t4::Presentation aa() { return c4t4::make_presentation({"a"}, {"aa"}); }
inline c4t4::Presentation aaaa() { return c4t4::make_presentation({"a"}, {"aaaa"}); }

// Label pqrstv has two fillings, so some dominoes are unstable.
inline c4t4::Presentation two_fillings() {
    return c4t4::make_presentation({"p", "q", "r", "s", "t", "v", "z", "u"}, {"zpqr", "Zstv", "uqrs", "Utvp"});
}
// Extra regions cover the edges after mu of the 1-typed readings.
inline c4t4::Presentation two_fillings_covered() {
    return c4t4::make_presentation({"p", "q", "r", "s", "t", "v", "z", "u", "w", "x", "y"},
                                   {"zpqr", "Zstv", "uqrs", "Utvp", "Vwxy", "Qwxy"});
}
// Right-angled Artin group of the path a - b - c.
inline c4t4::Presentation path3() { return c4t4::make_presentation({"a", "b", "c"}, {"abAB", "bcBC"}); }

inline c4t4::Word w(const c4t4::Presentation& p, const char* s) { return p.alphabet.parse(s); }
inline std::string s(const c4t4::Presentation& p, const c4t4::Word& x) { return p.format(x); }

// All words over `letters` letters of length exactly n.
inline void for_each_word(std::size_t letters, std::size_t n, const std::function<void(const c4t4::Word&)>& fn) {
    c4t4::Word cur(n, 0);
    for (;;) {
        fn(cur);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++cur[i] < letters) break;
            cur[i] = 0;
            if (i == 0) return;
        }
        if (n == 0) return;
    }
}

}  // namespace fx
