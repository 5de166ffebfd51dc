#include "c4t4/oracle.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

namespace c4t4 {

Step Step::reversed() const {
    Kind k = kind;
    if (kind == Kind::FreeDelete) k = Kind::FreeInsert;
    else if (kind == Kind::FreeInsert) k = Kind::FreeDelete;
    return Step{k, pos, to, from};
}

const char* kind_name(Step::Kind k) {
    switch (k) {
        case Step::Kind::FreeDelete: return "free_delete";
        case Step::Kind::FreeInsert: return "free_insert";
        case Step::Kind::Substitute: return "substitute";
    }
    return "?";
}

std::size_t Certificate::area() const {
    return std::size_t(std::count_if(steps.begin(), steps.end(),
                                     [](const Step& s) { return s.kind == Step::Kind::Substitute; }));
}

Certificate Certificate::reversed() const {
    Certificate c;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) c.steps.push_back(it->reversed());
    return c;
}

void Certificate::append(const Certificate& other) {
    steps.insert(steps.end(), other.steps.begin(), other.steps.end());
}

namespace {

bool is_cancelling_pair(const Word& w) { return w.size() == 2 && w[1] == inv(w[0]); }

bool legal(const RelatorIndex& closure, const Step& s) {
    switch (s.kind) {
        case Step::Kind::FreeDelete: return is_cancelling_pair(s.from) && s.to.empty();
        case Step::Kind::FreeInsert: return s.from.empty() && is_cancelling_pair(s.to);
        case Step::Kind::Substitute: return closure.contains(s.from + inverse(s.to));
    }
    return false;
}

// Calls fn(step, result) for every move from s whose result has length <= max_len.
template <class F>
void for_each_move(const RelatorIndex& closure, std::size_t rank, const Word& s, std::size_t max_len, F&& fn) {
    const auto& rels = closure.relators();
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i + 1] == inv(s[i])) {
            Word t = s.substr(0, i) + s.substr(i + 2);
            fn(Step{Step::Kind::FreeDelete, i, s.substr(i, 2), Word{}}, t);
        }
    }
    if (s.size() + 2 <= max_len) {
        for (std::size_t i = 0; i <= s.size(); ++i) {
            for (std::size_t g = 0; g < 2 * rank; ++g) {
                Word pair{Letter(g), inv(Letter(g))};
                fn(Step{Step::Kind::FreeInsert, i, Word{}, pair}, s.substr(0, i) + pair + s.substr(i));
            }
        }
    }
    for (std::size_t i = 0; i <= s.size(); ++i) {
        for (std::size_t l = 0; l <= closure.max_length() && i + l <= s.size(); ++l) {
            Word u = s.substr(i, l);
            auto [lo, hi] = closure.prefix_range(u);
            for (std::size_t r = lo; r < hi; ++r) {
                const Word& rel = rels[r];
                if (s.size() - l + (rel.size() - l) > max_len) continue;
                Word v = inverse(rel.substr(l));
                Word t = s.substr(0, i) + v + s.substr(i + l);
                fn(Step{Step::Kind::Substitute, i, u, v}, t);
            }
        }
    }
}

}  // namespace

std::optional<Word> replay(const RelatorIndex& closure, const Word& start, const Certificate& cert, std::string* why) {
    Word cur = start;
    for (std::size_t k = 0; k < cert.steps.size(); ++k) {
        const Step& s = cert.steps[k];
        if (s.pos + s.from.size() > cur.size() || cur.compare(s.pos, s.from.size(), s.from) != 0) {
            if (why) *why = "step " + std::to_string(k) + ": factor not present";
            return std::nullopt;
        }
        if (!legal(closure, s)) {
            if (why) *why = "step " + std::to_string(k) + ": illegal " + kind_name(s.kind);
            return std::nullopt;
        }
        cur = cur.substr(0, s.pos) + s.to + cur.substr(s.pos + s.from.size());
    }
    return cur;
}

Certificate free_reduction_steps(const Word& w) {
    Certificate c;
    Word cur = w;
    for (;;) {
        std::size_t i = 0;
        while (i + 1 < cur.size() && cur[i + 1] != inv(cur[i])) ++i;
        if (i + 1 >= cur.size()) break;
        c.steps.push_back(Step{Step::Kind::FreeDelete, i, cur.substr(i, 2), Word{}});
        cur.erase(i, 2);
    }
    return c;
}

EqualityVerdict equal_in_group(const RelatorIndex& closure, std::size_t rank, const Word& w, const Word& u,
                               Budget budget) {
    const std::size_t longest = std::max(w.size(), u.size());
    if (budget.max_len != 0 && budget.max_len < longest)
        throw BudgetInvalid("max_len is shorter than the input words");
    const std::size_t max_len = budget.max_len ? budget.max_len : longest + 2 * closure.max_length();
    const std::size_t max_steps =
        budget.max_steps ? budget.max_steps : (w.size() + u.size() + 1) * (w.size() + u.size() + 1);

    EqualityVerdict verdict;
    if (w == u) {
        verdict.status = EqualityVerdict::Status::Equal;
        return verdict;
    }

    struct Parent {
        Word prev;
        Step step;
    };
    std::unordered_map<Word, std::optional<Parent>> seen[2];
    std::vector<Word> frontier[2] = {{w}, {u}};
    seen[0].emplace(w, std::nullopt);
    seen[1].emplace(u, std::nullopt);
    std::size_t depth[2] = {0, 0};

    auto path_to_root = [&](int side, Word node) {
        Certificate c;  // root -> node
        while (auto& par = seen[side].at(node)) {
            c.steps.push_back(par->step);
            node = par->prev;
        }
        std::reverse(c.steps.begin(), c.steps.end());
        return c;
    };

    std::size_t nodes = 2;
    while (depth[0] + depth[1] < max_steps && !frontier[0].empty() && !frontier[1].empty()) {
        int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
        std::sort(frontier[side].begin(), frontier[side].end(), shortlex_less);
        std::vector<Word> next;
        std::optional<Word> meet;
        for (const Word& s : frontier[side]) {
            ++verdict.budget_spent;
            for_each_move(closure, rank, s, max_len, [&](const Step& st, const Word& t) {
                if (meet || seen[side].count(t)) return;
                seen[side].emplace(t, Parent{s, st});
                ++nodes;
                if (seen[1 - side].count(t)) meet = t;
                next.push_back(t);
            });
            if (meet || nodes > budget.max_nodes) break;
        }
        ++depth[side];
        if (meet) {
            Certificate c = path_to_root(0, *meet);
            c.append(path_to_root(1, *meet).reversed());
            verdict.status = EqualityVerdict::Status::Equal;
            verdict.certificate = std::move(c);
            return verdict;
        }
        if (nodes > budget.max_nodes) break;
        frontier[side] = std::move(next);
    }
    return verdict;
}

EqualityVerdict equal_in_group(const Presentation& p, const Word& w, const Word& u, Budget budget) {
    return equal_in_group(RelatorIndex(p), p.alphabet.rank(), w, u, budget);
}

std::uint32_t MetricBall::id_of(const Word& w) const {
    auto it = ids_.find(free_reduce(w));
    if (it == ids_.end()) throw WordExceedsBall("word reduces outside the ball universe");
    return it->second;
}

bool MetricBall::in_universe(const Word& w) const { return ids_.count(free_reduce(w)) != 0; }

std::size_t MetricBall::class_of(const Word& w) const { return cls_[id_of(w)]; }

const std::vector<Word>& MetricBall::members(std::size_t cls) const {
    static const std::vector<Word> none;
    auto it = members_.find(cls);
    return it == members_.end() ? none : it->second;
}

const Word& MetricBall::shortest(std::size_t cls) const {
    const auto& m = members(cls);
    if (m.empty()) throw WordExceedsBall("class has no member within the radius");
    return m.front();
}

std::size_t MetricBall::distance(std::size_t c1, std::size_t c2) const {
    if (c1 == c2) return 0;
    auto it = dist_cache_.find(c1);
    if (it == dist_cache_.end()) {
        std::vector<std::uint32_t> d(dense_classes_, std::numeric_limits<std::uint32_t>::max());
        std::deque<std::size_t> q{c1};
        d[c1] = 0;
        while (!q.empty()) {
            std::size_t c = q.front();
            q.pop_front();
            for (auto n : quotient_[c])
                if (d[n] == std::numeric_limits<std::uint32_t>::max()) {
                    d[n] = d[c] + 1;
                    q.push_back(n);
                }
        }
        it = dist_cache_.emplace(c1, std::move(d)).first;
    }
    return it->second[c2];
}

Certificate MetricBall::certificate(const Word& a, const Word& b) const {
    std::uint32_t ia = id_of(a), ib = id_of(b);
    if (cls_[ia] != cls_[ib]) throw NotEqual("words lie in different classes");
    // Breadth-first search in the spanning forest.
    std::unordered_map<std::uint32_t, std::pair<std::uint32_t, const ForestEdge*>> par;
    std::deque<std::uint32_t> q{ia};
    par.emplace(ia, std::make_pair(ia, nullptr));
    while (!q.empty() && !par.count(ib)) {
        auto x = q.front();
        q.pop_front();
        for (const auto& e : forest_[x])
            if (!par.count(e.other)) {
                par.emplace(e.other, std::make_pair(x, &e));
                q.push_back(e.other);
            }
    }
    std::vector<Certificate> hops;
    for (std::uint32_t x = ib; x != ia;) {
        auto [prev, e] = par.at(x);
        const Merge& m = merges_[e->merge];
        Certificate hop;
        hop.steps.push_back(m.step);
        hop.append(free_reduction_steps(m.via));
        hops.push_back(e->forward ? std::move(hop) : hop.reversed());
        x = prev;
    }
    Certificate c = free_reduction_steps(a);
    for (auto it = hops.rbegin(); it != hops.rend(); ++it) c.append(*it);
    c.append(free_reduction_steps(b).reversed());
    return c;
}

MetricBall build_ball(const Presentation& p, std::size_t radius, BallBudget budget) {
    MetricBall ball;
    ball.closure_ = std::make_shared<RelatorIndex>(p);
    const RelatorIndex& closure = *ball.closure_;
    ball.radius_ = radius;
    ball.rank_ = p.alphabet.rank();
    ball.cap_ = budget.cap ? std::max(budget.cap, radius) : radius + closure.max_length();
    const std::size_t cap = ball.cap_;
    const std::size_t letters = 2 * ball.rank_;

    // Universe: freely reduced words by length, lexicographic within a length.
    ball.words_.push_back(Word{});
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len <= cap; ++len) {
        std::size_t level_end = ball.words_.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (std::size_t g = 0; g < letters; ++g) {
                const Word& s = ball.words_[i];
                if (!s.empty() && Letter(g) == inv(s.back())) continue;
                if (ball.words_.size() >= budget.max_words) throw BallBudgetExceeded("ball universe exceeds max_words");
                Word t = s;
                t.push_back(Letter(g));
                ball.words_.push_back(std::move(t));
            }
        }
        level_begin = level_end;
    }
    const std::size_t n = ball.words_.size();
    ball.ids_.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) ball.ids_.emplace(ball.words_[i], std::uint32_t(i));

    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    ball.forest_.assign(n, {});
    std::size_t in_radius = 0;
    while (in_radius < n && ball.words_[in_radius].size() <= radius) ++in_radius;
    auto labelling = [&]() {
        std::vector<std::uint32_t> lab(in_radius);
        std::unordered_map<std::uint32_t, std::uint32_t> first;
        for (std::size_t i = 0; i < in_radius; ++i)
            lab[i] = first.emplace(find(std::uint32_t(i)), std::uint32_t(first.size())).first->second;
        return lab;
    };
    // Pass 0 merges through moves staying below the cap, pass 1 through moves touching it;
    // the ball is saturated when pass 1 changes nothing inside the radius.
    std::vector<std::uint32_t> before;
    for (int pass = 0; pass < 2; ++pass) {
        if (pass == 1) before = labelling();
        for (std::size_t i = 0; i < n; ++i) {
            const Word& s = ball.words_[i];
            for_each_move(closure, ball.rank_, s, cap, [&](const Step& st, const Word& t) {
                if (st.kind != Step::Kind::Substitute) return;
                bool top = std::max(s.size(), t.size()) == cap;
                if (top != (pass == 1)) return;
                auto j = ball.ids_.at(free_reduce(t));
                auto ra = find(std::uint32_t(i)), rb = find(j);
                if (ra == rb) return;
                parent[ra] = rb;
                auto m = std::uint32_t(ball.merges_.size());
                ball.merges_.push_back(MetricBall::Merge{std::uint32_t(i), j, st, t});
                ball.forest_[i].push_back(MetricBall::ForestEdge{j, m, true});
                ball.forest_[j].push_back(MetricBall::ForestEdge{std::uint32_t(i), m, false});
            });
        }
    }
    ball.saturated_ = before == labelling();

    std::unordered_map<std::uint32_t, std::uint32_t> dense;
    ball.cls_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        ball.cls_[i] = dense.emplace(find(std::uint32_t(i)), std::uint32_t(dense.size())).first->second;
    ball.dense_classes_ = dense.size();
    for (std::size_t i = 0; i < in_radius; ++i) ball.members_[ball.cls_[i]].push_back(ball.words_[i]);
    for (auto& [c, m] : ball.members_) ball.ball_classes_.push_back(c);

    ball.quotient_.assign(ball.dense_classes_, {});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t g = 0; g < letters; ++g) {
            Word t = free_reduce(ball.words_[i] + Word(1, Letter(g)));
            auto it = ball.ids_.find(t);
            if (it == ball.ids_.end()) continue;
            auto a = ball.cls_[i], b = ball.cls_[it->second];
            if (a != b) ball.quotient_[a].push_back(b);
        }
    }
    for (auto& adj : ball.quotient_) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
    return ball;
}

GeodesicVerdict is_geodesic(const MetricBall& ball, const Word& w) {
    if (w.size() > ball.radius()) throw WordExceedsBall("word longer than the ball radius");
    GeodesicVerdict v;
    const Word& best = ball.shortest(ball.class_of(w));
    if (best.size() < w.size()) {
        v.geodesic = false;
        v.shorter = best;
        v.certificate = ball.certificate(w, best);
    }
    return v;
}

std::size_t fellow_travel_constant(const MetricBall& ball, const Word& w, const Word& u) {
    std::size_t k = 0;
    for (std::size_t l = 0; l <= std::max(w.size(), u.size()); ++l)
        k = std::max(k, ball.distance(prefix(w, l), prefix(u, l)));
    return k;
}

HausdorffReport check_hausdorff_fellow_travel(const MetricBall& ball, const Word& xw, const Word& uy,
                                              std::size_t s) {
    if (!ball.same_class(xw, uy)) throw NotEqual("the two words are not equal in the ball");
    if (!is_geodesic(ball, xw).geodesic || !is_geodesic(ball, uy).geodesic)
        throw NotGeodesic("Hausdorff check needs geodesic words");
    HausdorffReport rep;
    auto close = [&](const Word& a, const Word& b) {
        for (std::size_t i = 0; i <= a.size(); ++i) {
            bool ok = false;
            for (std::size_t j = 0; j <= b.size() && !ok; ++j) ok = ball.distance(prefix(a, i), prefix(b, j)) <= s;
            if (!ok) return false;
        }
        return true;
    };
    if (!close(xw, uy) || !close(uy, xw)) {
        rep.status = HausdorffReport::Status::PreconditionUnmet;
        rep.reason = "prefixes are not within distance " + std::to_string(s);
        return rep;
    }
    rep.measured = fellow_travel_constant(ball, xw, uy);
    rep.status = rep.measured <= 2 * s + 1 ? HausdorffReport::Status::Holds : HausdorffReport::Status::Violated;
    return rep;
}

}  // namespace c4t4
