#include "c4t4/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace c4t4 {

std::vector<int> Topology::regions() const {
    std::vector<int> out;
    for (int f = 0; f < int(faces.size()); ++f)
        if (f != outer_face) out.push_back(f);
    return out;
}

Topology topology(const Diagram& d) {
    Topology t;
    const int n = int(d.dart_count());
    t.face.assign(std::size_t(n), -1);
    t.origin.assign(std::size_t(n), -1);
    t.prev.assign(std::size_t(n), -1);
    for (int x = 0; x < n; ++x) t.prev[std::size_t(d.next[std::size_t(x)])] = x;
    for (int x = 0; x < n; ++x) {
        if (t.face[std::size_t(x)] >= 0) continue;
        int id = int(t.faces.size());
        t.faces.emplace_back();
        for (int y = x; t.face[std::size_t(y)] < 0; y = d.next[std::size_t(y)]) {
            t.face[std::size_t(y)] = id;
            t.faces.back().push_back(y);
        }
    }
    t.outer_face = d.outer >= 0 ? t.face[std::size_t(d.outer)] : -1;
    int vid = 0;
    for (int x = 0; x < n; ++x) {
        if (t.origin[std::size_t(x)] >= 0) continue;
        for (int y = x; t.origin[std::size_t(y)] < 0; y = d.next[std::size_t(y ^ 1)]) t.origin[std::size_t(y)] = vid;
        ++vid;
    }
    t.vertex_count = n == 0 ? 1 : vid;
    return t;
}

std::size_t region_count(const Diagram& d) {
    if (d.dart_count() == 0) return 0;
    return topology(d).faces.size() - 1;
}

static Word face_label(const Diagram& d, const std::vector<int>& cycle) {
    Word w;
    for (int x : cycle) w.push_back(d.label[std::size_t(x)]);
    return w;
}

std::vector<Word> region_labels(const Diagram& d) {
    Topology t = topology(d);
    std::vector<Word> out;
    for (int f : t.regions()) out.push_back(face_label(d, t.faces[std::size_t(f)]));
    return out;
}

int default_basepoint(const Diagram& d) { return d.outer < 0 ? -1 : d.outer ^ 1; }

BoundaryPath boundary_cycle(const Diagram& d, int basepoint) {
    BoundaryPath out;
    if (d.dart_count() == 0) {
        if (basepoint >= 0) throw NotBoundaryDart("empty diagram has no boundary darts");
        return out;
    }
    Topology t = topology(d);
    if (basepoint < 0 || basepoint >= int(d.dart_count()) || !t.is_outer(basepoint ^ 1))
        throw NotBoundaryDart("dart " + std::to_string(basepoint) + " is not on the outer boundary");
    int c = basepoint;
    do {
        out.darts.push_back(c);
        out.label.push_back(d.label[std::size_t(c)]);
        c = t.prev[std::size_t(c ^ 1)] ^ 1;
    } while (c != basepoint);
    return out;
}

BoundaryPath boundary_cycle(const Diagram& d) { return boundary_cycle(d, default_basepoint(d)); }

Word boundary_label(const Diagram& d) { return boundary_cycle(d).label; }

BoundaryPath boundary_segment(const Diagram& d, std::size_t start, std::size_t len, int basepoint) {
    BoundaryPath cyc = boundary_cycle(d, basepoint < 0 ? default_basepoint(d) : basepoint);
    BoundaryPath out;
    const std::size_t L = cyc.darts.size();
    if (len > L) throw Error("boundary segment longer than the boundary");
    for (std::size_t i = 0; i < len; ++i) {
        int x = cyc.darts[(start + i) % L];
        out.darts.push_back(x);
        out.label.push_back(d.label[std::size_t(x)]);
    }
    return out;
}

BoundaryPath reversed(const BoundaryPath& p) {
    BoundaryPath out;
    for (auto it = p.darts.rbegin(); it != p.darts.rend(); ++it) out.darts.push_back(*it ^ 1);
    out.label = inverse(p.label);
    return out;
}

Validation validate(const Diagram& d, const RelatorIndex& closure) {
    Validation v;
    auto defect = [&](std::string s) {
        v.ok = false;
        v.defects.push_back({std::move(s)});
    };
    const std::size_t n = d.dart_count();
    if (n % 2 != 0) defect("odd number of darts");
    if (d.label.size() != n) defect("label array size differs from dart count");
    if (!v.ok) return v;
    if (n == 0) {
        if (d.outer != -1) defect("empty diagram with an outer dart");
        return v;
    }
    std::vector<int> seen(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        int y = d.next[x];
        if (y < 0 || std::size_t(y) >= n) {
            defect("next out of range at dart " + std::to_string(x));
            return v;
        }
        if (seen[std::size_t(y)]++) {
            defect("next is not a permutation");
            return v;
        }
    }
    if (d.outer < 0 || std::size_t(d.outer) >= n) {
        defect("outer dart out of range");
        return v;
    }
    for (std::size_t x = 0; x < n; x += 2)
        if (d.label[x + 1] != inv(d.label[x])) defect("label of inverse dart is not inverse at edge " + std::to_string(x / 2));

    std::vector<int> comp(n, -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    std::size_t reached = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : {d.next[std::size_t(x)], x ^ 1})
            if (comp[std::size_t(y)] < 0) {
                comp[std::size_t(y)] = 0;
                ++reached;
                stack.push_back(y);
            }
    }
    if (reached != n) defect("not connected");

    Topology t = topology(d);
    long euler = long(t.vertex_count) - long(d.edge_count()) + long(t.faces.size());
    if (euler != 2) defect("Euler characteristic " + std::to_string(euler) + " (not a disk)");
    for (int f : t.regions()) {
        Word w = face_label(d, t.faces[std::size_t(f)]);
        if (!closure.contains(w)) defect("region label not a relator (face " + std::to_string(f) + ")");
    }
    return v;
}

Validation validate(const Diagram& d, const Presentation& p) { return validate(d, RelatorIndex(p)); }

std::size_t Classification::inner_vertices() const {
    return std::size_t(std::count(vertex_inner.begin(), vertex_inner.end(), true));
}
std::size_t Classification::inner_edges() const {
    return std::size_t(std::count(edge_inner.begin(), edge_inner.end(), true));
}

static Classification classify(const Diagram& d, const Topology& t) {
    Classification c;
    c.vertex_inner.assign(std::size_t(t.vertex_count), true);
    c.vertex_valence.assign(std::size_t(t.vertex_count), 0);
    c.edge_inner.assign(d.edge_count(), true);
    if (d.dart_count() == 0) {
        c.vertex_inner[0] = false;
        return c;
    }
    for (std::size_t x = 0; x < d.dart_count(); ++x) {
        int o = t.origin[x];
        ++c.vertex_valence[std::size_t(o)];
        if (t.is_outer(int(x))) {
            c.vertex_inner[std::size_t(o)] = false;
            c.edge_inner[x / 2] = false;
        }
    }
    c.regions = t.regions();
    for (int f : c.regions) {
        bool inner = true;
        std::set<int> nb, edges;
        for (int x : t.faces[std::size_t(f)]) {
            edges.insert(x / 2);
            int g = t.face[std::size_t(x ^ 1)];
            if (g == t.outer_face) inner = false;
            else if (g != f) nb.insert(g);
        }
        c.region_inner.push_back(inner);
        c.region_neighbors.push_back(int(nb.size()));
        c.region_edges.push_back(int(edges.size()));
    }
    return c;
}

Classification classify_elements(const Diagram& d) { return classify(d, topology(d)); }

ReducedResult is_reduced(const Diagram& d) {
    ReducedResult r;
    if (d.dart_count() == 0) return r;
    Topology t = topology(d);
    for (std::size_t x = 0; x < d.dart_count(); x += 2) {
        int f1 = t.face[x], f2 = t.face[x ^ 1];
        if (f1 == t.outer_face || f2 == t.outer_face || f1 == f2) continue;
        Word w;
        for (int y = d.next[x]; y != int(x); y = d.next[std::size_t(y)]) w.push_back(d.label[std::size_t(y)]);
        for (int y = d.next[x ^ 1]; y != int(x ^ 1); y = d.next[std::size_t(y)]) w.push_back(d.label[std::size_t(y)]);
        if (free_reduce(w).empty()) {
            r.reduced = false;
            r.dart = int(x);
            r.region1 = f1;
            r.region2 = f2;
            return r;
        }
    }
    return r;
}

Diagram mirror(const Diagram& d) {
    Diagram m = d;
    if (d.dart_count() == 0) return m;
    Topology t = topology(d);
    for (std::size_t e = 0; e < d.dart_count(); ++e) m.next[e] = t.prev[e ^ 1] ^ 1;
    m.outer = d.outer ^ 1;
    return m;
}

static std::vector<std::uint32_t> traversal_code(const Diagram& d, const std::vector<bool>& outer, int root) {
    const std::size_t n = d.dart_count();
    std::vector<int> num(n, -1), order;
    order.reserve(n);
    num[std::size_t(root)] = 0;
    order.push_back(root);
    for (std::size_t i = 0; i < order.size(); ++i) {
        int x = order[i];
        for (int y : {d.next[std::size_t(x)], x ^ 1})
            if (num[std::size_t(y)] < 0) {
                num[std::size_t(y)] = int(order.size());
                order.push_back(y);
            }
    }
    std::vector<std::uint32_t> code;
    code.reserve(4 * n);
    for (int x : order) {
        code.push_back(std::uint32_t(num[std::size_t(d.next[std::size_t(x)])]));
        code.push_back(std::uint32_t(num[std::size_t(x ^ 1)]));
        code.push_back(outer[std::size_t(x)] ? 1u : 0u);
        code.push_back(d.label[std::size_t(x)]);
    }
    return code;
}

std::vector<std::uint32_t> canonical_key(const Diagram& d) {
    std::vector<std::uint32_t> best;
    if (d.dart_count() == 0) return best;
    for (const Diagram& m : {d, mirror(d)}) {
        Topology t = topology(m);
        std::vector<bool> outer(m.dart_count());
        for (std::size_t x = 0; x < m.dart_count(); ++x) outer[x] = t.is_outer(int(x));
        for (int root : t.faces[std::size_t(t.outer_face)]) {
            auto code = traversal_code(m, outer, root);
            if (best.empty() || code < best) best = std::move(code);
        }
    }
    return best;
}

bool equivalent(const Diagram& a, const Diagram& b) { return canonical_key(a) == canonical_key(b); }

// Builder

DiagramBuilder DiagramBuilder::polygon(const Word& r) {
    DiagramBuilder b;
    b.attach(0, 0, r);
    return b;
}

DiagramBuilder DiagramBuilder::from(const Diagram& d) {
    DiagramBuilder b;
    b.label_ = d.label;
    b.next_ = d.next;
    if (d.dart_count() == 0) return b;
    Topology t = topology(d);
    for (std::size_t x = 0; x < d.dart_count(); ++x)
        if (t.is_outer(int(x))) b.next_[x] = -1;
    b.ccw_ = boundary_cycle(d).darts;
    b.regions_ = t.faces.size() - 1;
    return b;
}

Word DiagramBuilder::boundary_label() const {
    Word w;
    for (int x : ccw_) w.push_back(label_[std::size_t(x)]);
    return w;
}

int DiagramBuilder::new_edge(Letter l) {
    int x = int(label_.size());
    label_.push_back(l);
    label_.push_back(inv(l));
    next_.push_back(-1);
    next_.push_back(-1);
    return x;
}

void DiagramBuilder::attach(std::size_t pos, std::size_t len, const Word& path) {
    const std::size_t L = ccw_.size();
    if (path.empty()) throw Error("attach needs a nonempty path");
    if (len > L || (L > 0 && pos >= L) || (L == 0 && pos != 0)) throw Error("attach arc out of range");
    std::vector<int> arc, rest;
    for (std::size_t i = 0; i < L; ++i) (i < len ? arc : rest).push_back(ccw_[(pos + i) % L]);
    std::vector<int> fresh;
    for (Letter l : path) fresh.push_back(new_edge(l));
    std::vector<int> cycle = fresh;
    for (auto it = arc.rbegin(); it != arc.rend(); ++it) cycle.push_back(*it ^ 1);
    for (std::size_t i = 0; i < cycle.size(); ++i) next_[std::size_t(cycle[i])] = cycle[(i + 1) % cycle.size()];
    std::vector<int> out;
    if (pos + len <= L) {
        out.assign(ccw_.begin(), ccw_.begin() + long(pos));
        out.insert(out.end(), fresh.begin(), fresh.end());
        out.insert(out.end(), ccw_.begin() + long(pos + len), ccw_.end());
    } else {
        out = fresh;
        out.insert(out.end(), rest.begin(), rest.end());
    }
    ccw_ = std::move(out);
    ++regions_;
}

void DiagramBuilder::spike(std::size_t pos, Letter x) {
    if (pos > ccw_.size()) throw Error("spike position out of range");
    int s = new_edge(x);
    ccw_.insert(ccw_.begin() + long(pos), {s, s ^ 1});
}

void DiagramBuilder::rotate(std::size_t k) {
    if (ccw_.empty()) return;
    std::rotate(ccw_.begin(), ccw_.begin() + long(k % ccw_.size()), ccw_.end());
}

Diagram DiagramBuilder::build() const {
    Diagram d;
    d.label = label_;
    d.next = next_;
    const std::size_t L = ccw_.size();
    for (std::size_t i = 0; i < L; ++i) d.next[std::size_t(ccw_[i] ^ 1)] = ccw_[(i + L - 1) % L] ^ 1;
    d.outer = L ? ccw_[0] ^ 1 : -1;
    return d;
}

// Enumeration

void enumerate_diagrams(const Presentation& p, const EnumerationOptions& opt,
                        const std::function<void(const Diagram&)>& fn) {
    if (opt.max_regions > opt.cap)
        throw CapExceeded("max_regions " + std::to_string(opt.max_regions) + " exceeds cap " + std::to_string(opt.cap));
    RelatorIndex closure(p);
    std::optional<Word> target;
    if (opt.boundary) target = cyclic_normal_form(*opt.boundary);
    std::size_t total = 0;

    std::map<std::vector<std::uint32_t>, Diagram> level;
    for (const Word& r : closure.relators()) {
        Diagram d = DiagramBuilder::polygon(r).build();
        level.emplace(canonical_key(d), std::move(d));
    }
    for (std::size_t k = 1; k <= opt.max_regions && !level.empty(); ++k) {
        total += level.size();
        if (total > opt.max_diagrams) throw CapExceeded("enumeration exceeded " + std::to_string(opt.max_diagrams) + " diagrams");
        for (const auto& [key, d] : level)
            if (!target || cyclic_normal_form(boundary_label(d)) == *target) fn(d);
        if (k == opt.max_regions) break;
        std::map<std::vector<std::uint32_t>, Diagram> next_level;
        for (const auto& [key, d] : level) {
            DiagramBuilder base = DiagramBuilder::from(d);
            Word bw = base.boundary_label();
            const std::size_t L = bw.size();
            for (std::size_t pos = 0; pos < L; ++pos) {
                Word rot = rotate(bw, pos);
                for (std::size_t l = 1; l < L && l < closure.max_length(); ++l) {
                    auto [lo, hi] = closure.prefix_range(inverse(rot.substr(0, l)));
                    for (std::size_t i = lo; i < hi; ++i) {
                        const Word& r = closure.relators()[i];
                        if (r.size() <= l) continue;
                        DiagramBuilder b = base;
                        b.attach(pos, l, r.substr(l));
                        Diagram nd = b.build();
                        auto nk = canonical_key(nd);
                        next_level.emplace(std::move(nk), std::move(nd));
                    }
                }
            }
            if (total + next_level.size() > opt.max_diagrams)
                throw CapExceeded("enumeration exceeded " + std::to_string(opt.max_diagrams) + " diagrams");
        }
        level = std::move(next_level);
    }
}

std::vector<Diagram> enumerate_diagrams(const Presentation& p, const EnumerationOptions& opt) {
    std::vector<Diagram> out;
    enumerate_diagrams(p, opt, [&](const Diagram& d) { out.push_back(d); });
    return out;
}

// Area search

AreaSolver::AreaSolver(const Presentation& p) : closure_(std::make_shared<RelatorIndex>(p)) {}
AreaSolver::AreaSolver(std::shared_ptr<const RelatorIndex> closure) : closure_(std::move(closure)) {}

bool AreaSolver::fillable(const Word& w, std::size_t k) {
    if (w.empty()) return true;
    if (k == 0) return false;
    if (k == 1) return closure_->contains(w);
    Word key = cyclic_normal_form(w);
    if (auto it = exact_.find(key); it != exact_.end()) return it->second <= k;
    if (auto it = fails_.find(key); it != fails_.end() && it->second >= k) return false;
    const std::size_t n = w.size();
    for (std::size_t p = 0; p < n; ++p) {
        Word rot = rotate(w, p);
        for (std::size_t l = std::min(n, closure_->max_length()); l >= 1; --l) {
            auto [lo, hi] = closure_->prefix_range(rot.substr(0, l));
            for (std::size_t i = lo; i < hi; ++i) {
                const Word& r = closure_->relators()[i];
                Word next = cyclic_reduce(inverse(r.substr(l)) + rot.substr(l));
                if (fillable(next, k - 1)) return true;
            }
        }
    }
    std::size_t& f = fails_[key];
    f = std::max(f, k);
    return false;
}

std::optional<std::size_t> AreaSolver::area(const Word& w, std::size_t limit) {
    Word cr = cyclic_reduce(w);
    if (cr.empty()) return 0;
    Word key = cyclic_normal_form(cr);
    if (auto it = exact_.find(key); it != exact_.end())
        return it->second <= limit ? std::optional<std::size_t>(it->second) : std::nullopt;
    for (std::size_t k = 1; k <= limit; ++k)
        if (fillable(cr, k)) {
            exact_[key] = k;
            return k;
        }
    return std::nullopt;
}

namespace {

struct Fold {
    bool cyclic;
    std::size_t pos;
    Letter letter;
};

// Folds taking w to cyclic_reduce(w), in order.
std::vector<Fold> folds(Word w) {
    std::vector<Fold> out;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i + 1] == inv(w[i])) {
                out.push_back({false, i, w[i]});
                w.erase(i, 2);
                changed = true;
                break;
            }
    }
    while (w.size() >= 2 && w.back() == inv(w.front())) {
        out.push_back({true, 0, w.back()});
        w = w.substr(1, w.size() - 2);
    }
    return out;
}

void unfold(DiagramBuilder& b, const std::vector<Fold>& fs) {
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
        if (it->cyclic) {
            b.spike(0, it->letter);
            b.rotate(1);
        } else {
            b.spike(it->pos, it->letter);
        }
    }
}

}  // namespace

std::optional<DiagramBuilder> AreaSolver::build(const Word& w, std::size_t k) {
    if (w.empty()) return DiagramBuilder();
    if (k == 0) return std::nullopt;
    const std::size_t n = w.size();
    for (std::size_t p = 0; p < n; ++p) {
        Word rot = rotate(w, p);
        for (std::size_t l = std::min(n, closure_->max_length()); l >= 1; --l) {
            auto [lo, hi] = closure_->prefix_range(rot.substr(0, l));
            for (std::size_t i = lo; i < hi; ++i) {
                const Word& r = closure_->relators()[i];
                Word v = inverse(r.substr(l));
                Word x = v + rot.substr(l);
                Word next = cyclic_reduce(x);
                if (!fillable(next, k - 1)) continue;
                auto b = build(next, k - 1);
                if (!b) continue;
                unfold(*b, folds(x));
                b->attach(0, v.size(), rot.substr(0, l));
                b->rotate((n - p) % n);
                return b;
            }
        }
    }
    return std::nullopt;
}

std::optional<Diagram> AreaSolver::witness(const Word& w, std::size_t limit) {
    auto a = area(w, limit);
    if (!a) return std::nullopt;
    Word cr = cyclic_reduce(w);
    auto b = build(cr, *a);
    if (!b) throw Error("area search found no witness for a fillable word");
    unfold(*b, folds(w));
    return b->build();
}

MinimalityCertificate is_minimal(const Diagram& d, AreaSolver& solver) {
    MinimalityCertificate c;
    c.bound = region_count(d);
    if (c.bound == 0) return c;
    Word w = boundary_label(d);
    auto a = solver.area(w, c.bound - 1);
    if (a) {
        c.minimal = false;
        c.smaller = solver.witness(w, c.bound - 1);
    }
    return c;
}

MinimalityCertificate is_minimal(const Diagram& d, const Presentation& p) {
    AreaSolver s(p);
    return is_minimal(d, s);
}

// Map conditions

bool check_C4T4_map(const Diagram& d) {
    Classification c = classify_elements(d);
    for (std::size_t i = 0; i < c.regions.size(); ++i)
        if (c.region_inner[i] && c.region_neighbors[i] < 4) return false;
    for (std::size_t v = 0; v < c.vertex_inner.size(); ++v)
        if (c.vertex_inner[v] && c.vertex_valence[v] == 3) return false;
    return true;
}

bool check_proper_C4T4_map(const Diagram& d) {
    if (!check_C4T4_map(d)) return false;
    Classification c = classify_elements(d);
    for (std::size_t v = 0; v < c.vertex_inner.size(); ++v)
        if (c.vertex_inner[v] && c.vertex_valence[v] == 2) return false;
    for (int e : c.region_edges)
        if (e < 4) return false;
    return true;
}

// Thick configurations

static int region_beside(const Topology& t, int x) {
    int f = t.face[std::size_t(x)], g = t.face[std::size_t(x ^ 1)];
    if (f == t.outer_face && g != t.outer_face) return g;
    if (g == t.outer_face && f != t.outer_face) return f;
    return -1;
}

static std::vector<int> path_vertices(const Topology& t, const std::vector<int>& darts) {
    std::vector<int> vs;
    for (int x : darts) vs.push_back(t.origin[std::size_t(x)]);
    if (!darts.empty()) vs.push_back(t.target(darts.back()));
    return vs;
}

// Position of the region dart on edge x in the cycle of face f, or -1.
static int cycle_index(const Topology& t, int f, int x) {
    const auto& cyc = t.faces[std::size_t(f)];
    for (std::size_t i = 0; i < cyc.size(); ++i)
        if (cyc[i] / 2 == x / 2) return int(i);
    return -1;
}

std::vector<ThickConfiguration> detect_thick_configurations(const Diagram& d, const BoundaryPath& alpha) {
    std::vector<ThickConfiguration> out;
    if (d.dart_count() == 0 || alpha.darts.empty()) return out;
    Topology t = topology(d);
    const auto& a = alpha.darts;
    const std::size_t k = a.size();
    std::vector<int> reg(k);
    for (std::size_t i = 0; i < k; ++i) reg[i] = region_beside(t, a[i]);
    std::vector<int> alpha_vs = path_vertices(t, a);

    std::set<int> done;
    for (std::size_t s = 0; s < k; ++s) {
        int D = reg[s];
        if (D < 0 || done.count(D)) continue;
        done.insert(D);
        std::size_t m = 0;
        while (s + m < k && reg[s + m] == D) ++m;
        bool contiguous = true;
        for (std::size_t i = s + m; i < k; ++i)
            if (reg[i] == D) contiguous = false;
        if (!contiguous) continue;
        const auto& cyc = t.faces[std::size_t(D)];
        if (2 * m <= cyc.size()) continue;
        // mu must be a contiguous run of the region cycle
        std::set<int> mu_edges;
        for (std::size_t i = s; i < s + m; ++i) mu_edges.insert(a[i] / 2);
        std::size_t runs = 0;
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            bool in = mu_edges.count(cyc[i] / 2) != 0;
            bool prev_in = mu_edges.count(cyc[(i + cyc.size() - 1) % cyc.size()] / 2) != 0;
            if (in && !prev_in) ++runs;
        }
        if (runs != 1 && m != cyc.size()) continue;
        std::vector<int> mu_darts(a.begin() + long(s), a.begin() + long(s + m));
        std::set<int> mu_vs;
        for (int v : path_vertices(t, mu_darts)) mu_vs.insert(v);
        std::set<int> d_vs;
        for (int x : cyc) d_vs.insert(t.origin[std::size_t(x)]);
        bool exact = true;
        for (int v : alpha_vs)
            if (d_vs.count(v) && !mu_vs.count(v)) exact = false;
        if (!exact) continue;
        ThickConfiguration c;
        c.kind = ThickConfiguration::Kind::First;
        c.regions = {D};
        c.mu_start = s;
        c.mu_length = m;
        for (int x : cyc)
            if (!mu_edges.count(x / 2)) c.sigma.push_back(x);
        out.push_back(std::move(c));
    }

    for (std::size_t i = 1; i + 1 < k; ++i) {
        int D2 = reg[i], D1 = reg[i - 1];
        if (D2 < 0 || reg[i + 1] != D2 || D1 < 0 || D1 == D2) continue;
        const auto& cyc = t.faces[std::size_t(D2)];
        if (cyc.size() != 4) continue;
        std::vector<int> sigma;
        bool ok = true;
        for (int x : cyc) {
            if (x / 2 == a[i] / 2 || x / 2 == a[i + 1] / 2) continue;
            if (t.is_outer(x) || t.is_outer(x ^ 1)) ok = false;
            sigma.push_back(x);
        }
        if (!ok || sigma.size() != 2) continue;
        int mi = cycle_index(t, D2, a[i]), mj = cycle_index(t, D2, a[i + 1]);
        if (std::abs(mi - mj) != 1 && std::abs(mi - mj) != 3) continue;
        bool neighbors = false;
        for (int x : cyc)
            if (t.face[std::size_t(x ^ 1)] == D1) neighbors = true;
        if (!neighbors) continue;
        ThickConfiguration c;
        c.kind = ThickConfiguration::Kind::Second;
        c.regions = {D1, D2};
        c.mu_start = i;
        c.mu_length = 2;
        c.sigma = sigma;
        c.extra_edge = a[i - 1];
        out.push_back(std::move(c));
    }
    return out;
}

// Thinness

static bool thin_split(const Diagram& d, const Topology& t, const std::vector<int>& ccw, std::size_t k, ThinMode mode) {
    const std::size_t L = ccw.size();
    std::set<int> dv, mv, de, me;
    for (std::size_t i = 0; i <= k; ++i) dv.insert(t.origin[std::size_t(ccw[i % L])]);
    for (std::size_t i = k; i <= L; ++i) mv.insert(t.origin[std::size_t(ccw[i % L])]);
    for (std::size_t i = 0; i < L; ++i) (i < k ? de : me).insert(ccw[i] / 2);
    Classification c = classify(d, t);
    for (std::size_t r = 0; r < c.regions.size(); ++r) {
        if (c.region_neighbors[r] > 2) return false;
        bool hit_d = false, hit_m = false;
        for (int x : t.faces[std::size_t(c.regions[r])]) {
            if (mode == ThinMode::Vertex) {
                int v = t.origin[std::size_t(x)];
                hit_d = hit_d || dv.count(v);
                hit_m = hit_m || mv.count(v);
            } else {
                hit_d = hit_d || de.count(x / 2);
                hit_m = hit_m || me.count(x / 2);
            }
        }
        if (!hit_d || !hit_m) return false;
    }
    return true;
}

bool is_thin(const Diagram& d, std::size_t k, int basepoint, ThinMode mode) {
    if (d.dart_count() == 0) return true;
    BoundaryPath cyc = boundary_cycle(d, basepoint < 0 ? default_basepoint(d) : basepoint);
    if (k > cyc.darts.size()) throw BadDecomposition("split point beyond the boundary length");
    return thin_split(d, topology(d), cyc.darts, k, mode);
}

bool is_thin(const Diagram& d, const BoundaryPath& delta, const BoundaryPath& mu, ThinMode mode) {
    if (d.dart_count() == 0) return true;
    std::vector<int> seq = delta.darts;
    for (auto it = mu.darts.rbegin(); it != mu.darts.rend(); ++it) seq.push_back(*it ^ 1);
    if (seq.empty()) throw BadDecomposition("empty decomposition of a nonempty boundary");
    Topology t = topology(d);
    if (!t.is_outer(seq[0] ^ 1)) throw BadDecomposition("decomposition does not start on the boundary");
    BoundaryPath cyc = boundary_cycle(d, seq[0]);
    if (cyc.darts != seq) throw BadDecomposition("delta * mu^-1 is not the ccw boundary cycle");
    return thin_split(d, t, cyc.darts, delta.darts.size(), mode);
}

std::pair<BoundaryPath, BoundaryPath> split_boundary(const Diagram& d, std::size_t k, int basepoint) {
    BoundaryPath cyc = boundary_cycle(d, basepoint < 0 ? default_basepoint(d) : basepoint);
    if (k > cyc.darts.size()) throw BadDecomposition("split point beyond the boundary length");
    BoundaryPath delta, rest;
    for (std::size_t i = 0; i < cyc.darts.size(); ++i) {
        BoundaryPath& p = i < k ? delta : rest;
        p.darts.push_back(cyc.darts[i]);
        p.label.push_back(cyc.label[i]);
    }
    return {delta, reversed(rest)};
}

bool shared_paths_are_single_edges(const Diagram& d) {
    if (d.dart_count() == 0) return true;
    Topology t = topology(d);
    std::map<std::pair<int, int>, std::vector<int>> shared;
    for (std::size_t x = 0; x < d.dart_count(); x += 2) {
        int f = t.face[x], g = t.face[x ^ 1];
        if (f == t.outer_face || g == t.outer_face || f == g) continue;
        shared[{std::min(f, g), std::max(f, g)}].push_back(int(x));
    }
    for (const auto& [pair, edges] : shared)
        for (std::size_t i = 0; i < edges.size(); ++i)
            for (std::size_t j = i + 1; j < edges.size(); ++j) {
                int x = edges[i], y = edges[j];
                std::set<int> vx{t.origin[std::size_t(x)], t.target(x)};
                if (vx.count(t.origin[std::size_t(y)]) || vx.count(t.target(y))) return false;
            }
    return true;
}

H2Report check_H2(const Presentation& p, std::size_t max_regions, std::size_t max_diagrams) {
    H2Report rep;
    AreaSolver solver(p);
    EnumerationOptions opt;
    opt.max_regions = max_regions;
    opt.cap = std::max(opt.cap, max_regions);
    opt.max_diagrams = max_diagrams;
    try {
        enumerate_diagrams(p, opt, [&](const Diagram& d) {
            ++rep.diagrams;
            if (!rep.holds) return;
            if (!is_minimal(d, solver).minimal) return;
            ++rep.minimal;
            if (!check_C4T4_map(d)) {
                rep.holds = false;
                rep.clause = "a";
                rep.counterexample = d;
            } else if (!shared_paths_are_single_edges(d)) {
                rep.holds = false;
                rep.clause = "b";
                rep.counterexample = d;
            }
        });
    } catch (const CapExceeded&) {
        rep.exhausted_budget = true;
    }
    return rep;
}

}  // namespace c4t4
