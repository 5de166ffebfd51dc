#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "c4t4/diagram_io.hpp"
#include "c4t4/io.hpp"
#include "c4t4/refutation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace c4t4;

namespace {

enum Exit { kOk = 0, kCondition = 2, kBudget = 3, kInternal = 4 };

struct RunConfig {
    std::string input;
    std::string out;
    std::size_t ball_radius = 5;
    std::size_t max_regions = 2;
    std::size_t max_word_len = 0;  // 0: ball radius
    std::string format = "text";
    bool strict_stability = true;
    std::size_t corpus_limit = 100'000;
    std::size_t small_alphabet = 16;
    std::string words_file;
    std::vector<std::string> words;

    Equivalence equivalence() const { return strict_stability ? Equivalence::Strict : Equivalence::TypeOnly; }
    std::size_t word_len() const { return max_word_len ? max_word_len : ball_radius; }
};

struct Report {
    json checks = json::object();
    json counts = json::object();
    json constants = json::object();
    json failures = json::array();
    int code = kOk;

    void fail(const std::string& stage, const std::string& message, int c) {
        failures.push_back({{"stage", stage}, {"message", message}, {"exit", c}});
        code = std::max(code, c);
    }
    json to_json() const {
        return {{"checks", checks}, {"counts", counts}, {"constants", constants}, {"failures", failures}};
    }
};

int exit_code(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const NotCyclicallyReduced*>(&e) ||
        dynamic_cast<const CyclicGraph*>(&e) || dynamic_cast<const H1Violated*>(&e) ||
        dynamic_cast<const NotSymmetricallyClosed*>(&e))
        return kCondition;
    if (dynamic_cast<const OracleBudget*>(&e) || dynamic_cast<const BallBudgetExceeded*>(&e) ||
        dynamic_cast<const CapExceeded*>(&e) || dynamic_cast<const BallTooSmall*>(&e))
        return kBudget;
    return kInternal;
}

// Runs one stage; an exception becomes a tagged failure. Returns false if the stage aborted.
template <class F>
bool stage(Report& r, const std::string& name, F&& fn) {
    try {
        fn();
        return true;
    } catch (const std::exception& e) {
        r.fail(name, e.what(), exit_code(e));
        return false;
    }
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
    if (!out) throw Error("cannot write " + p.string());
}

void write_json(const fs::path& p, const json& j) { write_file(p, j.dump(2) + "\n"); }

fs::path prepare_out(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    auto probe = p / ".write_probe";
    write_file(probe, "");
    fs::remove(probe);
    return p;
}

std::string pass(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
    return s;
}

std::string word_text(const Alphabet& a, const Word& w) { return w.empty() ? "1" : a.format(w); }

Word parse_word(const Alphabet& a, const std::string& s) {
    if (s == "1") return {};
    return a.parse(s);
}

// The algebraic checks gate the exit code; H1 and H2 are listed for information.
std::vector<std::string> run_checks(const Presentation& p, const RunConfig& cfg, Report& r) {
    std::vector<std::string> lines;
    RelatorIndex closure(p);
    r.counts["generators"] = p.alphabet.rank();
    r.counts["relators"] = p.relators.size();
    r.counts["closure"] = closure.size();
    r.counts["pieces"] = pieces(closure).size();
    lines.push_back("presentation: " + std::to_string(p.alphabet.rank()) + " generators, " +
                    std::to_string(p.relators.size()) + " relators, closure " + std::to_string(closure.size()));

    auto c4 = check_C4(p);
    json c4j{{"pass", c4.holds}};
    std::string c4line = "C(4): " + pass(c4.holds);
    if (!c4.holds) {
        std::vector<std::string> parts;
        for (const auto& w : c4.decomposition) parts.push_back(p.format(w));
        c4j["witness"] = {{"relator", p.format(c4.relator)}, {"pieces", parts}};
        c4line += " relator " + p.format(c4.relator) + " = " + join(parts, " . ");
    }
    r.checks["C4"] = c4j;
    lines.push_back(c4line);

    auto t4 = check_T4(p);
    json t4j{{"pass", t4.holds}};
    std::string t4line = "T(4): " + pass(t4.holds);
    if (!t4.holds) {
        std::vector<std::string> tr;
        for (const auto& w : t4.triple) tr.push_back(p.format(w));
        t4j["witness"] = tr;
        t4line += " triple " + join(tr, ", ");
    }
    r.checks["T4"] = t4j;
    lines.push_back(t4line);

    bool alg = c4.holds && t4.holds;
    r.checks["C4T4"] = {{"pass", alg}};
    lines.push_back("algebraic C(4)&T(4): " + pass(alg));
    if (!alg) r.fail("check", "algebraic C(4)&T(4) fails", kCondition);

    auto gp = every_generator_is_piece(p);
    std::vector<std::string> offenders;
    for (int g : gp.offenders) offenders.push_back(p.alphabet.names()[std::size_t(g)]);
    r.checks["every_generator_is_piece"] = {{"pass", gp.holds}, {"offenders", offenders}};
    std::string gpline = "every-generator-is-piece: " + pass(gp.holds);
    if (!gp.holds) {
        gpline += " offenders: " + join(offenders, ", ");
        r.fail("check", "generators that are not pieces: " + join(offenders, ", "), kCondition);
    }
    lines.push_back(gpline);

    bool h1 = check_H1(p);
    r.checks["H1"] = {{"pass", h1}, {"informational", true}};
    lines.push_back("H1: " + pass(h1) + " (informational)");

    auto h2 = check_H2(p, cfg.max_regions);
    json h2j{{"pass", h2.holds}, {"informational", true}, {"max_regions", cfg.max_regions},
             {"diagrams", h2.diagrams}, {"minimal", h2.minimal}, {"exhausted_budget", h2.exhausted_budget}};
    std::string h2line = "H2 (<= " + std::to_string(cfg.max_regions) + " regions): " + pass(h2.holds);
    if (!h2.holds && h2.counterexample) {
        h2j["clause"] = h2.clause;
        h2j["counterexample"] = p.format(boundary_label(*h2.counterexample));
        h2line += " clause (" + h2.clause + ") boundary " + p.format(boundary_label(*h2.counterexample));
    }
    if (h2.exhausted_budget) h2line += " budget exhausted";
    r.checks["H2"] = h2j;
    lines.push_back(h2line + " (informational)");
    return lines;
}

Presentation load(const RunConfig& cfg) { return read_presentation(cfg.input); }

int report_failure(const std::exception& e, const std::string& stage, const std::string& format) {
    int c = exit_code(e);
    std::string msg = e.what();
    if (format == "json")
        std::cout << json{{"failures", {{{"stage", stage}, {"message", msg}, {"exit", c}}}}}.dump(2) << "\n";
    std::cerr << stage << ": " << msg << "\n";
    return c;
}

int cmd_check(const RunConfig& cfg) {
    Presentation p;
    try {
        p = load(cfg);
    } catch (const std::exception& e) {
        return report_failure(e, "parse", cfg.format);
    }
    Report r;
    std::vector<std::string> lines;
    if (!stage(r, "check", [&] { lines = run_checks(p, cfg, r); })) {
        std::cerr << r.failures.back()["message"].get<std::string>() << "\n";
        return r.code;
    }
    if (!cfg.out.empty()) write_json(prepare_out(cfg.out) / "check.json", r.to_json());
    if (cfg.format == "json")
        std::cout << r.to_json().dump(2) << "\n";
    else
        for (const auto& l : lines) std::cout << l << "\n";
    return r.code;
}

Gradings compute_gradings(const DominoIndex& idx, Equivalence e) {
    auto ts = stable_triplets(idx, e).triplets;
    std::size_t n = idx.letter_count();
    Gradings g(n);
    for (std::size_t x = 0; x < n; ++x) g.set(Letter(x), grading(stability_graph(ts, Letter(x), n)).grades);
    return g;
}

std::string file_name(const Alphabet& a, Letter x) {
    std::string s = std::to_string(x);
    s = std::string(4 - std::min<std::size_t>(4, s.size()), '0') + s + "_";
    for (char c : a.name(x)) s += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    return s + ".dot";
}

// The input when every relator has length 4, else its BSD presentation.
Presentation choose_target(const Presentation& p, const BsdPresentation* pt) {
    if (check_H1(p) || !pt) return p;
    return pt->tilde;
}

void refutation_stage(const Presentation& target, const Gradings& g, const RunConfig& cfg, Report& r) {
    auto ball = build_ball(target, cfg.ball_radius);
    r.counts["ball"] = ball_stats(ball);
    Refuter ref(target, ball, g, {.equivalence = cfg.equivalence()});
    std::size_t len = std::min(cfg.word_len(), cfg.ball_radius);
    std::map<std::size_t, Word> least;
    for (const auto& w : minimal_words_sample(ball, g, len)) least.emplace(ball.class_of(w), w);
    std::map<std::string, std::array<std::size_t, 3>> by_kind;  // steps, max measured, bound
    std::size_t words = 0, refuted = 0, mismatches = 0, over = 0;
    for (auto c : ball.classes())
        for (const auto& w : ball.members(c)) {
            if (w.size() > len) continue;
            ++words;
            auto nf = ref.normalize(w);
            if (!nf.chain.empty()) ++refuted;
            if (nf.word != least.at(c)) ++mismatches;
            for (const auto& step : nf.chain) {
                auto& k = by_kind[kind_name(step.kind)];
                ++k[0];
                k[1] = std::max(k[1], step.fellow_constant);
                k[2] = step.bound;
                if (!step.within_bound()) ++over;
            }
        }
    json kinds = json::object();
    for (const auto& [k, v] : by_kind) kinds[k] = {{"steps", v[0]}, {"max_fellow_constant", v[1]}, {"bound", v[2]}};
    r.constants["refutation"] = kinds;
    r.counts["normalized_words"] = words;
    r.counts["refuted_words"] = refuted;
    r.checks["normalize_matches_least_words"] = {{"pass", mismatches == 0}, {"mismatches", mismatches}};
    r.checks["refutation_bounds"] = {{"pass", over == 0}, {"over_bound", over}};
    if (mismatches) r.fail("refutation", std::to_string(mismatches) + " normal forms differ from the least word", kInternal);
    if (over) r.fail("refutation", std::to_string(over) + " refutation steps exceed their bound", kCondition);

    std::size_t end_len = cfg.ball_radius > 1 ? std::min(len, cfg.ball_radius - 1) : len;
    auto e = fellow_traveller_endgame(ball, g, end_len, target.alphabet.letter_count());
    json ej{{"pairs", e.pairs},
            {"uncertified", e.uncertified},
            {"max_fellow_constant", e.max_constant},
            {"bound", 9},
            {"violations", e.violations},
            {"hausdorff_checked", e.hausdorff_checked},
            {"hausdorff_violated", e.hausdorff_violated},
            {"max_len", end_len}};
    if (e.worst) ej["worst"] = {word_text(target.alphabet, (*e.worst)[0]), word_text(target.alphabet, (*e.worst)[1])};
    r.constants["endgame"] = ej;
    r.checks["endgame"] = {{"pass", e.violations == 0 && e.hausdorff_violated == 0}};
    if (e.violations || e.hausdorff_violated)
        r.fail("endgame", std::to_string(e.violations) + " pairs exceed the fellow-traveller bound", kCondition);
}

int cmd_pipeline(const RunConfig& cfg) {
    Presentation p;
    try {
        p = load(cfg);
    } catch (const std::exception& e) {
        return report_failure(e, "parse", cfg.format);
    }
    fs::path out;
    try {
        out = prepare_out(cfg.out);
    } catch (const std::exception& e) {
        return report_failure(e, "output", cfg.format);
    }
    Report r;
    std::vector<std::string> lines;
    auto finish = [&] {
        write_json(out / "report.json", r.to_json());
        if (cfg.format == "json") {
            std::cout << r.to_json().dump(2) << "\n";
        } else {
            for (const auto& l : lines) std::cout << l << "\n";
            for (const auto& f : r.failures)
                std::cout << "failure [" << f["stage"].get<std::string>() << "]: " << f["message"].get<std::string>()
                          << "\n";
            std::cout << "report: " << (out / "report.json").string() << "\n";
        }
        return r.code;
    };

    if (!stage(r, "check", [&] { lines = run_checks(p, cfg, r); }) || r.code != kOk) return finish();

    std::optional<BsdPresentation> pt;
    stage(r, "bsd", [&] {
        pt = bsd(symmetric_closure(p));
        write_file(out / "bsd.txt", pt->header() + "\n" + to_text(pt->tilde));
        write_json(out / "bsd.json", {{"presentation", to_json(pt->tilde)}, {"provenance", provenance_json(*pt)}});
        auto shape = check_shape(*pt);
        auto pieces = verify_piece_bound(*pt);
        bool three = three_letters_determine_relator(*pt);
        r.counts["bsd_generators"] = pt->generator_count();
        r.counts["bsd_relators"] = pt->tilde.relators.size();
        r.checks["bsd_shape"] = {{"pass", shape.ok}};
        r.checks["bsd_piece_bound"] = {{"pass", pieces.holds}, {"max_piece", pieces.max_piece}};
        r.checks["bsd_three_letters"] = {{"pass", three}};
        r.checks["bsd_free_factor_caveat"] = pt->free_factor_caveat;
        lines.push_back("bsd: " + std::to_string(pt->generator_count()) + " generators, " +
                        std::to_string(pt->tilde.relators.size()) + " relators; shape " + pass(shape.ok) +
                        ", piece bound " + pass(pieces.holds) + ", three letters " + pass(three));
        if (!shape.ok) r.fail("bsd", "relator " + std::to_string(shape.relator) + " lacks the BSD shape", kCondition);
        if (!pieces.holds) r.fail("bsd", "piece longer than 2", kCondition);
        if (!three) r.fail("bsd", "three letters do not determine the relator", kCondition);
    });

    Presentation target = choose_target(p, pt ? &*pt : nullptr);
    bool own = check_H1(p);
    r.counts["target"] = own ? "input" : "bsd";
    r.counts["target_letters"] = target.alphabet.letter_count();
    lines.push_back(std::string("target: ") + (own ? "input" : "bsd") + ", " +
                    std::to_string(target.alphabet.letter_count()) + " letters");
    if (!own && !pt) return finish();

    stage(r, "h2", [&] {
        auto h2 = check_H2(target, cfg.max_regions);
        json j{{"pass", h2.holds && !h2.exhausted_budget}, {"max_regions", cfg.max_regions},
               {"diagrams", h2.diagrams}, {"minimal", h2.minimal}, {"exhausted_budget", h2.exhausted_budget}};
        std::string line = "H2 (<= " + std::to_string(cfg.max_regions) + " regions): " + pass(h2.holds);
        if (!h2.holds) {
            j["clause"] = h2.clause;
            if (h2.counterexample) {
                j["counterexample"] = to_json(*h2.counterexample, target.alphabet);
                write_file(out / "h2_counterexample.dot", to_dot(*h2.counterexample, target.alphabet));
            }
            r.fail("h2", "clause (" + h2.clause + ") fails", kCondition);
        }
        if (h2.exhausted_budget) {
            line += " budget exhausted";
            r.fail("h2", "diagram budget exhausted", kBudget);
        }
        r.checks["H2_target"] = j;
        r.counts["h2_diagrams"] = h2.diagrams;
        lines.push_back(line);
    });

    std::optional<DominoIndex> idx;
    std::set<Triplet> triplets;
    bool corpus = stage(r, "dominoes", [&] {
        idx.emplace(target);
        auto ds = enumerate_dominoes(*idx);
        bool truncated = ds.size() > cfg.corpus_limit;
        std::vector<Domino> kept(ds.begin(), ds.begin() + std::ptrdiff_t(std::min(ds.size(), cfg.corpus_limit)));
        auto dj = dominoes_json(kept, *idx, target.alphabet);
        for (std::size_t i = 0; i < kept.size(); ++i) dj[i]["stable"] = idx->is_stable(kept[i], cfg.equivalence());
        write_json(out / "dominoes.json", {{"total", ds.size()}, {"truncated", truncated}, {"dominoes", dj}});
        auto scan = stable_triplets(*idx, cfg.equivalence());
        triplets = scan.triplets;
        write_json(out / "triplets.json", triplets_json(triplets, target.alphabet));
        r.counts["dominoes"] = scan.dominoes;
        r.counts["stable_dominoes"] = scan.stable;
        r.counts["stable_triplets"] = triplets.size();
        lines.push_back("dominoes: " + std::to_string(scan.dominoes) + " (" + std::to_string(scan.stable) +
                        " stable), " + std::to_string(triplets.size()) + " stable triplets");
    });
    if (!corpus) return finish();

    std::optional<Gradings> g;
    stage(r, "gamma", [&] {
        std::size_t n = idx->letter_count();
        fs::create_directories(out / "gamma");
        std::vector<GradingTable> tables;
        std::size_t cyclic = 0;
        json witness;
        for (std::size_t x = 0; x < n; ++x) {
            auto graph = stability_graph(triplets, Letter(x), n);
            write_file(out / "gamma" / file_name(target.alphabet, Letter(x)), to_dot(graph, target.alphabet));
            auto ac = assert_acyclic(graph);
            if (!ac.acyclic) {
                if (!cyclic++) {
                    std::vector<std::string> cyc;
                    for (Letter v : ac.cycle) cyc.push_back(target.alphabet.name(v));
                    witness = {{"x", target.alphabet.name(Letter(x))}, {"cycle", cyc}};
                }
                continue;
            }
            auto t = grading(graph);
            if (!t.satisfies(graph)) throw Error("grading violates an edge of Γ_" + target.alphabet.name(Letter(x)));
            tables.push_back(std::move(t));
        }
        json j{{"pass", cyclic == 0}, {"graphs", n}, {"cyclic", cyclic}};
        if (cyclic) j["witness"] = witness;
        r.checks["gamma_acyclic"] = j;
        lines.push_back("stability graphs: " + std::to_string(n - cyclic) + "/" + std::to_string(n) + " acyclic " +
                        pass(cyclic == 0));
        if (cyclic) {
            r.fail("gamma", std::to_string(cyclic) + " stability graphs have cycles; no gradings", kCondition);
            return;
        }
        write_json(out / "gradings.json", gradings_json(tables, target.alphabet));
        g.emplace(tables);
    });
    if (!g) return finish();

    std::size_t letters = target.alphabet.letter_count();
    if (letters > cfg.small_alphabet) {
        std::string why = "skipped: " + std::to_string(letters) + " letters exceed " + std::to_string(cfg.small_alphabet);
        r.checks["automaton"] = {{"skipped", why}};
        r.checks["refutation"] = {{"skipped", why}};
        lines.push_back("automaton, refutation: " + why);
        return finish();
    }
    stage(r, "automaton", [&] {
        auto a = build_order_automaton(letters, *g);
        write_json(out / "automaton.json", to_json(a, target.alphabet));
        write_file(out / "automaton.dot", to_dot(a, target.alphabet));
        r.counts["automaton_states"] = a.states;
        lines.push_back("order automaton: " + std::to_string(a.states) + " states");
    });
    stage(r, "refutation", [&] {
        refutation_stage(target, *g, cfg, r);
        const auto& e = r.constants["endgame"];
        lines.push_back("refutation: " + std::to_string(r.counts["normalized_words"].get<std::size_t>()) +
                        " words, normal forms " + pass(r.checks["normalize_matches_least_words"]["pass"]) +
                        ", bounds " + pass(r.checks["refutation_bounds"]["pass"]));
        lines.push_back("endgame: " + std::to_string(e["pairs"].get<std::size_t>()) + " pairs, max constant " +
                        std::to_string(e["max_fellow_constant"].get<std::size_t>()) + " " +
                        pass(r.checks["endgame"]["pass"]));
    });
    return finish();
}

std::vector<std::string> read_words(const RunConfig& cfg) {
    std::vector<std::string> ws = cfg.words;
    if (!cfg.words_file.empty()) {
        std::ifstream in(cfg.words_file);
        if (!in) throw Error("cannot read " + cfg.words_file);
        for (std::string line; std::getline(in, line);) {
            while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
            ws.push_back(line);
        }
    }
    return ws;
}

int cmd_normalize(const RunConfig& cfg) {
    Presentation p;
    std::vector<std::string> inputs;
    try {
        p = load(cfg);
        inputs = read_words(cfg);
    } catch (const std::exception& e) {
        return report_failure(e, "parse", cfg.format);
    }
    Presentation target = p;
    std::optional<Gradings> g;
    std::optional<MetricBall> ball;
    try {
        if (!check_H1(p)) target = bsd(symmetric_closure(p)).tilde;
        fs::path stored = cfg.out.empty() ? fs::path() : fs::path(cfg.out) / "gradings.json";
        if (!stored.empty() && fs::exists(stored)) {
            std::ifstream in(stored);
            g = gradings_from_json(json::parse(in), target.alphabet);
            if (!g->total()) throw Error("stored gradings are not total");
        } else {
            g = compute_gradings(DominoIndex(target), cfg.equivalence());
        }
        ball.emplace(build_ball(target, cfg.ball_radius));
    } catch (const std::exception& e) {
        return report_failure(e, "setup", cfg.format);
    }
    Refuter ref(target, *ball, *g, {.equivalence = cfg.equivalence()});
    int code = kOk;
    auto results = json::array();
    for (const auto& text : inputs) {
        json j{{"input", text}};
        try {
            auto nf = ref.normalize(parse_word(target.alphabet, text));
            j.update(to_json(nf, target.alphabet));
            j["word"] = word_text(target.alphabet, nf.word);
            std::size_t fc = 0;
            std::vector<std::string> kinds;
            for (const auto& s : nf.chain) {
                fc = std::max(fc, s.fellow_constant);
                kinds.push_back(std::string(kind_name(s.kind)) + ":" + std::to_string(s.fellow_constant));
            }
            j["max_fellow_constant"] = fc;
            if (cfg.format == "text")
                std::cout << text << "\t" << j["word"].get<std::string>() << "\t"
                          << (kinds.empty() ? "-" : join(kinds, ",")) << "\n";
            if (cfg.format == "dot")
                for (std::size_t i = 0; i < nf.chain.size(); ++i)
                    if (nf.chain[i].diagram)
                        std::cout << "// " << text << " step " << i + 1 << " " << kind_name(nf.chain[i].kind)
                                  << "\n"
                                  << to_dot(*nf.chain[i].diagram, target.alphabet);
        } catch (const std::exception& e) {
            int c = exit_code(e);
            code = std::max(code, c);
            j["error"] = e.what();
            j["exit"] = c;
            if (cfg.format == "text") std::cout << text << "\tERROR\t" << e.what() << "\n";
            if (cfg.format == "dot") std::cerr << text << ": " << e.what() << "\n";
        }
        results.push_back(j);
    }
    if (cfg.format == "json") std::cout << results.dump(2) << "\n";
    if (!cfg.out.empty()) {
        try {
            write_json(prepare_out(cfg.out) / "normalize.json", results);
        } catch (const std::exception& e) {
            return report_failure(e, "output", cfg.format);
        }
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"C(4)&T(4) presentation checks, BSD pipeline and normal forms"};
    app.set_config("--config", "", "TOML config file; flags override it");
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub, std::vector<std::string> formats) {
        sub->add_option("-i,--input", cfg.input, "presentation file (text or JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--max-regions", cfg.max_regions, "region cap for the H2 stage")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember(formats))->capture_default_str();
    };
    auto budgets = [&](CLI::App* sub) {
        sub->add_option("--ball-radius", cfg.ball_radius, "metric ball radius")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--max-word-len", cfg.max_word_len, "word length cap (default: ball radius)")
            ->check(CLI::PositiveNumber);
        sub->add_flag("--strict-stability,!--no-strict-stability", cfg.strict_stability,
                      "domino equivalence by type and inner label (default) or by type only");
    };

    auto* check = app.add_subcommand("check", "algebraic and hypothesis checks");
    common(check, {"text", "json"});
    check->add_option("-o,--out", cfg.out, "also write check.json here");

    auto* pipeline = app.add_subcommand("pipeline", "check, BSD, dominoes, gradings, automaton, refutation");
    common(pipeline, {"text", "json"});
    budgets(pipeline);
    pipeline->add_option("-o,--out", cfg.out, "artifact directory")->required();
    pipeline->add_option("--corpus-limit", cfg.corpus_limit, "dominoes written to dominoes.json")
        ->capture_default_str();
    pipeline->add_option("--small-alphabet", cfg.small_alphabet, "letter limit for automaton and refutation")
        ->capture_default_str();

    auto* normalize = app.add_subcommand("normalize", "least representatives with refutation chains");
    common(normalize, {"text", "json", "dot"});
    budgets(normalize);
    normalize->add_option("-o,--out", cfg.out, "pipeline directory with gradings.json; normalize.json is written here");
    normalize->add_option("--words-file", cfg.words_file, "one word per line")->check(CLI::ExistingFile);
    normalize->add_option("words", cfg.words, "words; 1 or an empty string is the empty word");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int c = app.exit(e);
        return c == 0 ? kOk : kCondition;
    }
    try {
        if (*check) return cmd_check(cfg);
        if (*pipeline) return cmd_pipeline(cfg);
        return cmd_normalize(cfg);
    } catch (const std::exception& e) {
        std::cerr << "internal: " << e.what() << "\n";
        return kInternal;
    }
}
