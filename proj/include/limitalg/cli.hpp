// Command-line front end. Subcommands parse tower and presentation documents,
// dispatch to the computation modules, and render JSON reports or DOT text.
//
// Exit codes: 0 for success and "yes"/"pass" decisions, 1 for "no"/"fail"
// decisions, 2 for malformed input, range errors, and violated operation
// preconditions.
#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "limitalg/core.hpp"
#include "limitalg/dot.hpp"
#include "limitalg/ideals.hpp"
#include "limitalg/json_io.hpp"
#include "limitalg/lex.hpp"
#include "limitalg/order.hpp"
#include "limitalg/spectrum.hpp"
#include "limitalg/version.hpp"

namespace limitalg::cli {

namespace detail {

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("parse error in '" + path + "': " + e.what());
    }
}

inline MatrixUnit parse_unit_arg(const std::string& s) {
    int b = 0, r = 0, c = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> b >> c1 >> r >> c2 >> c) || c1 != ',' || c2 != ',' || !is.eof())
        throw InputError("unit argument must be 'block,row,col', got '" + s + "'");
    return {b, r, c};
}

inline std::vector<MatrixUnit> parse_units_arg(const std::string& s) {
    std::vector<MatrixUnit> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ';'))
        if (!item.empty()) out.push_back(parse_unit_arg(item));
    if (out.empty()) throw InputError("expected at least one 'block,row,col' entry");
    return out;
}

inline std::vector<Diag> parse_diags_arg(const std::string& s) {
    std::vector<Diag> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw InputError("projection argument must be 'block:index[,block:index...]'");
        try {
            out.push_back({std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1))});
        } catch (...) {
            throw InputError("projection argument must be 'block:index[,block:index...]'");
        }
    }
    if (out.empty()) throw InputError("expected at least one 'block:index' entry");
    return out;
}

inline json diags_to_json(const std::vector<Diag>& ds) {
    json out = json::array();
    for (const auto& d : ds) out.push_back(diag_to_json(d));
    return out;
}

inline json units_to_json(const std::vector<MatrixUnit>& us) {
    json out = json::array();
    for (const auto& u : us) out.push_back(unit_to_json(u));
    return out;
}

inline json pairs_to_json(const std::set<std::pair<Diag, Diag>>& pairs) {
    json out = json::array();
    for (const auto& [a, b] : pairs) out.push_back(json::array({diag_to_json(a), diag_to_json(b)}));
    return out;
}

inline json presentation_summary(const LinearOrderPresentation& p) {
    return p.empty() ? json{{"segments", json::array()}} : presentation_to_json(p);
}

/// Renders a flat report as "key: value" lines for --format text.
inline std::string report_text(const json& report) {
    std::ostringstream os;
    for (const auto& [k, v] : report.items()) {
        if (k == "tool" || k == "version" || k == "elapsed_ms" || k == "command") continue;
        os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
    return os.str();
}

struct Emitter {
    std::string format = "json";
    std::string out_path;
    std::optional<long> seed;
    std::string command;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::ostream* out = nullptr;

    void write(const std::string& payload) const {
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            if (!f) throw InputError("cannot write '" + out_path + "'");
            f << payload;
        } else {
            *out << payload;
        }
    }

    int report(json body, int code) const {
        body["tool"] = kToolName;
        body["version"] = kVersion;
        body["command"] = command;
        body["elapsed_ms"] = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                                   std::chrono::steady_clock::now() - start)
                                                   .count());
        if (seed) body["seed"] = *seed;
        write(format == "text" ? report_text(body) : canon_dump(body));
        return code;
    }

    int document(const json& doc) const {
        write(canon_dump(doc));
        return 0;
    }

    int text(const std::string& payload) const {
        write(payload);
        return 0;
    }
};

}  // namespace detail

/// Runs one command; arguments exclude the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"workbench for finite-stage limit algebra computations"};
    app.name("limitalg");
    app.require_subcommand(1);

    std::string format = "json", out_path;
    long seed_value = 0;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", out_path, "write output to a file instead of stdout");
    app.add_option("--seed", seed_value, "seed recorded in the report (for scripted reruns)");

    struct {
        std::string input, input2, unit, units, proj, what = "tower", cocycle;
        int depth = 0, level = 1, to = 0, count = 1, horizon = 0;
        std::size_t cap = kDefaultIdealCap;
        bool canonical = false;
    } a;

    auto* build = app.add_subcommand("build", "materialize a tower document to explicit form");
    build->add_option("input", a.input, "tower JSON document")->required();
    build->add_option("--depth", a.depth, "override the document depth (embedding steps)")
        ->check(CLI::Range(1, kMaxTowerDepth));

    auto* validate_cmd = app.add_subcommand("validate", "check all tower invariants");
    validate_cmd->add_option("input", a.input)->required();

    auto* order_cmd = app.add_subcommand("order", "diagonal order of one level");
    order_cmd->add_option("input", a.input)->required();
    order_cmd->add_option("--level", a.level)->check(CLI::PositiveNumber);

    auto* lop = app.add_subcommand("lop-check", "local order preservation of every embedding");
    lop->add_option("input", a.input)->required();

    auto* restr = app.add_subcommand("restrictions", "restriction counts and verdict for a unit");
    restr->add_option("input", a.input)->required();
    restr->add_option("--unit", a.unit, "matrix unit 'block,row,col'")->required();
    restr->add_option("--level", a.level)->check(CLI::PositiveNumber);
    restr->add_option("--to", a.to, "deepest level for the counts")->check(CLI::PositiveNumber);
    restr->add_option("--horizon", a.horizon, "alias for --to")->check(CLI::PositiveNumber);

    auto* minpath = app.add_subcommand("minpath", "minimal subordinate path of a projection");
    minpath->add_option("input", a.input)->required();
    minpath->add_option("--proj", a.proj, "projection 'block:index[,block:index...]'")->required();
    minpath->add_option("--level", a.level)->check(CLI::PositiveNumber);
    minpath->add_option("--depth", a.depth, "deepest level of the path")->check(CLI::PositiveNumber);

    auto* ideals_cmd = app.add_subcommand("ideals", "ideal lattices and systems");
    ideals_cmd->require_subcommand(1);
    auto* ide_enum = ideals_cmd->add_subcommand("enumerate", "all ideals of one level");
    ide_enum->add_option("input", a.input)->required();
    ide_enum->add_option("--level", a.level)->check(CLI::PositiveNumber);
    ide_enum->add_option("--cap", a.cap, "unit-count cap for enumeration")
        ->check(CLI::Range(std::size_t{1}, kHardIdealCap));
    auto add_system_opts = [&](CLI::App* c) {
        c->add_option("input", a.input)->required();
        c->add_option("--seeds", a.units, "units 'b,r,c;b,r,c;...'")->required();
        c->add_option("--level", a.level)->check(CLI::PositiveNumber);
        c->add_option("--depth", a.depth, "deepest level of the system")->check(CLI::PositiveNumber);
    };
    auto* ide_sys = ideals_cmd->add_subcommand("system", "inductive ideal system from seeds");
    add_system_opts(ide_sys);
    auto* ide_cls = ideals_cmd->add_subcommand("classify", "finite/infinite dimension verdict");
    add_system_opts(ide_cls);
    auto* ide_l1 = ideals_cmd->add_subcommand("lemma1", "pAq = pIq witness for finite systems");
    add_system_opts(ide_l1);
    auto* ide_l2 = ideals_cmd->add_subcommand("lemma2", "orthogonal projection witnesses");
    add_system_opts(ide_l2);
    ide_l2->add_option("--count", a.count, "number of witnesses")->check(CLI::PositiveNumber);

    auto* spectrum_cmd = app.add_subcommand("spectrum", "finite-level spectrum of one level");
    spectrum_cmd->add_option("input", a.input)->required();
    spectrum_cmd->add_option("--level", a.level)->check(CLI::PositiveNumber);

    auto* coc = app.add_subcommand("cocycle-check", "verify an integer cocycle on a tower");
    coc->add_option("input", a.input)->required();
    coc->add_option("--cocycle", a.cocycle, "cocycle JSON document");
    coc->add_flag("--canonical", a.canonical, "use the distance labels j-i instead of a file");
    coc->add_option("--depth", a.depth, "levels to check")->check(CLI::PositiveNumber);

    auto* lex_cmd = app.add_subcommand("lex", "lexicographic classification calculus");
    lex_cmd->require_subcommand(1);
    auto* lex_quot = lex_cmd->add_subcommand("quotient", "interval-finiteness quotient");
    lex_quot->add_option("input", a.input)->required();
    auto* lex_inv = lex_cmd->add_subcommand("invariant", "generalized-integer pair per class");
    lex_inv->add_option("input", a.input)->required();
    auto* lex_iso = lex_cmd->add_subcommand("iso", "isomorphism decision");
    lex_iso->add_option("first", a.input)->required();
    lex_iso->add_option("second", a.input2)->required();
    auto* lex_epi = lex_cmd->add_subcommand("epi", "epimorphism decision onto a primitive target");
    lex_epi->add_option("source", a.input)->required();
    lex_epi->add_option("target", a.input2)->required();
    auto* lex_tow = lex_cmd->add_subcommand("tower", "materialize the lexicographic tower");
    lex_tow->add_option("input", a.input)->required();
    lex_tow->add_option("--depth", a.depth, "embedding steps")->check(CLI::Range(1, kMaxTowerDepth));

    auto* dot_cmd = app.add_subcommand("dot", "DOT diagrams of towers, lattices, spectra");
    dot_cmd->add_option("input", a.input)->required();
    dot_cmd->add_option("--what", a.what)->check(CLI::IsMember({"tower", "lattice", "spectrum"}));
    dot_cmd->add_option("--level", a.level)->check(CLI::PositiveNumber);
    dot_cmd->add_option("--cap", a.cap)->check(CLI::Range(std::size_t{1}, kHardIdealCap));

    std::vector<const char*> argv;
    argv.push_back("limitalg");
    for (const auto& s : args) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    detail::Emitter em;
    em.format = format;
    em.out_path = out_path;
    em.out = &out;
    if (app.count("--seed") > 0) em.seed = seed_value;
    {
        std::ostringstream cmd;
        cmd << "limitalg";
        for (const auto& s : args) cmd << " " << s;
        em.command = cmd.str();
    }

    auto load_tower = [&](const std::string& path) { return parse_tower(detail::load_json(path)); };

    try {
        if (build->parsed()) {
            json doc = detail::load_json(a.input);
            if (a.depth > 0) doc["depth"] = a.depth;
            return em.document(tower_to_json(parse_tower(doc)));
        }
        if (validate_cmd->parsed()) {
            json doc = detail::load_json(a.input);
            try {
                const Tower tower = parse_tower(doc);
                const auto rep = validate(tower);
                if (!rep.ok())
                    return em.report({{"verdict", "invalid"}, {"violation", rep.first()},
                                      {"issues", rep.issues}},
                                     1);
                return em.report({{"verdict", "valid"}, {"levels", tower.level_count()}}, 0);
            } catch (const InputError&) {
                throw;
            } catch (const Error& e) {
                return em.report({{"verdict", "invalid"}, {"violation", e.what()}}, 1);
            }
        }
        if (order_cmd->parsed()) {
            const Tower tower = load_tower(a.input);
            const auto rel = diagonal_order(tower.level(a.level), a.level);
            return em.report({{"level", a.level},
                              {"pairs", detail::pairs_to_json(rel.pairs)},
                              {"count", rel.pairs.size()}},
                             0);
        }
        if (lop->parsed()) {
            const Tower tower = load_tower(a.input);
            json per = json::array();
            bool all = true;
            for (int k = 1; k <= tower.depth(); ++k) {
                const auto res = is_locally_order_preserving(tower.embedding(k));
                json item{{"embedding", k}, {"locally_order_preserving", res.preserving}};
                if (!res.preserving) {
                    all = false;
                    item["offending_unit"] = unit_to_json(*res.offending_unit);
                    const auto& ce = *res.counterexample;
                    item["counterexample"] =
                        json{{"domain", json::array({diag_to_json(ce[0]), diag_to_json(ce[1])})},
                             {"image", json::array({diag_to_json(ce[2]), diag_to_json(ce[3])})}};
                }
                per.push_back(std::move(item));
            }
            return em.report({{"verdict", all ? "true" : "false"},
                              {"embeddings", per},
                              {"note", "verdict applies to this presentation only"}},
                             all ? 0 : 1);
        }
        if (restr->parsed()) {
            const Tower tower = load_tower(a.input);
            const MatrixUnit u = detail::parse_unit_arg(a.unit);
            const int to = a.to > 0 ? a.to : (a.horizon > 0 ? a.horizon : tower.level_count());
            json counts = json::object();
            for (int n = a.level; n <= to; ++n)
                counts[std::to_string(n)] = restriction_count(tower, u, a.level, n);
            const auto verdict = has_infinitely_many_restrictions(tower, u, a.level);
            const char* v = verdict.kind == RestrictionVerdict::Kind::Yes  ? "yes"
                            : verdict.kind == RestrictionVerdict::Kind::No ? "no"
                                                                           : "unknown";
            return em.report({{"unit", unit_to_json(u)},
                              {"level", a.level},
                              {"counts", counts},
                              {"verdict", v},
                              {"horizon", verdict.horizon},
                              {"note", verdict.note}},
                             verdict.kind == RestrictionVerdict::Kind::No ? 1 : 0);
        }
        if (minpath->parsed()) {
            const Tower tower = load_tower(a.input);
            const DiagonalProjection p{a.level, detail::parse_diags_arg(a.proj)};
            const int depth = a.depth > 0 ? a.depth : tower.level_count();
            json path = json::array();
            for (const auto& step : minimal_subordinate_path(tower, p, depth))
                path.push_back(json{{"level", step.level}, {"diag", diag_to_json(step.diag)}});
            return em.report({{"path", path}}, 0);
        }
        if (ide_enum->parsed()) {
            const Tower tower = load_tower(a.input);
            const auto lat = enumerate_ideals(tower.level(a.level), a.cap, a.level);
            json ideals = json::array();
            for (const auto& i : lat.ideals) ideals.push_back(detail::units_to_json(i.units));
            json order_pairs = json::array();
            for (const auto& [i, j] : lat.order) order_pairs.push_back(json::array({i, j}));
            return em.report({{"level", a.level},
                              {"count", lat.ideals.size()},
                              {"ideals", ideals},
                              {"order", order_pairs}},
                             0);
        }
        if (ide_sys->parsed() || ide_cls->parsed() || ide_l1->parsed() || ide_l2->parsed()) {
            auto tower = std::make_shared<const Tower>(load_tower(a.input));
            const int depth = a.depth > 0 ? a.depth : tower->level_count();
            const auto sys =
                ideal_system(tower, a.level, detail::parse_units_arg(a.units), depth);
            if (ide_sys->parsed()) {
                json levels = json::object();
                for (int k = sys.first_level; k <= sys.last_level(); ++k)
                    levels[std::to_string(k)] = detail::units_to_json(sys.at(k).units);
                return em.report({{"first_level", sys.first_level}, {"levels", levels}}, 0);
            }
            if (ide_cls->parsed()) {
                const auto v = classify_dimension(sys);
                json body{{"horizon", v.horizon}};
                switch (v.kind) {
                    case DimensionVerdict::Kind::Finite:
                        body["verdict"] = "finite";
                        body["dim"] = v.dim;
                        break;
                    case DimensionVerdict::Kind::Infinite: body["verdict"] = "infinite"; break;
                    case DimensionVerdict::Kind::Unknown: body["verdict"] = "unknown"; break;
                }
                return em.report(std::move(body), 0);
            }
            if (ide_l1->parsed()) {
                const auto w = lemma1_witness(sys);
                return em.report({{"unit", unit_to_json(w.unit)},
                                  {"level", w.level},
                                  {"p", detail::diags_to_json(w.p.indices)},
                                  {"q", detail::diags_to_json(w.q.indices)},
                                  {"verified_to", w.verified_to}},
                                 0);
            }
            const auto w = lemma2_witness(sys, a.count);
            json projections = json::array();
            for (const auto& p : w.projections)
                projections.push_back(detail::diags_to_json(p.indices));
            return em.report({{"side", w.side == WitnessSide::Left ? "left" : "right"},
                              {"level", w.level},
                              {"projections", projections}},
                             0);
        }
        if (spectrum_cmd->parsed()) {
            const Tower tower = load_tower(a.input);
            const auto sp = level_spectrum(tower.level(a.level), a.level);
            return em.report({{"level", a.level},
                              {"pairs", detail::pairs_to_json(sp.pairs)},
                              {"count", sp.pairs.size()},
                              {"antisymmetric", tower.level(a.level).is_triangular()}},
                             0);
        }
        if (coc->parsed()) {
            const Tower tower = load_tower(a.input);
            const int depth = a.depth > 0 ? a.depth : tower.level_count();
            if (a.canonical == a.cocycle.empty())
                throw InputError("cocycle-check needs exactly one of --cocycle or --canonical");
            const CocycleAssignment c =
                a.canonical ? canonical_distance_cocycle(tower, depth)
                            : parse_cocycle(detail::load_json(a.cocycle), tower);
            const auto res = check_cocycle(tower, c, depth);
            if (res.pass) return em.report({{"verdict", "pass"}, {"depth", depth}}, 0);
            json witness{{"level", res.level}, {"reason", res.reason}};
            if (res.source_pair)
                witness["source_pair"] = json::array(
                    {diag_to_json(res.source_pair->first), diag_to_json(res.source_pair->second)});
            if (res.target_pair)
                witness["target_pair"] = json::array(
                    {diag_to_json(res.target_pair->first), diag_to_json(res.target_pair->second)});
            if (res.expected) witness["expected"] = *res.expected;
            if (res.actual) witness["actual"] = *res.actual;
            return em.report({{"verdict", "fail"}, {"witness", witness}}, 1);
        }
        if (lex_quot->parsed() || lex_inv->parsed()) {
            const auto p = presentation_from_json(detail::load_json(a.input));
            const auto q = approx_quotient(p);
            json classes = json::array();
            for (const auto& cls : q.classes)
                classes.push_back(json{{"shape", to_string(cls.cls.shape)},
                                       {"segment", segment_to_json(cls.cls)},
                                       {"invariant", pair_to_json(cls.invariant)}});
            return em.report({{"classes", classes}, {"count", q.classes.size()},
                              {"primitive", is_primitive(p)}},
                             0);
        }
        if (lex_iso->parsed()) {
            const auto p1 = presentation_from_json(detail::load_json(a.input));
            const auto p2 = presentation_from_json(detail::load_json(a.input2));
            const auto d = decide_iso(p1, p2);
            if (!d.isomorphic) return em.report({{"verdict", "no"}, {"reason", d.reason}}, 1);
            json witnesses = json::array();
            for (const auto& w : d.class_witnesses)
                witnesses.push_back(json{{"a", w.a}, {"b", w.b}});
            return em.report({{"verdict", "yes"}, {"witnesses", witnesses}}, 0);
        }
        if (lex_epi->parsed()) {
            const auto src = presentation_from_json(detail::load_json(a.input));
            const auto tgt = presentation_from_json(detail::load_json(a.input2));
            const auto d = decide_epi(src, tgt);
            switch (d.kind) {
                case EpiDecision::Kind::Yes:
                    return em.report(
                        {{"verdict", "yes"},
                         {"witness", json{{"description", d.witness->description},
                                          {"head", detail::presentation_summary(d.witness->head)},
                                          {"tail", detail::presentation_summary(d.witness->tail)}}}},
                        0);
                case EpiDecision::Kind::No:
                    return em.report({{"verdict", "no"}, {"reason", d.reason}}, 1);
                case EpiDecision::Kind::TargetNotPrimitive:
                    return em.report(
                        {{"verdict", "error"}, {"error", "target_not_primitive"},
                         {"reason", d.reason}},
                        2);
            }
        }
        if (lex_tow->parsed()) {
            const auto p = presentation_from_json(detail::load_json(a.input));
            const int depth = a.depth > 0 ? a.depth : kDefaultTowerDepth;
            return em.document(tower_to_json(lex_tower(p, depth)));
        }
        if (dot_cmd->parsed()) {
            const Tower tower = load_tower(a.input);
            if (a.what == "tower") return em.text(emit_dot(tower));
            if (a.what == "lattice")
                return em.text(emit_dot(enumerate_ideals(tower.level(a.level), a.cap, a.level)));
            return em.text(emit_dot(level_spectrum(tower.level(a.level), a.level)));
        }
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace limitalg::cli
