// JSON document formats: tower documents (generator + depth), linear order
// presentations, cocycle label tables, and canonical serialization helpers.
// Emission is canonical (sorted keys, two-space indent, trailing newline), so
// parse/emit round-trips are byte identical.
#pragma once

#include <json.hpp>

#include "limitalg/core.hpp"
#include "limitalg/lex.hpp"
#include "limitalg/spectrum.hpp"

namespace limitalg {

using json = nlohmann::json;

inline std::string canon_dump(const json& j) { return j.dump(2) + "\n"; }

inline json unit_to_json(const MatrixUnit& u) { return json::array({u.block, u.row, u.col}); }

inline MatrixUnit unit_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3)
        throw InputError("matrix unit must be an array [block, row, col]");
    return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

inline json diag_to_json(const Diag& d) { return json::array({d.block, d.index}); }

inline Diag diag_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw InputError("diagonal coordinate must be an array [block, index]");
    return {j[0].get<int>(), j[1].get<int>()};
}

inline Diag diag_from_global(const DigraphAlgebra& alg, int g) {
    int off = 0;
    for (int b = 0; b < static_cast<int>(alg.blocks().size()); ++b) {
        if (g <= off + alg.blocks()[b]) return {b, g - off};
        off += alg.blocks()[b];
    }
    throw InputError("global diagonal index " + std::to_string(g) + " out of range");
}

// ---------------------------------------------------------------------------
// Presentations
// ---------------------------------------------------------------------------

inline json sequence_to_json(const EventuallyPeriodic& s) {
    return json{{"pre", s.pre}, {"period", s.period}};
}

inline EventuallyPeriodic sequence_from_json(const json& j) {
    EventuallyPeriodic out;
    if (j.contains("pre")) out.pre = j.at("pre").get<std::vector<int>>();
    out.period = j.at("period").get<std::vector<int>>();
    return out;
}

inline json segment_to_json(const Segment& s) {
    json j{{"shape", to_string(s.shape)}};
    switch (s.shape) {
        case SegmentShape::Finite: j["nu"] = s.nu; break;
        case SegmentShape::OmegaPlus:
        case SegmentShape::OmegaMinus:
            j["pre"] = s.seq.pre;
            j["period"] = s.seq.period;
            break;
        case SegmentShape::Zeta:
            j["desc"] = sequence_to_json(s.desc);
            j["asc"] = sequence_to_json(s.asc);
            break;
    }
    return j;
}

inline Segment segment_from_json(const json& j) {
    const auto shape = j.at("shape").get<std::string>();
    try {
        if (shape == "finite") return Segment::finite(j.at("nu").get<std::vector<int>>());
        if (shape == "omega_plus") return Segment::omega_plus(sequence_from_json(j));
        if (shape == "omega_minus") return Segment::omega_minus(sequence_from_json(j));
        if (shape == "zeta")
            return Segment::zeta(sequence_from_json(j.at("desc")),
                                 sequence_from_json(j.at("asc")));
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        throw InputError(std::string("bad segment: ") + e.what());
    }
    throw InputError("unknown segment shape '" + shape + "'");
}

inline json presentation_to_json(const LinearOrderPresentation& p) {
    json segs = json::array();
    for (const auto& s : p.segments) segs.push_back(segment_to_json(s));
    return json{{"segments", segs}};
}

inline LinearOrderPresentation presentation_from_json(const json& j) {
    LinearOrderPresentation p;
    if (!j.contains("segments") || !j.at("segments").is_array() || j.at("segments").empty())
        throw InputError("presentation needs a nonempty 'segments' array");
    for (const auto& s : j.at("segments")) p.segments.push_back(segment_from_json(s));
    return p;
}

// ---------------------------------------------------------------------------
// Towers
// ---------------------------------------------------------------------------

inline json spread_to_json(const SpreadTable& spread) {
    json out = json::array();
    for (const auto& [d, targets] : spread) {
        json t = json::array();
        for (const auto& x : targets) t.push_back(diag_to_json(x));
        out.push_back(json{{"source", diag_to_json(d)}, {"targets", t}});
    }
    return out;
}

inline SpreadTable spread_from_json(const json& j) {
    SpreadTable out;
    for (const auto& entry : j) {
        const Diag d = diag_from_json(entry.at("source"));
        std::vector<Diag> targets;
        for (const auto& t : entry.at("targets")) targets.push_back(diag_from_json(t));
        if (!out.emplace(d, std::move(targets)).second)
            throw InputError("duplicate spread source " + to_string(d));
    }
    return out;
}

inline json algebra_to_json(const DigraphAlgebra& alg) {
    json units = json::array();
    for (const auto& u : alg.units()) units.push_back(unit_to_json(u));
    return json{{"blocks", alg.blocks()}, {"units", units}};
}

// Construction errors (violated type invariants) propagate as limitalg::Error
// so `validate` can report them as violations; schema problems are InputError.
inline DigraphAlgebra algebra_from_json(const json& j) {
    std::vector<MatrixUnit> units;
    for (const auto& u : j.at("units")) units.push_back(unit_from_json(u));
    return DigraphAlgebra(j.at("blocks").get<std::vector<int>>(), std::move(units));
}

/// Parses a tower document {"generator": {...}, "depth": n} and materializes
/// the tower. The depth counts embedding steps and defaults to 7 (8 levels).
inline Tower parse_tower(const json& doc) {
    if (!doc.contains("generator")) throw InputError("tower document needs 'generator'");
    const json& gen = doc.at("generator");
    const auto kind = gen.at("kind").get<std::string>();
    int depth = doc.value("depth", kDefaultTowerDepth);
    if (kind == "refinement")
        return build_tower(RefinementRule{gen.value("n", 2), gen.value("m", 2)}, depth);
    if (kind == "standard")
        return build_tower(StandardRule{gen.value("n", 2), gen.value("m", 2)}, depth);
    if (kind == "twist") return build_tower(TwistRule{gen.value("exponent", 1)}, depth);
    if (kind == "lexicographic") {
        const auto p = presentation_from_json(gen.at("presentation"));
        if (gen.contains("enumeration")) {
            Enumeration en;
            for (const auto& e : gen.at("enumeration"))
                en.elements.push_back({e.at(0).get<int>(), e.at(1).get<long>()});
            return lex_tower(p, en, depth);
        }
        return lex_tower(p, depth);
    }
    if (kind == "explicit") {
        ExplicitRule rule;
        for (const auto& l : gen.at("levels")) rule.levels.push_back(algebra_from_json(l));
        if (gen.contains("spreads"))
            for (const auto& s : gen.at("spreads")) rule.spreads.push_back(spread_from_json(s));
        if (gen.contains("periodic"))
            rule.periodic = Periodicity{gen.at("periodic").value("preperiod", 0),
                                        gen.at("periodic").value("period", 1)};
        if (doc.contains("depth") && depth != static_cast<int>(rule.levels.size()) - 1)
            throw InputError("explicit tower depth must equal levels - 1");
        return build_tower(rule, static_cast<int>(rule.levels.size()) - 1);
    }
    throw InputError("unknown generator kind '" + kind + "'");
}

/// Canonical explicit-form document for a materialized tower.
inline json tower_to_json(const Tower& tower) {
    json levels = json::array();
    for (int k = 1; k <= tower.level_count(); ++k)
        levels.push_back(algebra_to_json(tower.level(k)));
    json spreads = json::array();
    for (int k = 1; k <= tower.depth(); ++k)
        spreads.push_back(spread_to_json(tower.embedding(k).spread()));
    json gen{{"kind", "explicit"}, {"levels", levels}, {"spreads", spreads}};
    if (tower.generator().periodicity)
        gen["periodic"] = json{{"preperiod", tower.generator().periodicity->preperiod},
                               {"period", tower.generator().periodicity->period}};
    return json{{"depth", tower.depth()}, {"generator", gen}};
}

// ---------------------------------------------------------------------------
// Cocycles
// ---------------------------------------------------------------------------

/// Cocycle documents label spectrum pairs per level:
/// {"1": {"1,2": 1, ...}, "2": {...}} with 1-based global diagonal indices.
inline CocycleAssignment parse_cocycle(const json& doc, const Tower& tower) {
    CocycleAssignment c;
    for (const auto& [level_key, table] : doc.items()) {
        int level = 0;
        try {
            level = std::stoi(level_key);
        } catch (...) {
            throw InputError("cocycle level key '" + level_key + "' is not an integer");
        }
        if (level < 1 || level > tower.level_count())
            throw InputError("cocycle level " + level_key + " out of range");
        const auto& alg = tower.level(level);
        for (const auto& [pair_key, value] : table.items()) {
            const auto comma = pair_key.find(',');
            if (comma == std::string::npos)
                throw InputError("cocycle pair key '" + pair_key + "' must be 'i,j'");
            int gi = 0, gj = 0;
            try {
                gi = std::stoi(pair_key.substr(0, comma));
                gj = std::stoi(pair_key.substr(comma + 1));
            } catch (...) {
                throw InputError("cocycle pair key '" + pair_key + "' must be 'i,j'");
            }
            c.set(level, {diag_from_global(alg, gi), diag_from_global(alg, gj)},
                  value.get<long>());
        }
    }
    return c;
}

inline json cocycle_to_json(const CocycleAssignment& c, const Tower& tower) {
    json doc = json::object();
    for (const auto& [level, table] : c.labels()) {
        json t = json::object();
        const auto& alg = tower.level(level);
        for (const auto& [pair, v] : table) {
            const std::string key = std::to_string(alg.global_index(pair.first)) + "," +
                                    std::to_string(alg.global_index(pair.second));
            t[key] = v;
        }
        doc[std::to_string(level)] = t;
    }
    return doc;
}

inline json pair_to_json(const GIPair& p) {
    auto sn = [](const Supernatural& s) {
        json out = json::array();
        for (const auto& [prime, e] : s.exponents())
            out.push_back(json::array(
                {prime, e.is_infinite() ? json("inf") : json(e.value())}));
        return out;
    };
    return json{{"r", sn(p.r)}, {"s", sn(p.s)}, {"text", p.to_string()}};
}

}  // namespace limitalg
