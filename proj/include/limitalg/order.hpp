// Diagonal order on minimal diagonal projections, order preservation of
// normalizing partial isometries, local order preservation of embeddings,
// restriction analysis, and minimal subordinate paths.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "limitalg/core.hpp"

namespace limitalg {

/// A diagonal projection given by its set of minimal diagonal coordinates.
struct DiagonalProjection {
    int level = 1;
    std::vector<Diag> indices;
};

/// A 0/1 sum of matrix units with pairwise distinct rows and pairwise
/// distinct columns, i.e. a partial isometry normalizing the diagonal.
class PartialIsometryElement {
public:
    PartialIsometryElement(int level, std::vector<MatrixUnit> units)
        : level_(level), units_(std::move(units)) {
        detail::sort_unique(units_);
        std::set<Diag> rows, cols;
        for (const auto& u : units_) {
            if (!rows.insert({u.block, u.row}).second)
                throw Error("partial isometry has repeated row coordinate in " + to_string(u));
            if (!cols.insert({u.block, u.col}).second)
                throw Error("partial isometry has repeated column coordinate in " + to_string(u));
        }
    }

    int level() const { return level_; }
    const std::vector<MatrixUnit>& units() const { return units_; }

private:
    int level_;
    std::vector<MatrixUnit> units_;
};

/// The relation p <= q between minimal diagonal projections realized by a
/// normalizing partial isometry; at finite level, by a single matrix unit.
struct DiagonalOrderRelation {
    int level = 1;
    std::set<std::pair<Diag, Diag>> pairs;

    bool leq(const Diag& a, const Diag& b) const { return pairs.count({a, b}) != 0; }
};

inline DiagonalOrderRelation diagonal_order(const DigraphAlgebra& alg, int level = 1) {
    if (!alg.is_triangular())
        throw Error("diagonal_order requires a triangular algebra");
    DiagonalOrderRelation rel;
    rel.level = level;
    for (const auto& u : alg.units())
        rel.pairs.insert({{u.block, u.row}, {u.block, u.col}});
    return rel;
}

/// The partial map x -> w*xw on minimal diagonal projections: row(u) -> col(u)
/// for each unit of w. Domain = rows of w, range = columns of w.
using InducedMap = std::map<Diag, Diag>;

inline InducedMap induced_map(const DigraphAlgebra& alg, const PartialIsometryElement& w) {
    InducedMap map;
    for (const auto& u : w.units()) {
        if (!alg.contains_diag({u.block, u.row}) || !alg.contains_diag({u.block, u.col}))
            throw Error("partial isometry coordinates out of range for the level");
        map[{u.block, u.row}] = {u.block, u.col};
    }
    return map;
}

/// Counterexample to monotonicity: (x, y, f(x), f(y)) with x <= y, f(x) !<= f(y).
struct OrderPreservation {
    bool preserving = true;
    std::optional<std::array<Diag, 4>> counterexample;
};

namespace detail {

inline OrderPreservation check_monotone(const DiagonalOrderRelation& order,
                                        const InducedMap& map) {
    for (const auto& [x, fx] : map) {
        for (const auto& [y, fy] : map) {
            if (order.leq(x, y) && !order.leq(fx, fy))
                return {false, std::array<Diag, 4>{x, y, fx, fy}};
        }
    }
    return {};
}

}  // namespace detail

inline OrderPreservation is_order_preserving(const DigraphAlgebra& alg,
                                             const PartialIsometryElement& w) {
    for (const auto& u : w.units())
        if (!alg.contains(u))
            throw Error("is_order_preserving: " + to_string(u) + " not in the algebra");
    return detail::check_monotone(diagonal_order(alg, w.level()), induced_map(alg, w));
}

struct LocalOrderPreservation {
    bool preserving = true;
    std::optional<MatrixUnit> offending_unit;
    std::optional<std::array<Diag, 4>> counterexample;
};

/// True iff the image of every source matrix unit is an order preserving
/// element of the target. A "false" verdict applies to this presentation
/// only; other presentations of the same limit may still be order preserving.
inline LocalOrderPreservation is_locally_order_preserving(const RegularEmbedding& emb) {
    if (!emb.target().is_triangular())
        throw Error("is_locally_order_preserving requires a triangular target");
    const auto target_order = diagonal_order(emb.target());
    for (const auto& u : emb.source().units()) {
        const PartialIsometryElement w(1, emb.image_units(u));
        const auto res = detail::check_monotone(target_order, induced_map(emb.target(), w));
        if (!res.preserving) return {false, u, res.counterexample};
    }
    return {};
}

/// Number of summand units in the composed image of u at level `to_level`.
inline int restriction_count(const Tower& tower, const MatrixUnit& u, int level, int to_level) {
    if (level < 1 || to_level < level || to_level > tower.level_count())
        throw InputError("restriction_count: levels out of range");
    return static_cast<int>(tower.image_at(u, level, to_level).size());
}

struct RestrictionVerdict {
    enum class Kind { Yes, No, Unknown } kind = Kind::Unknown;
    int horizon = 0;  // levels examined when the verdict is horizon-bounded
    std::string note;
};

/// Exact for towers with an eventually periodic generator: "yes" iff the
/// restriction count strictly increases over one full period. Towers without
/// periodicity metadata get a horizon-bounded "unknown".
inline RestrictionVerdict has_infinitely_many_restrictions(const Tower& tower,
                                                           const MatrixUnit& u, int level) {
    if (level < 1 || level > tower.level_count())
        throw InputError("has_infinitely_many_restrictions: level out of range");
    if (!tower.level(level).contains(u))
        throw Error("unit " + to_string(u) + " not at level " + std::to_string(level));
    const auto& gen = tower.generator();
    if (gen.per_step_growth) {
        return {RestrictionVerdict::Kind::Yes, tower.level_count(),
                "generator multiplies every restriction count by >= 2 per step"};
    }
    if (gen.periodicity) {
        const int start = std::max(level, gen.periodicity->preperiod + 1);
        const int end = start + gen.periodicity->period;
        if (end <= tower.level_count()) {
            const int c0 = restriction_count(tower, u, level, start);
            const int c1 = restriction_count(tower, u, level, end);
            if (c1 > c0)
                return {RestrictionVerdict::Kind::Yes, end,
                        "restriction count strictly increases over one period"};
            return {RestrictionVerdict::Kind::No, end,
                    "restriction count is constant over one period"};
        }
    }
    const int horizon = tower.level_count();
    const int c = restriction_count(tower, u, level, horizon);
    return {RestrictionVerdict::Kind::Unknown, horizon,
            "no periodicity metadata; count " + std::to_string(c) + " at the horizon"};
}

struct SubordinatePathStep {
    int level = 1;
    Diag diag;
};

/// From the image of p at each level m, takes the least diagonal summand in
/// the diagonal order and verifies each step subordinates the previous one.
/// Refuses levels whose summand sets contain incomparable minima.
inline std::vector<SubordinatePathStep> minimal_subordinate_path(const Tower& tower,
                                                                 const DiagonalProjection& p,
                                                                 int depth) {
    if (p.level < 1 || p.level > tower.level_count() || depth < p.level ||
        depth > tower.level_count())
        throw InputError("minimal_subordinate_path: levels out of range");
    if (p.indices.empty()) throw Error("minimal_subordinate_path: zero projection");
    for (const auto& d : p.indices)
        if (!tower.level(p.level).contains_diag(d))
            throw Error("projection coordinate " + to_string(d) + " out of range");

    std::vector<SubordinatePathStep> path;
    for (int m = p.level; m <= depth; ++m) {
        const auto order = diagonal_order(tower.level(m), m);
        const auto x = tower.diag_image_at(p.indices, p.level, m);
        Diag least = x.front();
        for (const auto& d : x) {
            if (order.leq(d, least)) {
                least = d;
            } else if (!order.leq(least, d)) {
                throw Error("incomparable minima at level " + std::to_string(m) +
                            " (non-triangular block structure)");
            }
        }
        for (const auto& d : x) {
            if (!order.leq(least, d))
                throw Error("incomparable minima at level " + std::to_string(m) +
                            " (non-triangular block structure)");
        }
        if (!path.empty()) {
            const auto& prev = path.back();
            const auto sub = tower.diag_image_at({prev.diag}, prev.level, m);
            if (!std::binary_search(sub.begin(), sub.end(), least))
                throw Error("minimal summand at level " + std::to_string(m) +
                            " is not a subordinate of the previous step");
        }
        path.push_back({m, least});
    }
    return path;
}

}  // namespace limitalg
