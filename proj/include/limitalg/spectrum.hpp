// Finite-level spectra (the fundamental relation restricted to a level),
// graphs of normalizing elements, spectrum images under embeddings, and
// integer cocycle verification on towers.
#pragma once

#include <optional>

#include "limitalg/core.hpp"
#include "limitalg/order.hpp"

namespace limitalg {

/// The binary relation on minimal diagonal coordinates realized by the matrix
/// units of a level. Reflexive and transitive; antisymmetric iff the level is
/// triangular.
struct LevelSpectrum {
    int level = 1;
    std::set<std::pair<Diag, Diag>> pairs;

    bool contains(const Diag& a, const Diag& b) const { return pairs.count({a, b}) != 0; }
};

inline LevelSpectrum level_spectrum(const DigraphAlgebra& alg, int level = 1) {
    LevelSpectrum sp;
    sp.level = level;
    for (const auto& u : alg.units())
        sp.pairs.insert({{u.block, u.row}, {u.block, u.col}});
    return sp;
}

/// The subset of spectrum pairs realized by one normalizing element.
struct UnitGraph {
    int level = 1;
    std::set<std::pair<Diag, Diag>> pairs;
};

inline UnitGraph unit_graph(const DigraphAlgebra& alg, const PartialIsometryElement& w) {
    UnitGraph g;
    g.level = w.level();
    for (const auto& u : w.units()) {
        if (!alg.contains(u))
            throw Error("unit_graph: " + to_string(u) + " not in the algebra");
        g.pairs.insert({{u.block, u.row}, {u.block, u.col}});
    }
    return g;
}

/// Positionwise spread image of a spectrum pair at the target level.
inline std::vector<std::pair<Diag, Diag>> embed_spectrum(const RegularEmbedding& emb,
                                                         const std::pair<Diag, Diag>& pair) {
    const auto source_sp = level_spectrum(emb.source());
    if (!source_sp.contains(pair.first, pair.second))
        throw Error("embed_spectrum: pair not in the source spectrum");
    const auto& rows = emb.spread_of(pair.first);
    const auto& cols = emb.spread_of(pair.second);
    std::vector<std::pair<Diag, Diag>> out;
    for (std::size_t t = 0; t < rows.size(); ++t) out.push_back({rows[t], cols[t]});
    std::sort(out.begin(), out.end());
    return out;
}

/// Integer labels on spectrum pairs, one table per level (1-based).
class CocycleAssignment {
public:
    using Pair = std::pair<Diag, Diag>;

    void set(int level, const Pair& pair, long value) { labels_[level][pair] = value; }

    std::optional<long> at(int level, const Pair& pair) const {
        auto lit = labels_.find(level);
        if (lit == labels_.end()) return std::nullopt;
        auto pit = lit->second.find(pair);
        if (pit == lit->second.end()) return std::nullopt;
        return pit->second;
    }

    const std::map<int, std::map<Pair, long>>& labels() const { return labels_; }

private:
    std::map<int, std::map<Pair, long>> labels_;
};

struct CocycleCheckResult {
    bool pass = true;
    std::string reason;
    int level = 0;                                   // level of the failure, if any
    std::optional<std::pair<Diag, Diag>> source_pair;
    std::optional<std::pair<Diag, Diag>> target_pair;
    std::optional<long> expected;
    std::optional<long> actual;
};

/// Verifies additivity at each level, nonnegativity with consistent reverse
/// labels, and exact label transport under every embedding up to `depth`
/// levels. Missing labels are an error, not a failure.
inline CocycleCheckResult check_cocycle(const Tower& tower, const CocycleAssignment& c,
                                        int depth) {
    if (depth < 1 || depth > tower.level_count())
        throw InputError("check_cocycle: depth out of range");
    auto label = [&](int level, const std::pair<Diag, Diag>& p) {
        auto v = c.at(level, p);
        if (!v)
            throw Error("check_cocycle: missing label for pair (" + to_string(p.first) + ")->(" +
                        to_string(p.second) + ") at level " + std::to_string(level));
        return *v;
    };
    for (int k = 1; k <= depth; ++k) {
        const auto sp = level_spectrum(tower.level(k), k);
        for (const auto& p : sp.pairs) {
            const long v = label(k, p);
            if (v < 0)
                return {false, "negative label on a spectrum pair", k, p, std::nullopt, 0, v};
            if (sp.contains(p.second, p.first) && p.first != p.second) {
                const long w = label(k, {p.second, p.first});
                if (w != -v)
                    return {false, "reverse pair label is not the negative", k, p,
                            std::pair<Diag, Diag>{p.second, p.first}, -v, w};
            }
        }
        for (const auto& p : sp.pairs) {
            for (const auto& q : sp.pairs) {
                if (p.second == q.first && sp.contains(p.first, q.second)) {
                    const long sum = label(k, p) + label(k, q);
                    const long direct = label(k, {p.first, q.second});
                    if (sum != direct)
                        return {false, "additivity fails on a composable pair", k, p,
                                std::pair<Diag, Diag>{p.first, q.second}, direct, sum};
                }
            }
        }
    }
    for (int k = 1; k < depth; ++k) {
        const auto sp = level_spectrum(tower.level(k), k);
        for (const auto& p : sp.pairs) {
            const long v = label(k, p);
            for (const auto& img : embed_spectrum(tower.embedding(k), p)) {
                const long w = label(k + 1, img);
                if (w != v)
                    return {false, "label not preserved under the embedding", k, p, img, v, w};
            }
        }
    }
    return {};
}

/// The superdiagonal-distance labeling c(i,j) = j - i on one T_n level.
inline CocycleAssignment canonical_distance_cocycle(const DigraphAlgebra& alg, int level = 1) {
    if (alg.blocks().size() != 1)
        throw Error("canonical_distance_cocycle requires a single-block level");
    CocycleAssignment c;
    for (const auto& u : alg.units())
        c.set(level, {{u.block, u.row}, {u.block, u.col}}, u.col - u.row);
    return c;
}

/// Distance labels on every level of a tower up to `depth` levels.
inline CocycleAssignment canonical_distance_cocycle(const Tower& tower, int depth) {
    if (depth < 1 || depth > tower.level_count())
        throw InputError("canonical_distance_cocycle: depth out of range");
    CocycleAssignment c;
    for (int k = 1; k <= depth; ++k) {
        const auto one = canonical_distance_cocycle(tower.level(k), k);
        for (const auto& [lvl, table] : one.labels())
            for (const auto& [pair, v] : table) c.set(lvl, pair, v);
    }
    return c;
}

}  // namespace limitalg
