// Finite-dimensional digraph algebras, matrix-unit arithmetic, regular
// *-extendible embeddings, and towers built from generator rules.
//
// Conventions used throughout the library:
//   - block indices are 0-based,
//   - diagonal indices (row/col) are 1-based within their block,
//   - tower levels are 1-based.
#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace limitalg {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input documents or out-of-range arguments (CLI exit code 2).
class InputError : public Error {
public:
    using Error::Error;
};

/// A single matrix unit e_{row,col} inside one block of a level.
struct MatrixUnit {
    int block = 0;  // 0-based
    int row = 1;    // 1-based within block
    int col = 1;    // 1-based within block

    bool is_diagonal() const { return row == col; }
    auto operator<=>(const MatrixUnit&) const = default;
};

/// Coordinate of a minimal diagonal projection: (block, index).
struct Diag {
    int block = 0;
    int index = 1;

    auto operator<=>(const Diag&) const = default;
};

inline std::string to_string(const MatrixUnit& u) {
    std::ostringstream os;
    os << "(" << u.block << "," << u.row << "," << u.col << ")";
    return os.str();
}

inline std::string to_string(const Diag& d) {
    std::ostringstream os;
    os << d.block << ":" << d.index;
    return os.str();
}

namespace detail {

inline void sort_unique(std::vector<MatrixUnit>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline void sort_unique(std::vector<Diag>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

/// Structural findings for an algebra/embedding/tower; empty means valid.
/// Triangularity findings are reported alongside structural ones so that
/// `validate` can name the first broken invariant.
struct ValidationReport {
    std::vector<std::string> issues;

    bool ok() const { return issues.empty(); }
    std::string first() const { return issues.empty() ? std::string("ok") : issues.front(); }
};

/// Checks the DigraphAlgebra invariants on raw data. `require_triangular`
/// adds the antisymmetry check (reported as a triangularity violation).
/// The relation is held as per-block bitset rows so transitivity costs
/// O(units * n/64) rather than O(units^2).
inline ValidationReport validate_algebra_data(const std::vector<int>& blocks,
                                              const std::vector<MatrixUnit>& units,
                                              bool check_triangular = true) {
    ValidationReport rep;
    if (blocks.empty()) {
        rep.issues.push_back("algebra has no blocks");
        return rep;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b] < 1) {
            rep.issues.push_back("block " + std::to_string(b) + " has non-positive size");
            return rep;
        }
    }
    for (const auto& u : units) {
        if (u.block < 0 || u.block >= static_cast<int>(blocks.size()) || u.row < 1 ||
            u.col < 1 || u.row > blocks[u.block] || u.col > blocks[u.block]) {
            rep.issues.push_back("unit " + to_string(u) + " is out of range");
            return rep;
        }
    }
    // rows[b][i] = bitset of columns j with (b, i+1, j+1) present.
    std::vector<std::vector<std::vector<std::uint64_t>>> rows(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const std::size_t words = (static_cast<std::size_t>(blocks[b]) + 63) / 64;
        rows[b].assign(static_cast<std::size_t>(blocks[b]),
                       std::vector<std::uint64_t>(words, 0));
    }
    auto bit = [&](const MatrixUnit& u) -> std::uint64_t& {
        return rows[static_cast<std::size_t>(u.block)][static_cast<std::size_t>(u.row) - 1]
                   [static_cast<std::size_t>(u.col - 1) / 64];
    };
    auto has = [&](int b, int i, int j) {
        return (rows[static_cast<std::size_t>(b)][static_cast<std::size_t>(i) - 1]
                    [static_cast<std::size_t>(j - 1) / 64] >>
                ((j - 1) % 64)) &
               1u;
    };
    for (const auto& u : units) bit(u) |= (std::uint64_t{1} << ((u.col - 1) % 64));
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (int i = 1; i <= blocks[b]; ++i)
            if (!has(static_cast<int>(b), i, i)) {
                rep.issues.push_back("missing diagonal unit " +
                                     to_string(MatrixUnit{static_cast<int>(b), i, i}));
                return rep;
            }
    // Transitive iff for every unit (b,i,j) the row of j is contained in the row of i.
    for (const auto& u : units) {
        if (u.row == u.col) continue;
        const auto& ri = rows[static_cast<std::size_t>(u.block)]
                             [static_cast<std::size_t>(u.row) - 1];
        const auto& rj = rows[static_cast<std::size_t>(u.block)]
                             [static_cast<std::size_t>(u.col) - 1];
        for (std::size_t w = 0; w < ri.size(); ++w) {
            if ((rj[w] & ~ri[w]) != 0) {
                rep.issues.push_back("transitivity violation: products of " + to_string(u) +
                                     " leave the unit set");
                return rep;
            }
        }
    }
    if (check_triangular) {
        for (const auto& u : units) {
            if (u.row != u.col && has(u.block, u.col, u.row)) {
                rep.issues.push_back("triangularity violation: both " + to_string(u) +
                                     " and its transpose are present");
                return rep;
            }
        }
    }
    return rep;
}

/// One finite level: block sizes plus the matrix units spanning the algebra.
/// The unit set is reflexive (all diagonal units) and transitive; the
/// triangular flag is derived from antisymmetry. Immutable after construction.
class DigraphAlgebra {
public:
    DigraphAlgebra(std::vector<int> blocks, std::vector<MatrixUnit> units)
        : blocks_(std::move(blocks)), units_(std::move(units)) {
        detail::sort_unique(units_);
        auto rep = validate_algebra_data(blocks_, units_, /*check_triangular=*/false);
        if (!rep.ok()) throw Error("invalid digraph algebra: " + rep.first());
        triangular_ = true;
        for (const auto& u : units_) {
            if (u.row != u.col && contains({u.block, u.col, u.row})) {
                triangular_ = false;
                break;
            }
        }
    }

    const std::vector<int>& blocks() const { return blocks_; }
    const std::vector<MatrixUnit>& units() const { return units_; }
    bool is_triangular() const { return triangular_; }
    std::size_t dimension() const { return units_.size(); }

    int block_size(int b) const {
        if (b < 0 || b >= static_cast<int>(blocks_.size()))
            throw Error("block index out of range");
        return blocks_[b];
    }

    /// Total number of minimal diagonal projections across blocks.
    int diagonal_size() const {
        int n = 0;
        for (int s : blocks_) n += s;
        return n;
    }

    bool contains(const MatrixUnit& u) const {
        return std::binary_search(units_.begin(), units_.end(), u);
    }

    bool contains_diag(const Diag& d) const {
        return d.block >= 0 && d.block < static_cast<int>(blocks_.size()) && d.index >= 1 &&
               d.index <= blocks_[d.block];
    }

    std::vector<Diag> diagonal() const {
        std::vector<Diag> out;
        for (int b = 0; b < static_cast<int>(blocks_.size()); ++b)
            for (int i = 1; i <= blocks_[b]; ++i) out.push_back({b, i});
        return out;
    }

    /// Flattened 1-based position of a diagonal coordinate (block offsets summed).
    int global_index(const Diag& d) const {
        int off = 0;
        for (int b = 0; b < d.block; ++b) off += blocks_[b];
        return off + d.index;
    }

    bool operator==(const DigraphAlgebra& o) const {
        return blocks_ == o.blocks_ && units_ == o.units_;
    }

private:
    std::vector<int> blocks_;
    std::vector<MatrixUnit> units_;
    bool triangular_ = true;
};

/// The n-by-n upper triangular matrix algebra as a single-block level.
inline DigraphAlgebra make_upper_triangular(int n) {
    if (n < 1) throw InputError("make_upper_triangular requires n >= 1");
    std::vector<MatrixUnit> units;
    units.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) units.push_back({0, i, j});
    return DigraphAlgebra({n}, std::move(units));
}

/// Concatenates levels block-wise, re-indexing units by block offset.
inline DigraphAlgebra direct_sum(const std::vector<DigraphAlgebra>& parts) {
    if (parts.empty()) throw InputError("direct_sum of an empty list");
    std::vector<int> blocks;
    std::vector<MatrixUnit> units;
    int offset = 0;
    for (const auto& p : parts) {
        for (int s : p.blocks()) blocks.push_back(s);
        for (const auto& u : p.units())
            units.push_back({u.block + offset, u.row, u.col});
        offset += static_cast<int>(p.blocks().size());
    }
    return DigraphAlgebra(std::move(blocks), std::move(units));
}

/// Product of two matrix units of `alg`; nullopt encodes the zero product.
inline std::optional<MatrixUnit> multiply_units(const DigraphAlgebra& alg, const MatrixUnit& u,
                                                const MatrixUnit& v) {
    if (!alg.contains(u)) throw Error("multiply_units: " + to_string(u) + " not in algebra");
    if (!alg.contains(v)) throw Error("multiply_units: " + to_string(v) + " not in algebra");
    if (u.block != v.block || u.col != v.row) return std::nullopt;
    return MatrixUnit{u.block, u.row, v.col};
}

using SpreadTable = std::map<Diag, std::vector<Diag>>;

/// Checks spread totality, disjointness, unitality and position/block
/// alignment against the two levels. Regularity (unit images landing in the
/// target unit set) is checked by the RegularEmbedding constructor, which
/// needs apply logic.
inline ValidationReport validate_spread(const DigraphAlgebra& source,
                                        const DigraphAlgebra& target,
                                        const SpreadTable& spread) {
    ValidationReport rep;
    std::set<Diag> seen;
    for (const auto& d : source.diagonal()) {
        auto it = spread.find(d);
        if (it == spread.end() || it->second.empty()) {
            rep.issues.push_back("spread missing for source diagonal " + to_string(d));
            return rep;
        }
        for (const auto& t : it->second) {
            if (!target.contains_diag(t)) {
                rep.issues.push_back("spread target " + to_string(t) + " out of range");
                return rep;
            }
            if (!seen.insert(t).second) {
                rep.issues.push_back("spread targets overlap at " + to_string(t));
                return rep;
            }
        }
    }
    for (const auto& [d, tgts] : spread) {
        if (!source.contains_diag(d)) {
            rep.issues.push_back("spread source " + to_string(d) + " out of range");
            return rep;
        }
        (void)tgts;
    }
    if (static_cast<int>(seen.size()) != target.diagonal_size())
        rep.issues.push_back("spread images do not cover the target diagonal");
    // Alignment within each source block: equal multiplicity and matching
    // target block at every position, so unit images are well-defined sums.
    for (int b = 0; b < static_cast<int>(source.blocks().size()); ++b) {
        const auto& first = spread.at({b, 1});
        for (int i = 2; i <= source.blocks()[b]; ++i) {
            const auto& cur = spread.at({b, i});
            if (cur.size() != first.size()) {
                rep.issues.push_back("unequal multiplicity within source block " +
                                     std::to_string(b));
                return rep;
            }
            for (std::size_t t = 0; t < cur.size(); ++t) {
                if (cur[t].block != first[t].block) {
                    rep.issues.push_back("spread positions of block " + std::to_string(b) +
                                         " are not block-aligned");
                    return rep;
                }
            }
        }
    }
    return rep;
}

/// A unital *-extendible regular embedding between two levels, encoded by the
/// spread of every source diagonal coordinate. Construction is strict: any
/// invariant failure rejects the embedding.
class RegularEmbedding {
public:
    RegularEmbedding(DigraphAlgebra source, DigraphAlgebra target, SpreadTable spread)
        : source_(std::move(source)), target_(std::move(target)), spread_(std::move(spread)) {
        auto rep = validate_spread(source_, target_, spread_);
        if (!rep.ok()) throw Error("invalid embedding: " + rep.first());
        for (const auto& u : source_.units()) {
            for (const auto& img : image_units(u)) {
                if (!target_.contains(img))
                    throw Error("embedding is not regular: image of " + to_string(u) +
                                " contains " + to_string(img) + " outside the target");
            }
        }
    }

    const DigraphAlgebra& source() const { return source_; }
    const DigraphAlgebra& target() const { return target_; }
    const SpreadTable& spread() const { return spread_; }

    const std::vector<Diag>& spread_of(const Diag& d) const {
        auto it = spread_.find(d);
        if (it == spread_.end()) throw Error("no spread for " + to_string(d));
        return it->second;
    }

    std::size_t multiplicity(int source_block) const {
        return spread_of({source_block, 1}).size();
    }

    /// Image of a matrix unit as a set of target units, paired positionwise.
    std::vector<MatrixUnit> image_units(const MatrixUnit& u) const {
        const auto& rows = spread_of({u.block, u.row});
        const auto& cols = spread_of({u.block, u.col});
        std::vector<MatrixUnit> out;
        out.reserve(rows.size());
        for (std::size_t t = 0; t < rows.size(); ++t)
            out.push_back({rows[t].block, rows[t].index, cols[t].index});
        detail::sort_unique(out);
        return out;
    }

    bool operator==(const RegularEmbedding& o) const {
        return source_ == o.source_ && target_ == o.target_ && spread_ == o.spread_;
    }

private:
    DigraphAlgebra source_;
    DigraphAlgebra target_;
    SpreadTable spread_;
};

inline std::vector<MatrixUnit> apply_embedding(const RegularEmbedding& emb, const MatrixUnit& u) {
    if (!emb.source().contains(u))
        throw Error("apply_embedding: " + to_string(u) + " not in the source algebra");
    return emb.image_units(u);
}

inline RegularEmbedding identity_embedding(const DigraphAlgebra& alg) {
    SpreadTable spread;
    for (const auto& d : alg.diagonal()) spread[d] = {d};
    return RegularEmbedding(alg, alg, std::move(spread));
}

/// T_n -> T_{nm}: e_{ij} maps to the m-fold block-constant sum; the spread of
/// i is the consecutive run (m(i-1)+1, ..., mi).
inline RegularEmbedding refinement_embedding(int n, int m) {
    if (n < 1) throw InputError("refinement_embedding requires n >= 1");
    if (m < 2) throw InputError("refinement_embedding requires multiplicity >= 2");
    SpreadTable spread;
    for (int i = 1; i <= n; ++i) {
        std::vector<Diag> t;
        for (int k = 1; k <= m; ++k) t.push_back({0, m * (i - 1) + k});
        spread[{0, i}] = std::move(t);
    }
    return RegularEmbedding(make_upper_triangular(n), make_upper_triangular(n * m),
                            std::move(spread));
}

/// T_n -> T_{nm}: the spread of i is (i, i+n, ..., i+(m-1)n).
inline RegularEmbedding standard_embedding(int n, int m) {
    if (n < 1) throw InputError("standard_embedding requires n >= 1");
    if (m < 2) throw InputError("standard_embedding requires multiplicity >= 2");
    SpreadTable spread;
    for (int i = 1; i <= n; ++i) {
        std::vector<Diag> t;
        for (int k = 0; k < m; ++k) t.push_back({0, i + k * n});
        spread[{0, i}] = std::move(t);
    }
    return RegularEmbedding(make_upper_triangular(n), make_upper_triangular(n * m),
                            std::move(spread));
}

/// T_{2^k} -> T_{2^{k+1}}: multiplicity-2 refinement followed by the
/// permutation interchanging the last two minimal diagonal projections.
inline RegularEmbedding twist_embedding(int exponent) {
    if (exponent < 1) throw InputError("twist_embedding requires exponent >= 1");
    if (exponent > 20) throw InputError("twist_embedding exponent too large");
    const int n = 1 << exponent;
    const int N = 2 * n;
    auto swap_last = [N](int i) {
        if (i == N - 1) return N;
        if (i == N) return N - 1;
        return i;
    };
    SpreadTable spread;
    for (int i = 1; i <= n; ++i)
        spread[{0, i}] = {{0, swap_last(2 * i - 1)}, {0, swap_last(2 * i)}};
    return RegularEmbedding(make_upper_triangular(n), make_upper_triangular(N),
                            std::move(spread));
}

/// Spread substitution: position-major splice of e2's spreads into e1's.
inline RegularEmbedding compose_embeddings(const RegularEmbedding& e1,
                                           const RegularEmbedding& e2) {
    if (!(e1.target() == e2.source()))
        throw Error("compose_embeddings: target of first != source of second");
    SpreadTable spread;
    for (const auto& [d, mids] : e1.spread()) {
        std::vector<Diag> out;
        for (const auto& mid : mids) {
            const auto& t = e2.spread_of(mid);
            out.insert(out.end(), t.begin(), t.end());
        }
        spread[d] = std::move(out);
    }
    return RegularEmbedding(e1.source(), e2.target(), std::move(spread));
}

/// Asserted repetition of an explicit tower: for levels past `preperiod`,
/// level k+period repeats level k (and likewise the embeddings).
struct Periodicity {
    int preperiod = 0;  // number of leading levels before the periodic regime
    int period = 1;     // in levels

    auto operator<=>(const Periodicity&) const = default;
};

enum class GeneratorKind { Refinement, Standard, Twist, Lexicographic, Explicit };

inline std::string to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::Refinement: return "refinement";
        case GeneratorKind::Standard: return "standard";
        case GeneratorKind::Twist: return "twist";
        case GeneratorKind::Lexicographic: return "lexicographic";
        case GeneratorKind::Explicit: return "explicit";
    }
    return "?";
}

/// Metadata the analysis passes need from the rule that built a tower.
/// `per_step_growth` records that the rule multiplies every unit's
/// restriction count by >= 2 at every step beyond the materialized horizon.
/// `periodicity` asserts literal repetition of levels and embeddings (used by
/// explicit towers, e.g. constant ones) and is verified at construction.
struct GeneratorInfo {
    GeneratorKind kind = GeneratorKind::Explicit;
    bool per_step_growth = false;
    std::optional<Periodicity> periodicity;
    std::string description;
};

/// A finite stage sequence of levels joined by regular embeddings. Levels are
/// 1-based in the public interface; depth of a generated tower counts
/// embedding steps, so a depth-d tower has d+1 levels.
class Tower {
public:
    Tower(std::vector<DigraphAlgebra> levels, std::vector<RegularEmbedding> embeddings,
          GeneratorInfo generator)
        : levels_(std::move(levels)),
          embeddings_(std::move(embeddings)),
          generator_(std::move(generator)) {
        if (levels_.empty()) throw Error("tower needs at least one level");
        if (embeddings_.size() + 1 != levels_.size())
            throw Error("tower needs exactly one embedding between consecutive levels");
        for (std::size_t k = 0; k < embeddings_.size(); ++k) {
            if (!(embeddings_[k].source() == levels_[k]))
                throw Error("embedding " + std::to_string(k + 1) +
                            " does not start at its level");
            if (!(embeddings_[k].target() == levels_[k + 1]))
                throw Error("embedding " + std::to_string(k + 1) +
                            " does not end at the next level");
        }
        if (generator_.periodicity) verify_periodicity(*generator_.periodicity);
    }

    int level_count() const { return static_cast<int>(levels_.size()); }
    int depth() const { return static_cast<int>(embeddings_.size()); }

    const DigraphAlgebra& level(int k) const {  // 1-based
        check_level(k);
        return levels_[static_cast<std::size_t>(k) - 1];
    }

    /// Embedding from level k into level k+1 (k is 1-based).
    const RegularEmbedding& embedding(int k) const {
        if (k < 1 || k > depth()) throw InputError("embedding index out of range");
        return embeddings_[static_cast<std::size_t>(k) - 1];
    }

    const GeneratorInfo& generator() const { return generator_; }

    /// Composed image of a matrix unit from `from_level` at `to_level`.
    std::vector<MatrixUnit> image_at(const MatrixUnit& u, int from_level, int to_level) const {
        check_level(from_level);
        check_level(to_level);
        if (from_level > to_level) throw InputError("image_at: levels out of order");
        if (!level(from_level).contains(u))
            throw Error("image_at: " + to_string(u) + " not at level " +
                        std::to_string(from_level));
        std::vector<MatrixUnit> cur{u};
        for (int k = from_level; k < to_level; ++k) {
            std::vector<MatrixUnit> next;
            for (const auto& x : cur) {
                auto img = embedding(k).image_units(x);
                next.insert(next.end(), img.begin(), img.end());
            }
            detail::sort_unique(next);
            cur = std::move(next);
        }
        return cur;
    }

    /// Composed spread image of a set of diagonal coordinates.
    std::vector<Diag> diag_image_at(const std::vector<Diag>& ds, int from_level,
                                    int to_level) const {
        check_level(from_level);
        check_level(to_level);
        if (from_level > to_level) throw InputError("diag_image_at: levels out of order");
        std::vector<Diag> cur = ds;
        detail::sort_unique(cur);
        for (int k = from_level; k < to_level; ++k) {
            std::vector<Diag> next;
            for (const auto& d : cur) {
                const auto& t = embedding(k).spread_of(d);
                next.insert(next.end(), t.begin(), t.end());
            }
            detail::sort_unique(next);
            cur = std::move(next);
        }
        return cur;
    }

private:
    void check_level(int k) const {
        if (k < 1 || k > level_count()) throw InputError("level index out of range");
    }

    void verify_periodicity(const Periodicity& p) const {
        if (p.preperiod < 0 || p.period < 1) throw Error("malformed periodicity metadata");
        for (int k = p.preperiod + 1; k + p.period <= level_count(); ++k) {
            if (!(level(k) == level(k + p.period)))
                throw Error("periodicity metadata violated at level " + std::to_string(k));
            if (k + p.period <= depth() && !(embedding(k) == embedding(k + p.period)))
                throw Error("periodicity metadata violated at embedding " + std::to_string(k));
        }
    }

    std::vector<DigraphAlgebra> levels_;
    std::vector<RegularEmbedding> embeddings_;
    GeneratorInfo generator_;
};

struct RefinementRule {
    int n = 2;
    int m = 2;
};
struct StandardRule {
    int n = 2;
    int m = 2;
};
struct TwistRule {
    int exponent = 1;
};
struct ExplicitRule {
    std::vector<DigraphAlgebra> levels;
    std::vector<SpreadTable> spreads;
    std::optional<Periodicity> periodic;
};

using GeneratorRule = std::variant<RefinementRule, StandardRule, TwistRule, ExplicitRule>;

/// Guard against runaway materialization; level sizes grow geometrically.
inline constexpr int kMaxDiagonalSize = 1 << 12;
inline constexpr int kMaxTowerDepth = 24;
inline constexpr int kDefaultTowerDepth = 7;  // 8 levels

inline void check_tower_depth(int depth) {
    if (depth < 0 || depth > kMaxTowerDepth)
        throw InputError("tower depth out of range (0.." + std::to_string(kMaxTowerDepth) + ")");
}

/// Iterates a generator rule `depth` times, producing depth+1 levels.
inline Tower build_tower(const GeneratorRule& rule, int depth) {
    check_tower_depth(depth);
    if (std::holds_alternative<RefinementRule>(rule) ||
        std::holds_alternative<StandardRule>(rule)) {
        const bool refin = std::holds_alternative<RefinementRule>(rule);
        const int n0 = refin ? std::get<RefinementRule>(rule).n : std::get<StandardRule>(rule).n;
        const int m = refin ? std::get<RefinementRule>(rule).m : std::get<StandardRule>(rule).m;
        if (n0 < 1 || m < 2) throw InputError("generator requires n >= 1 and m >= 2");
        std::vector<DigraphAlgebra> levels;
        std::vector<RegularEmbedding> embeddings;
        long long n = n0;
        levels.push_back(make_upper_triangular(n0));
        for (int k = 0; k < depth; ++k) {
            if (n * m > kMaxDiagonalSize) throw InputError("tower level size cap exceeded");
            embeddings.push_back(refin ? refinement_embedding(static_cast<int>(n), m)
                                       : standard_embedding(static_cast<int>(n), m));
            n *= m;
            levels.push_back(make_upper_triangular(static_cast<int>(n)));
        }
        GeneratorInfo info{refin ? GeneratorKind::Refinement : GeneratorKind::Standard,
                           /*per_step_growth=*/true, std::nullopt,
                           (refin ? std::string("refinement") : std::string("standard")) +
                               " n=" + std::to_string(n0) + " m=" + std::to_string(m)};
        return Tower(std::move(levels), std::move(embeddings), std::move(info));
    }
    if (std::holds_alternative<TwistRule>(rule)) {
        const int e0 = std::get<TwistRule>(rule).exponent;
        if (e0 < 1) throw InputError("twist generator requires exponent >= 1");
        if ((1LL << (e0 + depth)) > kMaxDiagonalSize)
            throw InputError("tower level size cap exceeded");
        std::vector<DigraphAlgebra> levels;
        std::vector<RegularEmbedding> embeddings;
        levels.push_back(make_upper_triangular(1 << e0));
        for (int k = 0; k < depth; ++k) {
            embeddings.push_back(twist_embedding(e0 + k));
            levels.push_back(make_upper_triangular(1 << (e0 + k + 1)));
        }
        GeneratorInfo info{GeneratorKind::Twist, /*per_step_growth=*/true, std::nullopt,
                           "twist exponent=" + std::to_string(e0)};
        return Tower(std::move(levels), std::move(embeddings), std::move(info));
    }
    const auto& ex = std::get<ExplicitRule>(rule);
    if (ex.levels.empty()) throw InputError("explicit generator needs at least one level");
    if (ex.spreads.size() + 1 != ex.levels.size())
        throw InputError("explicit generator needs one spread table per embedding");
    std::vector<RegularEmbedding> embeddings;
    for (std::size_t k = 0; k < ex.spreads.size(); ++k)
        embeddings.emplace_back(ex.levels[k], ex.levels[k + 1], ex.spreads[k]);
    GeneratorInfo info{GeneratorKind::Explicit, /*per_step_growth=*/false, ex.periodic,
                       "explicit"};
    return Tower(ex.levels, std::move(embeddings), std::move(info));
}

/// Constant tower on one level joined by identity embeddings; periodic with
/// period 1, so restriction analysis is exact.
inline Tower make_constant_tower(const DigraphAlgebra& alg, int depth) {
    check_tower_depth(depth);
    ExplicitRule rule;
    for (int k = 0; k <= depth; ++k) rule.levels.push_back(alg);
    for (int k = 0; k < depth; ++k) rule.spreads.push_back(identity_embedding(alg).spread());
    rule.periodic = Periodicity{0, 1};
    return build_tower(rule, depth);
}

inline ValidationReport validate(const DigraphAlgebra& alg) {
    return validate_algebra_data(alg.blocks(), alg.units(), /*check_triangular=*/true);
}

inline ValidationReport validate(const RegularEmbedding& emb) {
    auto rep = validate_spread(emb.source(), emb.target(), emb.spread());
    if (!rep.ok()) return rep;
    for (const auto& u : emb.source().units())
        for (const auto& img : emb.image_units(u))
            if (!emb.target().contains(img)) {
                rep.issues.push_back("regularity violation: image of " + to_string(u) +
                                     " contains " + to_string(img));
                return rep;
            }
    return rep;
}

inline ValidationReport validate(const Tower& tower) {
    ValidationReport rep;
    for (int k = 1; k <= tower.level_count(); ++k) {
        auto r = validate(tower.level(k));
        for (auto& s : r.issues) rep.issues.push_back("level " + std::to_string(k) + ": " + s);
    }
    for (int k = 1; k <= tower.depth(); ++k) {
        auto r = validate(tower.embedding(k));
        for (auto& s : r.issues)
            rep.issues.push_back("embedding " + std::to_string(k) + ": " + s);
    }
    return rep;
}

}  // namespace limitalg
