// DOT emitters: Bratteli diagrams of towers (one rank per level, edges
// labelled with multiplicities), Hasse diagrams of ideal lattices, and
// level spectra as DAGs. Node ordering is deterministic for golden files.
#pragma once

#include <sstream>

#include "limitalg/core.hpp"
#include "limitalg/ideals.hpp"
#include "limitalg/spectrum.hpp"

namespace limitalg {

/// Bratteli diagram: node per (level, block) labelled with the block size,
/// edge labels carry the multiplicity of the partial embedding.
inline std::string emit_dot(const Tower& tower) {
    std::ostringstream os;
    os << "digraph bratteli {\n";
    os << "  rankdir=TB;\n  node [shape=box];\n";
    for (int k = 1; k <= tower.level_count(); ++k) {
        const auto& alg = tower.level(k);
        os << "  { rank=same;";
        for (std::size_t b = 0; b < alg.blocks().size(); ++b)
            os << " L" << k << "B" << b << " [label=\"" << alg.blocks()[b] << "\"];";
        os << " }\n";
    }
    for (int k = 1; k <= tower.depth(); ++k) {
        const auto& emb = tower.embedding(k);
        // multiplicity per (source block, target block) pair
        std::map<std::pair<int, int>, int> mult;
        for (int b = 0; b < static_cast<int>(emb.source().blocks().size()); ++b)
            for (const auto& t : emb.spread_of({b, 1})) ++mult[{b, t.block}];
        for (const auto& [pair, m] : mult)
            os << "  L" << k << "B" << pair.first << " -> L" << (k + 1) << "B" << pair.second
               << " [label=\"" << m << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

/// Hasse diagram of an ideal lattice: nodes labelled by ideal size, edges are
/// covering containments.
inline std::string emit_dot(const IdealLattice& lat) {
    std::ostringstream os;
    os << "digraph ideal_lattice {\n";
    os << "  rankdir=BT;\n  node [shape=ellipse];\n";
    for (std::size_t i = 0; i < lat.ideals.size(); ++i) {
        os << "  I" << i << " [label=\"";
        const auto& units = lat.ideals[i].units;
        if (units.empty()) {
            os << "0";
        } else if (units.size() <= 4) {
            for (std::size_t k = 0; k < units.size(); ++k)
                os << (k ? " " : "") << to_string(units[k]);
        } else {
            os << units.size() << " units";
        }
        os << "\"];\n";
    }
    std::set<std::pair<int, int>> contain(lat.order.begin(), lat.order.end());
    for (const auto& [i, j] : lat.order) {
        bool covering = true;
        for (std::size_t k = 0; k < lat.ideals.size() && covering; ++k) {
            const int m = static_cast<int>(k);
            if (m != i && m != j && contain.count({i, m}) && contain.count({m, j}))
                covering = false;
        }
        if (covering) os << "  I" << i << " -> I" << j << ";\n";
    }
    os << "}\n";
    return os.str();
}

/// Level spectrum drawn as a DAG on diagonal coordinates; reflexive pairs are
/// omitted.
inline std::string emit_dot(const LevelSpectrum& sp) {
    std::ostringstream os;
    os << "digraph spectrum {\n";
    os << "  rankdir=LR;\n  node [shape=circle];\n";
    std::set<Diag> nodes;
    for (const auto& [a, b] : sp.pairs) {
        nodes.insert(a);
        nodes.insert(b);
    }
    for (const auto& d : nodes)
        os << "  \"" << to_string(d) << "\";\n";
    for (const auto& [a, b] : sp.pairs)
        if (!(a == b))
            os << "  \"" << to_string(a) << "\" -> \"" << to_string(b) << "\";\n";
    os << "}\n";
    return os.str();
}

}  // namespace limitalg
