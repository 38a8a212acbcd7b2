// Shared corpus builders and randomized generators for the test suites.
// Randomized tests draw their seed from Catch2's --rng-seed so reruns are
// reproducible from the command line.
#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "limitalg/core.hpp"
#include "limitalg/ideals.hpp"
#include "limitalg/lex.hpp"
#include "limitalg/order.hpp"
#include "limitalg/spectrum.hpp"

namespace ts {

using namespace limitalg;

inline std::mt19937_64 rng() { return std::mt19937_64{Catch::rngSeed()}; }

inline Tower refinement_tower(int depth, int n = 2, int m = 2) {
    return build_tower(RefinementRule{n, m}, depth);
}

inline Tower standard_tower(int depth, int n = 2, int m = 2) {
    return build_tower(StandardRule{n, m}, depth);
}

inline Tower twist_tower(int depth, int exponent = 1) {
    return build_tower(TwistRule{exponent}, depth);
}

inline Tower constant_t2_tower(int depth) {
    return make_constant_tower(make_upper_triangular(2), depth);
}

/// A constant tower carrying no periodicity metadata, for horizon-bounded
/// verdict tests.
inline Tower constant_tower_no_metadata(const DigraphAlgebra& alg, int depth) {
    ExplicitRule rule;
    for (int k = 0; k <= depth; ++k) rule.levels.push_back(alg);
    for (int k = 0; k < depth; ++k) rule.spreads.push_back(identity_embedding(alg).spread());
    return build_tower(rule, depth);
}

/// Embedding of T_1 + T_1 into T_2, exercising multi-block sources.
inline RegularEmbedding two_blocks_into_t2() {
    DigraphAlgebra src({1, 1}, {{0, 1, 1}, {1, 1, 1}});
    SpreadTable spread;
    spread[{0, 1}] = {{0, 1}};
    spread[{1, 1}] = {{0, 2}};
    return RegularEmbedding(src, make_upper_triangular(2), std::move(spread));
}

inline std::vector<RegularEmbedding> embedding_corpus() {
    return {refinement_embedding(2, 2), refinement_embedding(2, 3), refinement_embedding(3, 2),
            standard_embedding(2, 2),   standard_embedding(3, 3),   twist_embedding(1),
            twist_embedding(2),         identity_embedding(make_upper_triangular(4)),
            two_blocks_into_t2(),
            compose_embeddings(refinement_embedding(2, 2), standard_embedding(4, 2))};
}

inline std::vector<DigraphAlgebra> level_corpus() {
    return {make_upper_triangular(1), make_upper_triangular(2), make_upper_triangular(4),
            direct_sum({make_upper_triangular(2), make_upper_triangular(3)}),
            direct_sum({make_upper_triangular(2), make_upper_triangular(2)})};
}

inline std::vector<Tower> tower_corpus() {
    return {refinement_tower(3), standard_tower(3), twist_tower(3), constant_t2_tower(3),
            lex_tower(LinearOrderPresentation{{Segment::zeta({{}, {2}}, {{}, {2}})}}, 3)};
}

inline Supernatural random_supernatural(std::mt19937_64& gen) {
    static const std::uint64_t primes[] = {2, 3, 5};
    std::uniform_int_distribution<int> pick(0, 3);  // exponent in {0,1,2,inf}
    Supernatural s;
    for (const auto p : primes) {
        switch (pick(gen)) {
            case 0: break;
            case 1: s = s.times(Supernatural::prime_power(p, ExtNat(1))); break;
            case 2: s = s.times(Supernatural::prime_power(p, ExtNat(2))); break;
            case 3: s = s.times(Supernatural::prime_power(p, ExtNat::infinity())); break;
        }
    }
    return s;
}

inline GIPair random_pair(std::mt19937_64& gen) {
    return {random_supernatural(gen), random_supernatural(gen)};
}

inline EventuallyPeriodic random_sequence(std::mt19937_64& gen) {
    std::uniform_int_distribution<int> len(0, 2), plen(1, 2), mult(2, 4);
    EventuallyPeriodic s;
    const int np = len(gen);
    for (int i = 0; i < np; ++i) s.pre.push_back(mult(gen));
    const int pp = plen(gen);
    for (int i = 0; i < pp; ++i) s.period.push_back(mult(gen));
    return s;
}

inline Segment random_segment(std::mt19937_64& gen) {
    std::uniform_int_distribution<int> shape(0, 3), flen(1, 3), mult(2, 4);
    switch (shape(gen)) {
        case 0: {
            std::vector<int> nu;
            const int n = flen(gen);
            for (int i = 0; i < n; ++i) nu.push_back(mult(gen));
            return Segment::finite(std::move(nu));
        }
        case 1: return Segment::omega_plus(random_sequence(gen));
        case 2: return Segment::omega_minus(random_sequence(gen));
        default: return Segment::zeta(random_sequence(gen), random_sequence(gen));
    }
}

inline LinearOrderPresentation random_presentation(std::mt19937_64& gen, int max_segments = 3) {
    std::uniform_int_distribution<int> len(1, max_segments);
    LinearOrderPresentation p;
    const int n = len(gen);
    for (int i = 0; i < n; ++i) p.segments.push_back(random_segment(gen));
    return p;
}

}  // namespace ts
