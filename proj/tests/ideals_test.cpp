#include "test_support.hpp"

using namespace limitalg;

namespace {

// Independent oracle: enumerate every subset of the unit set and keep the
// multiplication-closed ones. Feasible through T_5 (2^15 subsets).
std::vector<std::vector<MatrixUnit>> all_subsets_ideal_oracle(const DigraphAlgebra& alg) {
    const auto& units = alg.units();
    const std::size_t n = units.size();
    REQUIRE(n <= 20);
    std::vector<std::vector<MatrixUnit>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<MatrixUnit> subset;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::uint64_t{1} << i)) subset.push_back(units[i]);
        if (is_closed_ideal(alg, subset)) out.push_back(std::move(subset));
    }
    std::sort(out.begin(), out.end(),
              [](const std::vector<MatrixUnit>& a, const std::vector<MatrixUnit>& b) {
                  return a.size() != b.size() ? a.size() < b.size() : a < b;
              });
    return out;
}

// Independent closed form for single-block T_n: the ideal generated by seeds
// consists of the units weakly above-left of some seed.
LevelIdeal staircase_ideal_oracle(const DigraphAlgebra& tn, const std::vector<MatrixUnit>& seeds) {
    LevelIdeal out{1, {}};
    for (const auto& u : tn.units())
        for (const auto& s : seeds)
            if (u.row <= s.row && u.col >= s.col) {
                out.units.push_back(u);
                break;
            }
    return out;
}

}  // namespace

TEST_CASE("ideal enumeration matches the all-subsets oracle", "[ideals]") {
    const std::size_t expected_counts[] = {2, 5, 14, 42, 132};  // frozen from the oracle
    for (int n = 1; n <= 5; ++n) {
        const auto alg = make_upper_triangular(n);
        const auto oracle = all_subsets_ideal_oracle(alg);
        const auto lat = enumerate_ideals(alg);
        REQUIRE(lat.ideals.size() == oracle.size());
        REQUIRE(oracle.size() == expected_counts[n - 1]);
        for (std::size_t i = 0; i < oracle.size(); ++i)
            REQUIRE(lat.ideals[i].units == oracle[i]);
    }
    SECTION("multi-block levels multiply the counts") {
        const auto sum = direct_sum({make_upper_triangular(2), make_upper_triangular(2)});
        REQUIRE(enumerate_ideals(sum).ideals.size() == 25);
        const auto oracle = all_subsets_ideal_oracle(sum);
        REQUIRE(oracle.size() == 25);
    }
    SECTION("cap violations are reported") {
        REQUIRE_THROWS_AS(enumerate_ideals(make_upper_triangular(4), 5), InputError);
    }
}

TEST_CASE("generated ideals", "[ideals]") {
    const auto t2 = make_upper_triangular(2);
    REQUIRE(generated_ideal(t2, {{0, 1, 2}}).units == std::vector<MatrixUnit>{{0, 1, 2}});
    REQUIRE(generated_ideal(t2, {{0, 1, 1}}).units ==
            std::vector<MatrixUnit>{{0, 1, 1}, {0, 1, 2}});
    REQUIRE(generated_ideal(t2, {}).units.empty());
    REQUIRE_THROWS_AS(generated_ideal(t2, {{0, 2, 1}}), Error);

    SECTION("agrees with the staircase closed form on T_6") {
        const auto t6 = make_upper_triangular(6);
        auto gen = ts::rng();
        std::uniform_int_distribution<int> pick(0, static_cast<int>(t6.dimension()) - 1);
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<MatrixUnit> seeds;
            for (int k = 0; k < 2; ++k)
                seeds.push_back(t6.units()[static_cast<std::size_t>(pick(gen))]);
            REQUIRE(generated_ideal(t6, seeds).units == staircase_ideal_oracle(t6, seeds).units);
        }
    }
}

TEST_CASE("the T_2 lattice", "[ideals]") {
    const auto t2 = make_upper_triangular(2);
    const auto lat = enumerate_ideals(t2);
    REQUIRE(lat.ideals.size() == 5);
    REQUIRE(lat.ideals[0].units.empty());
    REQUIRE(lat.ideals[1].units == std::vector<MatrixUnit>{{0, 1, 2}});
    REQUIRE(lat.ideals[2].units == std::vector<MatrixUnit>{{0, 1, 1}, {0, 1, 2}});
    REQUIRE(lat.ideals[3].units == std::vector<MatrixUnit>{{0, 1, 2}, {0, 2, 2}});
    REQUIRE(lat.ideals[4].units.size() == 3);

    SECTION("meet and join worked examples") {
        REQUIRE(meet(lat.ideals[2], lat.ideals[3]).units == std::vector<MatrixUnit>{{0, 1, 2}});
        REQUIRE(join(t2, lat.ideals[2], lat.ideals[3]).units == lat.ideals[4].units);
    }
    SECTION("meet irreducibility") {
        REQUIRE(is_meet_irreducible(lat, lat.ideals[0]));        // zero ideal
        REQUIRE_FALSE(is_meet_irreducible(lat, lat.ideals[1]));  // {e_12}
    }
}

TEST_CASE("lattice laws hold on enumerated lattices", "[ideals]") {
    for (const auto& alg :
         {make_upper_triangular(2), make_upper_triangular(3), make_upper_triangular(4),
          direct_sum({make_upper_triangular(2), make_upper_triangular(2)})}) {
        const auto lat = enumerate_ideals(alg);
        for (const auto& ideal : lat.ideals) REQUIRE(is_closed_ideal(alg, ideal.units));
        const std::size_t n = lat.ideals.size();
        auto gen = ts::rng();
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (int trial = 0; trial < 40; ++trial) {
            const auto& a = lat.ideals[pick(gen)];
            const auto& b = lat.ideals[pick(gen)];
            const auto& c = lat.ideals[pick(gen)];
            REQUIRE(meet(a, a).units == a.units);
            REQUIRE(join(alg, a, a).units == a.units);
            REQUIRE(meet(a, b).units == meet(b, a).units);
            REQUIRE(join(alg, a, b).units == join(alg, b, a).units);
            REQUIRE(meet(a, meet(b, c)).units == meet(meet(a, b), c).units);
            REQUIRE(join(alg, a, join(alg, b, c)).units == join(alg, join(alg, a, b), c).units);
            REQUIRE(meet(a, join(alg, a, b)).units == a.units);
            REQUIRE(join(alg, a, meet(a, b)).units == a.units);
            // meets and joins are again ideals of the lattice
            REQUIRE(lat.index_of(meet(a, b)) >= 0);
            REQUIRE(lat.index_of(join(alg, a, b)) >= 0);
        }
    }
}

TEST_CASE("push forward and pull back", "[ideals]") {
    const auto rho = refinement_embedding(2, 2);
    const auto t2 = make_upper_triangular(2);

    const auto pushed = push_forward(rho, generated_ideal(t2, {{0, 1, 2}}));
    REQUIRE(pushed.units == generated_ideal(rho.target(), {{0, 1, 3}, {0, 2, 4}}).units);
    REQUIRE(pushed.units ==
            std::vector<MatrixUnit>{{0, 1, 3}, {0, 1, 4}, {0, 2, 4}});

    SECTION("zero pulls back to zero") {
        REQUIRE(pull_back(rho, LevelIdeal{2, {}}).units.empty());
    }
    SECTION("Galois inequalities over all T_2 ideals") {
        for (const auto& ideal : enumerate_ideals(t2).ideals) {
            const auto round = pull_back(rho, push_forward(rho, ideal));
            REQUIRE(std::includes(round.units.begin(), round.units.end(), ideal.units.begin(),
                                  ideal.units.end()));
        }
        for (const auto& ideal : enumerate_ideals(rho.target()).ideals) {
            const auto round = push_forward(rho, pull_back(rho, ideal));
            REQUIRE(std::includes(ideal.units.begin(), ideal.units.end(), round.units.begin(),
                                  round.units.end()));
        }
    }
}

TEST_CASE("ideal systems through towers", "[ideals]") {
    SECTION("identity embeddings keep the seed") {
        auto tower = std::make_shared<const Tower>(ts::constant_t2_tower(3));
        const auto sys = ideal_system(tower, 1, {{0, 1, 2}}, 4);
        for (int k = 1; k <= 4; ++k)
            REQUIRE(sys.at(k).units == std::vector<MatrixUnit>{{0, 1, 2}});
    }
    SECTION("refinement system sizes, frozen from the closure oracle") {
        auto tower = std::make_shared<const Tower>(ts::refinement_tower(2));
        const auto sys = ideal_system(tower, 1, {{0, 1, 2}}, 3);
        REQUIRE(sys.at(1).units == std::vector<MatrixUnit>{{0, 1, 2}});
        REQUIRE(sys.at(2).units ==
                std::vector<MatrixUnit>{{0, 1, 3}, {0, 1, 4}, {0, 2, 4}});
        REQUIRE(sys.at(3).units.size() == 10);
        REQUIRE(sys.at(3).units == staircase_ideal_oracle(tower->level(3),
                                                          {{0, 1, 5}, {0, 2, 6}, {0, 3, 7}, {0, 4, 8}})
                                        .units);
    }
    SECTION("empty seeds give the zero system") {
        auto tower = std::make_shared<const Tower>(ts::refinement_tower(2));
        const auto sys = ideal_system(tower, 1, {}, 3);
        for (int k = 1; k <= 3; ++k) REQUIRE(sys.at(k).units.empty());
    }
    SECTION("inductivity holds over the corpus") {
        for (const auto& t : ts::tower_corpus()) {
            auto tower = std::make_shared<const Tower>(t);
            const auto& first = tower->level(1).units();
            const auto sys =
                ideal_system(tower, 1, {first.back()}, tower->level_count());
            for (int k = sys.first_level; k < sys.last_level(); ++k) {
                auto pulled = pull_back(tower->embedding(k), sys.at(k + 1));
                REQUIRE(pulled.units == sys.at(k).units);
            }
        }
    }
}

TEST_CASE("dimension classification", "[ideals]") {
    SECTION("constant tower ideals are finite dimensional") {
        auto tower = std::make_shared<const Tower>(ts::constant_t2_tower(3));
        const auto v = classify_dimension(ideal_system(tower, 1, {{0, 1, 2}}, 4));
        REQUIRE(v.kind == DimensionVerdict::Kind::Finite);
        REQUIRE(v.dim == 1);
    }
    SECTION("refinement ideals are infinite dimensional") {
        auto tower = std::make_shared<const Tower>(ts::refinement_tower(3));
        REQUIRE(classify_dimension(ideal_system(tower, 1, {{0, 1, 2}}, 4)).kind ==
                DimensionVerdict::Kind::Infinite);
    }
    SECTION("towers without periodicity metadata stay unknown") {
        auto tower = std::make_shared<const Tower>(
            ts::constant_tower_no_metadata(make_upper_triangular(2), 2));
        const auto v = classify_dimension(ideal_system(tower, 1, {{0, 1, 2}}, 3));
        REQUIRE(v.kind == DimensionVerdict::Kind::Unknown);
        REQUIRE(v.horizon == 3);
    }
}

TEST_CASE("lemma 1 witnesses", "[ideals]") {
    SECTION("constant T_2 tower with the nilpotent seed") {
        auto tower = std::make_shared<const Tower>(ts::constant_t2_tower(3));
        const auto w = lemma1_witness(ideal_system(tower, 1, {{0, 1, 2}}, 4));
        REQUIRE(w.unit == MatrixUnit{0, 1, 2});
        REQUIRE(w.p.indices == std::vector<Diag>{{0, 1}});
        REQUIRE(w.q.indices == std::vector<Diag>{{0, 2}});
        REQUIRE(w.verified_to == 4);
    }
    SECTION("diagonal-only ideal in a block summand") {
        const auto alg = direct_sum({make_upper_triangular(1), make_upper_triangular(1)});
        auto tower = std::make_shared<const Tower>(make_constant_tower(alg, 2));
        const auto w = lemma1_witness(ideal_system(tower, 1, {{1, 1, 1}}, 3));
        REQUIRE(w.p.indices == w.q.indices);
        REQUIRE(w.p.indices == std::vector<Diag>{{1, 1}});
    }
    SECTION("infinite dimensional systems are refused") {
        auto tower = std::make_shared<const Tower>(ts::refinement_tower(3));
        REQUIRE_THROWS_WITH(lemma1_witness(ideal_system(tower, 1, {{0, 1, 2}}, 4)),
                            Catch::Matchers::ContainsSubstring("not finite dimensional"));
    }
}

TEST_CASE("lemma 2 witnesses", "[ideals]") {
    auto tower = std::make_shared<const Tower>(ts::refinement_tower(6));
    const auto sys = ideal_system(tower, 1, {{0, 1, 2}}, 7);

    SECTION("three orthogonal final projections") {
        const auto w = lemma2_witness(sys, 3);
        REQUIRE(w.side == WitnessSide::Left);
        REQUIRE(w.projections.size() == 3);
        std::set<Diag> distinct;
        for (const auto& p : w.projections) {
            REQUIRE(p.level == w.level);
            REQUIRE(p.indices.size() == 1);
            distinct.insert(p.indices.front());
            // verified by unit multiplication: some ideal unit starts at p
            const MatrixUnit pp{p.indices.front().block, p.indices.front().index,
                                p.indices.front().index};
            bool hit = false;
            for (const auto& u : sys.at(w.level).units)
                if (multiply_units(tower->level(w.level), pp, u)) {
                    hit = true;
                    break;
                }
            REQUIRE(hit);
        }
        REQUIRE(distinct.size() == 3);  // mutually orthogonal
    }
    SECTION("a single witness is the first final projection") {
        const auto w = lemma2_witness(sys, 1);
        REQUIRE(w.level == 1);
        REQUIRE(w.projections.front().indices == std::vector<Diag>{{0, 1}});
    }
    SECTION("capacity errors report how many were found") {
        auto shallow = std::make_shared<const Tower>(ts::refinement_tower(4));
        const auto sys4 = ideal_system(shallow, 1, {{0, 1, 2}}, 5);
        try {
            lemma2_witness(sys4, 50);
            FAIL("expected InsufficientDepthError");
        } catch (const InsufficientDepthError& e) {
            REQUIRE(e.found() == 16);
        }
    }
    SECTION("finite dimensional systems are refused") {
        auto ct = std::make_shared<const Tower>(ts::constant_t2_tower(3));
        REQUIRE_THROWS_AS(lemma2_witness(ideal_system(ct, 1, {{0, 1, 2}}, 4), 1), Error);
    }
}

TEST_CASE("codimension", "[ideals]") {
    const auto t2 = make_upper_triangular(2);
    REQUIRE(codimension(t2, generated_ideal(t2, {{0, 1, 2}})) == 2);
    REQUIRE(codimension(t2, LevelIdeal{1, t2.units()}) == 0);
    REQUIRE(codimension(make_upper_triangular(3), LevelIdeal{1, {}}) == 6);
}
