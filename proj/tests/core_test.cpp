#include "test_support.hpp"

using namespace limitalg;

TEST_CASE("upper triangular levels", "[core]") {
    SECTION("n = 1 is the identity case") {
        const auto t1 = make_upper_triangular(1);
        REQUIRE(t1.blocks() == std::vector<int>{1});
        REQUIRE(t1.units() == std::vector<MatrixUnit>{{0, 1, 1}});
    }
    SECTION("n = 2 unrolled") {
        const auto t2 = make_upper_triangular(2);
        REQUIRE(t2.units() == std::vector<MatrixUnit>{{0, 1, 1}, {0, 1, 2}, {0, 2, 2}});
    }
    SECTION("n = 4 against exhaustive listing") {
        const auto t4 = make_upper_triangular(4);
        std::vector<MatrixUnit> expected;
        for (int i = 1; i <= 4; ++i)
            for (int j = i; j <= 4; ++j) expected.push_back({0, i, j});
        REQUIRE(t4.units() == expected);
        REQUIRE(t4.dimension() == 10);
    }
    SECTION("invalid sizes are rejected") {
        REQUIRE_THROWS_AS(make_upper_triangular(0), InputError);
    }
}

TEST_CASE("direct sums", "[core]") {
    const auto t1 = make_upper_triangular(1);
    const auto t2 = make_upper_triangular(2);
    const auto t3 = make_upper_triangular(3);

    REQUIRE(direct_sum({t1}) == t1);

    const auto s = direct_sum({t2, t3});
    REQUIRE(s.blocks() == std::vector<int>{2, 3});
    REQUIRE(s.dimension() == 9);
    REQUIRE(s.contains({1, 1, 3}));
    REQUIRE_FALSE(s.contains({0, 1, 3}));

    SECTION("block swap yields the same algebra up to relabelling") {
        const auto a = direct_sum({t2, t3});
        const auto b = direct_sum({t3, t2});
        REQUIRE(a.dimension() == b.dimension());
        for (const auto& u : a.units())
            REQUIRE(b.contains({1 - u.block, u.row, u.col}));
        const auto sym = direct_sum({t2, t2});
        for (const auto& u : sym.units()) REQUIRE(sym.contains({1 - u.block, u.row, u.col}));
    }
    SECTION("empty list is an error") {
        REQUIRE_THROWS_AS(direct_sum({}), InputError);
    }
}

TEST_CASE("matrix unit products", "[core]") {
    const auto t3 = make_upper_triangular(3);
    REQUIRE(multiply_units(t3, {0, 1, 2}, {0, 2, 3}) == MatrixUnit{0, 1, 3});
    REQUIRE(multiply_units(t3, {0, 1, 2}, {0, 1, 2}) == std::nullopt);
    const auto t2 = make_upper_triangular(2);
    REQUIRE(multiply_units(t2, {0, 1, 1}, {0, 1, 2}) == MatrixUnit{0, 1, 2});
    REQUIRE_THROWS_AS(multiply_units(t2, {0, 1, 3}, {0, 1, 1}), Error);

    SECTION("cross-block products vanish") {
        const auto s = direct_sum({t2, t2});
        REQUIRE(multiply_units(s, {0, 1, 2}, {1, 2, 2}) == std::nullopt);
    }
}

TEST_CASE("refinement embeddings", "[core]") {
    const auto rho = refinement_embedding(2, 2);
    REQUIRE(apply_embedding(rho, {0, 1, 2}) ==
            std::vector<MatrixUnit>{{0, 1, 3}, {0, 2, 4}});
    REQUIRE(apply_embedding(refinement_embedding(1, 3), {0, 1, 1}) ==
            std::vector<MatrixUnit>{{0, 1, 1}, {0, 2, 2}, {0, 3, 3}});
    SECTION("every image lies in the target (exhaustive)") {
        for (const auto& u : rho.source().units())
            for (const auto& img : apply_embedding(rho, u)) REQUIRE(rho.target().contains(img));
    }
}

TEST_CASE("standard embeddings", "[core]") {
    const auto sig = standard_embedding(2, 2);
    REQUIRE(apply_embedding(sig, {0, 1, 2}) ==
            std::vector<MatrixUnit>{{0, 1, 2}, {0, 3, 4}});
    SECTION("degenerate n = 1 coincides with refinement") {
        REQUIRE(standard_embedding(1, 2).spread() == refinement_embedding(1, 2).spread());
    }
}

TEST_CASE("twist embeddings", "[core]") {
    const auto tau = twist_embedding(1);
    REQUIRE(apply_embedding(tau, {0, 1, 2}) ==
            std::vector<MatrixUnit>{{0, 1, 4}, {0, 2, 3}});
    REQUIRE(apply_embedding(tau, {0, 2, 2}) ==
            std::vector<MatrixUnit>{{0, 3, 3}, {0, 4, 4}});
    SECTION("every image lies in T_4 (exhaustive regularity)") {
        for (const auto& u : tau.source().units())
            for (const auto& img : apply_embedding(tau, u)) REQUIRE(tau.target().contains(img));
    }
}

TEST_CASE("apply_embedding basics", "[core]") {
    const auto rho = refinement_embedding(2, 2);
    REQUIRE(apply_embedding(rho, {0, 1, 1}) == std::vector<MatrixUnit>{{0, 1, 1}, {0, 2, 2}});
    const auto t4 = make_upper_triangular(4);
    const auto id = identity_embedding(t4);
    for (const auto& u : t4.units())
        REQUIRE(apply_embedding(id, u) == std::vector<MatrixUnit>{u});
    REQUIRE_THROWS_AS(apply_embedding(rho, {0, 1, 3}), Error);
}

TEST_CASE("embedding composition is spread substitution", "[core]") {
    const auto c = compose_embeddings(refinement_embedding(2, 2), refinement_embedding(4, 2));
    REQUIRE(c.spread() == refinement_embedding(2, 4).spread());
    REQUIRE_THROWS_AS(compose_embeddings(refinement_embedding(2, 2), refinement_embedding(2, 2)),
                      Error);

    SECTION("associativity at the spread level") {
        const auto e1 = refinement_embedding(2, 2);
        const auto e2 = standard_embedding(4, 2);
        const auto e3 = refinement_embedding(8, 2);
        const auto left = compose_embeddings(compose_embeddings(e1, e2), e3);
        const auto right = compose_embeddings(e1, compose_embeddings(e2, e3));
        REQUIRE(left.spread() == right.spread());
    }
}

TEST_CASE("tower builders", "[core]") {
    const auto tower = build_tower(RefinementRule{2, 2}, 3);
    REQUIRE(tower.level_count() == 4);
    REQUIRE(tower.level(1) == make_upper_triangular(2));
    REQUIRE(tower.level(2) == make_upper_triangular(4));
    REQUIRE(tower.level(3) == make_upper_triangular(8));
    REQUIRE(tower.level(4) == make_upper_triangular(16));

    SECTION("twist towers double the exponent") {
        const auto tw = ts::twist_tower(2);
        REQUIRE(tw.level(3) == make_upper_triangular(8));
        REQUIRE(tw.embedding(1).spread() == twist_embedding(1).spread());
        REQUIRE(tw.embedding(2).spread() == twist_embedding(2).spread());
    }
    SECTION("size caps reject runaway towers") {
        REQUIRE_THROWS_AS(build_tower(RefinementRule{2, 16}, 10), InputError);
        REQUIRE_THROWS_AS(build_tower(RefinementRule{2, 2}, 99), InputError);
    }
}

TEST_CASE("validation reports", "[core]") {
    SECTION("adding the transpose breaks triangularity") {
        const auto rep = validate_algebra_data(
            {2}, {{0, 1, 1}, {0, 1, 2}, {0, 2, 1}, {0, 2, 2}});
        REQUIRE_FALSE(rep.ok());
        REQUIRE(rep.first().find("triangularity violation") != std::string::npos);
    }
    SECTION("the same algebra is structurally fine and flagged non-triangular") {
        const DigraphAlgebra m2({2}, {{0, 1, 1}, {0, 1, 2}, {0, 2, 1}, {0, 2, 2}});
        REQUIRE_FALSE(m2.is_triangular());
    }
    SECTION("valid towers validate cleanly") {
        REQUIRE(validate(ts::refinement_tower(3)).ok());
        REQUIRE(validate(ts::twist_tower(3)).ok());
    }
    SECTION("missing diagonal is structural") {
        REQUIRE_THROWS_AS(DigraphAlgebra({2}, {{0, 1, 1}, {0, 1, 2}}), Error);
    }
    SECTION("intransitive unit sets are structural") {
        REQUIRE_THROWS_AS(
            DigraphAlgebra({3}, {{0, 1, 1}, {0, 2, 2}, {0, 3, 3}, {0, 1, 2}, {0, 2, 3}}), Error);
    }
    SECTION("non-regular spreads are rejected at construction") {
        // Spread sends T_2's unit e_12 to a unit outside the target set.
        DigraphAlgebra target({3}, {{0, 1, 1}, {0, 2, 2}, {0, 3, 3}, {0, 1, 2}});
        SpreadTable spread;
        spread[{0, 1}] = {{0, 1}};
        spread[{0, 2}] = {{0, 3}};
        REQUIRE_THROWS_AS(RegularEmbedding(make_upper_triangular(2), target, spread), Error);
    }
    SECTION("overlapping spreads are rejected") {
        SpreadTable spread;
        spread[{0, 1}] = {{0, 1}, {0, 2}};
        spread[{0, 2}] = {{0, 2}, {0, 4}};
        REQUIRE_THROWS_AS(
            RegularEmbedding(make_upper_triangular(2), make_upper_triangular(4), spread), Error);
    }
    SECTION("false periodicity metadata is rejected") {
        ExplicitRule rule;
        rule.levels = {make_upper_triangular(2), make_upper_triangular(4)};
        rule.spreads = {refinement_embedding(2, 2).spread()};
        rule.periodic = Periodicity{0, 1};
        REQUIRE_THROWS_AS(build_tower(rule, 1), Error);
    }
}

TEST_CASE("embedding invariants over the corpus", "[core]") {
    for (const auto& emb : ts::embedding_corpus()) {
        // Image containment, exhaustively per embedding.
        for (const auto& u : emb.source().units())
            for (const auto& img : emb.image_units(u)) REQUIRE(emb.target().contains(img));

        // Spread images partition the target diagonal.
        std::vector<Diag> covered;
        for (const auto& d : emb.source().diagonal()) {
            const auto& t = emb.spread_of(d);
            covered.insert(covered.end(), t.begin(), t.end());
        }
        std::sort(covered.begin(), covered.end());
        REQUIRE(std::adjacent_find(covered.begin(), covered.end()) == covered.end());
        REQUIRE(covered == emb.target().diagonal());

        // Multiplicativity: images multiply summand-by-summand.
        for (const auto& u : emb.source().units()) {
            for (const auto& v : emb.source().units()) {
                const auto product = multiply_units(emb.source(), u, v);
                std::vector<MatrixUnit> lhs;
                for (const auto& a : emb.image_units(u))
                    for (const auto& b : emb.image_units(v))
                        if (auto p = multiply_units(emb.target(), a, b)) lhs.push_back(*p);
                std::sort(lhs.begin(), lhs.end());
                if (product) {
                    REQUIRE(lhs == emb.image_units(*product));
                } else {
                    REQUIRE(lhs.empty());
                }
            }
        }
    }
}

TEST_CASE("constant towers and periodicity", "[core]") {
    const auto tower = ts::constant_t2_tower(3);
    REQUIRE(tower.level_count() == 4);
    REQUIRE(tower.generator().periodicity.has_value());
    REQUIRE(tower.image_at({0, 1, 2}, 1, 4) == std::vector<MatrixUnit>{{0, 1, 2}});
}
