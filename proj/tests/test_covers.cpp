#include <catch_amalgamated.hpp>

#include "models.hpp"
#include "pictau/covers.hpp"
#include "pictau/errors.hpp"
#include "support.hpp"

using namespace pictau;
using namespace testing;

TEST_CASE("trivial subgroup")
{
    LogPair pair(five_concurrent_lines());
    CharacterSubgroup g(pair.divisors(), {});
    CHECK(g.order() == 1);
    CHECK(g.invariant_factors().empty());
    BuildingData b = building_data(g);
    CHECK(b.epsilon[0][0] == ZVector(5));
    CHECK(pushforward_decomposition(g) == std::vector<ZVector>{zv({0})});
    CHECK(cover_hodge(pair, g, 2) == 0);
    CHECK(cover_hodge(LogPair(points_on_p1(3)), CharacterSubgroup(points_on_p1(3).divisors(), {}), 1) == 0);
}

TEST_CASE("cyclic cover of order five on five lines")
{
    LogPair pair(five_concurrent_lines());
    BoundaryRealization gen(pair.divisors(), zv({2}), QVector(5, q("2/5")));
    CharacterSubgroup g(pair.divisors(), {gen});
    REQUIRE(g.order() == 5);
    CHECK(g.invariant_factors() == zv({5}));
    BuildingData b = building_data(g);
    CHECK(b.inertia == ZVector(5, Integer(5)));
    for (std::size_t k = 0; k < 5; ++k)
        CHECK(b.indices[k] == ZVector(5, Integer(2 * k % 5)));
    CHECK(b.epsilon[1][1] == ZVector(5));
    for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t c = 0; c < 5; ++c)
            CHECK(b.epsilon[a][c] == b.epsilon[c][a]);

    // On Z the summands are minus the pulled-back bundles.
    auto on_z = pushforward_decomposition(g, pair.resolution());
    for (std::size_t k = 0; k < 5; ++k)
    {
        ZVector expected = pullback_parabolic(g.elements()[k], pair.resolution()).bundle();
        for (Integer& v : expected)
            v = -v;
        CHECK(on_z[k] == expected);
    }
    CHECK(on_z[1] == zv({-2, 2}));
}

TEST_CASE("double covers of the line")
{
    CurveModel four = points_on_p1(4);
    LogPair pair(four);
    BoundaryRealization gen(pair.divisors(), zv({2}), QVector(4, q("1/2")));
    CharacterSubgroup g(pair.divisors(), {gen});
    BuildingData b = building_data(g);
    CHECK(b.epsilon[1][1] == ZVector(4, Integer(1)));
    CHECK(cover_hodge(pair, g, 1) == 1);
    CHECK(riemann_hurwitz_genus(four, g) == 1);

    CurveModel six = points_on_p1(6);
    LogPair pair6(six);
    CharacterSubgroup g6(pair6.divisors(), {BoundaryRealization(pair6.divisors(), zv({3}), QVector(6, q("1/2")))});
    CHECK(riemann_hurwitz_genus(six, g6) == 2);
    CHECK(cover_hodge(pair6, g6, 1) == 2);
    CHECK(riemann_hurwitz_genus(six, CharacterSubgroup(pair6.divisors(), {})) == 0);
}

TEST_CASE("full two-torsion on five lines")
{
    LogPair pair(five_concurrent_lines());
    std::vector<BoundaryRealization> gens;
    for (std::size_t i = 0; i < 4; ++i)
    {
        QVector alpha(5);
        alpha[i] = q("1/2");
        alpha[4] = q("1/2");
        gens.emplace_back(pair.divisors(), zv({1}), alpha);
    }
    CharacterSubgroup g(pair.divisors(), gens);
    CHECK(g.order() == 16);
    CHECK(g.invariant_factors() == zv({2, 2, 2, 2}));
    CHECK(cover_hodge(pair, g, 1) == 5);
    CHECK(congruence_hodge(pair, 1, 2) == 5);
    building_data(g);
}

TEST_CASE("congruence covers: direct and quasi-polynomial modes")
{
    LogPair pair(five_concurrent_lines());
    StrataTable t = compute_strata(pair);
    for (int q = 0; q <= 2; ++q)
    {
        QuasiPolynomial f = congruence_hodge_qp(pair, t, q);
        for (long n = 1; n <= 5; ++n)
            REQUIRE(f.eval_integer(n) == congruence_hodge(pair, q, n));
    }
    CHECK(congruence_hodge_qp(pair, t, 0) == QuasiPolynomial::constant(1));
    CHECK(congruence_hodge_qp(pair, t, 2) == QuasiPolynomial::zero());

    LogPair curve(points_on_p1(4));
    StrataTable ct = compute_strata(curve);
    for (int q = 0; q <= 1; ++q)
    {
        QuasiPolynomial f = congruence_hodge_qp(curve, ct, q);
        for (long n = 1; n <= 6; ++n)
            REQUIRE(f.eval_integer(n) == congruence_hodge(curve, q, n));
    }
}

TEST_CASE("generators must share the divisor set")
{
    LogPair a(five_concurrent_lines());
    LogPair b(triangle());
    CHECK_THROWS_AS(CharacterSubgroup(a.divisors(), {BoundaryRealization::identity(b.divisors())}), SemanticError);
}
