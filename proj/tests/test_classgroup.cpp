#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "formprime/classgroup.hpp"

using namespace formprime;

TEST_CASE("compose known values")
{
    CHECK(compose(Form{2, 1, 2}, Form{2, 1, 2}, -15).form() == Form{1, 1, 4});
    // identity law across a few discriminants
    for (i64 D : {-84, -480, -1056}) {
        ClassGroup g(D);
        for (const auto& q : g.elements()) {
            ReducedForm r = compose(g.element(g.identity()).form(), q.form(), D);
            CHECK(r == q);
        }
    }
    CHECK_THROWS_AS(compose(Form{1, 0, 1}, Form{1, 1, 1}, -4), domain_error);
    CHECK_THROWS_AS(compose(Form{2, 0, 2}, Form{2, 0, 2}, -16), domain_error);
}

TEST_CASE("Cl(-84) is the Klein four-group")
{
    ClassGroup g(-84);
    REQUIRE(g.h() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(g.compose(i, i) == g.identity());
        for (int j = 0; j < 4; ++j)
            CHECK(g.compose(i, j) == g.compose(j, i));
    }
    CHECK(group_type(g) == parse_group_type("(2,2)"));
}

TEST_CASE("class numbers and types from known data")
{
    ClassGroup g1056(-1056);
    CHECK(g1056.h() == 16);
    CHECK(group_type(g1056) == parse_group_type("(2,2,4)"));
    CHECK(is_type_dividing_224(g1056));

    ClassGroup g3(-3);
    CHECK(g3.h() == 1);
    CHECK(group_type(g3) == GroupType{});
    CHECK(group_type(g3).str() == "(1)");

    ClassGroup g5460(-5460);
    CHECK(g5460.h() == 16);
    CHECK(group_type(g5460) == parse_group_type("(2,2,2,2)"));

    ClassGroup g87360(-87360);
    CHECK(group_type(g87360) == parse_group_type("(2,2,2,2,4)"));

    ClassGroup g47(-47);
    CHECK(g47.h() == 5);
    CHECK_FALSE(is_type_dividing_224(g47));
    CHECK(group_type(g47) == parse_group_type("(5)"));

    ClassGroup g4(-4);
    CHECK(is_type_dividing_224(g4));
    CHECK(group_type(g4) == GroupType{});
}

TEST_CASE("group axioms, exhaustive commutativity, random associativity")
{
    std::mt19937_64 rng(23);
    for (i64 D = -3; D >= -600; --D) {
        if (!is_discriminant(D))
            continue;
        ClassGroup g(D);
        int n = static_cast<int>(g.h());
        for (int i = 0; i < n; ++i) {
            CHECK(g.compose(g.identity(), i) == i);
            CHECK(g.compose(i, g.inverse(i)) == g.identity());
            for (int j = i; j < n; ++j)
                CHECK(g.compose(i, j) == g.compose(j, i));
        }
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int t = 0; t < 16; ++t) {
            int x = pick(rng), y = pick(rng), z = pick(rng);
            CHECK(g.compose(g.compose(x, y), z) == g.compose(x, g.compose(y, z)));
        }
    }
}

TEST_CASE("order_of")
{
    ClassGroup g1056(-1056);
    CHECK(order_of(reduce_sl2(Form{7, 6, 39}), g1056) == 4);
    CHECK(order_of(g1056.element(g1056.identity()), g1056) == 1);

    ClassGroup g15(-15);
    CHECK(order_of(reduce_sl2(Form{2, 1, 2}), g15) == 2);
    CHECK_THROWS_AS(order_of(reduce_sl2(Form{1, 0, 1}), g15), domain_error);
}

TEST_CASE("two-torsion is exactly the boundary forms")
{
    // order <= 2 iff b = 0, b = a or a = c, checked exhaustively.
    for (i64 D = -3; D >= -2000; --D) {
        if (!is_discriminant(D))
            continue;
        ClassGroup g(D);
        for (const auto& q : g.elements()) {
            bool boundary = q.b() == 0 || q.b() == q.a() || q.a() == q.c();
            bool involution = g.compose(g.index_of(q), g.index_of(q)) == g.identity();
            CHECK(boundary == involution);
        }
    }
}

TEST_CASE("h_formula against direct enumeration")
{
    CHECK(h_formula(-264, 2) == 16);
    CHECK(h_formula(-3, 2) == 1);
    for (i64 d : {-3, -4, -7, -8, -15, -20, -24, -163, -264})
        CHECK(h_formula(d, 1) == ClassGroup(d).h());

    PrimeTable pt(4000);
    for (i64 n = 3; n <= 300; ++n) {
        i64 d = -n;
        if (!is_discriminant(d) || !is_fundamental(d))
            continue;
        for (i64 f = 1; f <= 8; ++f)
            CHECK(h_formula(d, f) == class_number(d * f * f, pt));
    }
    CHECK_THROWS_AS(h_formula(-12, 2), domain_error); // -12 not fundamental
}

TEST_CASE("local unit quotient cases")
{
    // d = 1 mod 8, e = 1: trivial
    CHECK(local_unit_quotient(-7, 2, 1) == GroupType{});
    // d = 5 mod 8, e = 1: Z/3
    CHECK(local_unit_quotient(-3, 2, 1) == parse_group_type("(3)"));
    // (d|7) = -1, e = 2: Z/8 + Z/7 = Z/56
    i64 d = -15;
    REQUIRE(kronecker(d, 7) == -1);
    CHECK(local_unit_quotient(d, 7, 2) == parse_group_type("(56)"));

    // Cardinality identity #G = p^(e-1) (p - (d|p)) across many cases.
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<i64> pick(3, 40000);
    PrimeTable pt(60);
    int done = 0;
    while (done < 100) {
        i64 cand = -pick(rng);
        if (!is_discriminant(cand) || !is_fundamental(cand))
            continue;
        for (i64 p : pt.primes()) {
            if (p > 50)
                break;
            for (int e = 1; e <= 4; ++e) {
                GroupType t = local_unit_quotient(cand, p, e);
                i64 expect = p - kronecker(cand, p);
                for (int i = 0; i + 1 < e; ++i)
                    expect *= p;
                CHECK(t.order() == expect);
            }
        }
        ++done;
    }
}

TEST_CASE("invariant factors from cyclic orders")
{
    CHECK(invariant_factors_from_cyclic({8, 7}) == parse_group_type("(56)"));
    CHECK(invariant_factors_from_cyclic({2, 4, 2}) == parse_group_type("(2,2,4)"));
    CHECK(invariant_factors_from_cyclic({6, 4}) == parse_group_type("(2,12)"));
    CHECK(invariant_factors_from_cyclic({1, 1}) == GroupType{});
    CHECK(invariant_factors_from_cyclic({}).order() == 1);
}

TEST_CASE("type dividing agrees with invariant factors")
{
    for (i64 D = -3; D >= -2500; --D) {
        if (!is_discriminant(D))
            continue;
        ClassGroup g(D);
        CHECK(is_type_dividing_224(g) == group_type(g).divides_two_dots_two_four());
    }
}

TEST_CASE("shared cache returns one instance")
{
    auto a = class_group(-1056);
    auto b = class_group(-1056);
    CHECK(a.get() == b.get());
}
