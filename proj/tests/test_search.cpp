#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <fstream>
#include <sstream>

#include "formprime/search.hpp"

using namespace formprime;

TEST_CASE("exponent prefilter")
{
    CHECK(expc_prefilter(-5460, 4));
    CHECK(expc_prefilter(-47, 4)); // range empty for tiny |d|
    // construct a discriminant with a split small prime: (d|3) = 1 needs
    // d = 1 mod 3 and 3^4 = 81 <= |d|/4
    i64 d = -4 * 10007; // -40028 = 1 mod 3
    REQUIRE(mod_floor(d, 3) == 1);
    REQUIRE(kronecker(d, 3) == 1);
    CHECK_FALSE(expc_prefilter(d, 4));
    CHECK_THROWS_AS(expc_prefilter(-4, 3), domain_error);
}

TEST_CASE("prefilter never rejects a true hit")
{
    SearchConfig cfg;
    cfg.bound_d = 10000;
    cfg.workers = 2;
    std::vector<Hit> hits = enumerate_fundamental_hits(cfg);
    for (const Hit& h : hits)
        CHECK(expc_prefilter(h.d, 4));
}

TEST_CASE("fundamental hits at tiny bounds")
{
    SearchConfig cfg;
    cfg.bound_d = 3;
    auto hits = enumerate_fundamental_hits(cfg);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].d == -3);

    cfg.bound_d = 200;
    auto hits200 = enumerate_fundamental_hits(cfg);
    std::set<i64> ds;
    for (const Hit& h : hits200)
        ds.insert(h.d);
    CHECK(ds.count(-163) == 1);
    CHECK(ds.count(-195) == 1);
    CHECK(ds.count(-47) == 0);
    for (const Hit& h : hits200)
        if (h.d == -195)
            CHECK(h.type == parse_group_type("(2,2)"));
}

TEST_CASE("determinism across worker counts")
{
    SearchConfig one;
    one.bound_d = 4000;
    one.workers = 1;
    SearchConfig four;
    four.bound_d = 4000;
    four.workers = 4;
    CHECK(enumerate_fundamental_hits(one) == enumerate_fundamental_hits(four));
}

TEST_CASE("order hits: known conductor families")
{
    SearchConfig cfg;
    cfg.bound_d = 10;
    cfg.f_max = 30;
    cfg.workers = 2;
    auto fund = enumerate_fundamental_hits(cfg);
    auto orders = enumerate_order_hits(cfg, fund);

    std::set<std::pair<i64, i64>> pairs;
    for (const Hit& h : orders)
        pairs.insert({h.d, h.f});
    // d = -7 reaches f = 24 with |D| = 4032
    CHECK(pairs.count({-7, 24}) == 1);
    // d = -3 conductors up to 30
    std::set<i64> f3;
    for (const Hit& h : orders)
        if (h.d == -3)
            f3.insert(h.f);
    CHECK(f3 == std::set<i64>{2, 3, 4, 5, 7, 8, 11, 13, 16});
    // every hit's order agrees with the conductor formula
    for (const Hit& h : orders) {
        CHECK(h.D == h.d * h.f * h.f);
        CHECK(h.type.order() == h_formula(h.d, h.f));
        CHECK(h.type.divides_two_dots_two_four());
    }
}

TEST_CASE("no feasible conductor beyond the cap for small d")
{
    CHECK(feasible_conductors_beyond(-3, 1, 30, 600).empty());
    CHECK(feasible_conductors_beyond(-264, 8, 30, 600).empty());
}

TEST_CASE("hits tsv round trip")
{
    SearchConfig cfg;
    cfg.bound_d = 300;
    auto hits = enumerate_fundamental_hits(cfg);
    std::ostringstream out;
    write_hits_tsv(out, hits);
    std::istringstream in(out.str());
    CHECK(read_hits_tsv(in) == hits);
}

TEST_CASE("partial checkpoint: orphan rows are ignored and recomputed")
{
    // Hits recorded without a chunk-completion marker belong to an
    // interrupted range; resume must redo that range, not trust them.
    std::string path = "test_checkpoint_partial.tsv";
    {
        std::ofstream out(path);
        out << "-9999999\t1\t-9999999\t(2)\n"; // bogus orphan row
    }
    SearchConfig cfg;
    cfg.bound_d = 4000;
    cfg.checkpoint = path;
    SearchConfig clean;
    clean.bound_d = 4000;
    CHECK(enumerate_fundamental_hits(cfg) == enumerate_fundamental_hits(clean));
    std::remove(path.c_str());
}

TEST_CASE("checkpoint resume produces identical results")
{
    std::string path = "test_checkpoint.tsv";
    std::remove(path.c_str());
    SearchConfig cfg;
    cfg.bound_d = 100000; // two chunks
    cfg.workers = 2;
    cfg.checkpoint = path;
    auto first = enumerate_fundamental_hits(cfg);
    // Resume from the finished checkpoint: no work left, same output.
    auto second = enumerate_fundamental_hits(cfg);
    CHECK(first == second);
    std::remove(path.c_str());
}

TEST_CASE("prefilter is sound against a filter-free oracle")
{
    // Recompute hits to 4000 with no prefiltering at all and compare.
    PrimeTable pt(128);
    std::set<i64> oracle;
    for (i64 n = 3; n <= 4000; ++n) {
        i64 d = -n;
        if (!is_discriminant(d) || !is_fundamental(d))
            continue;
        ClassGroup g(d, pt);
        if (is_type_dividing_224(g))
            oracle.insert(d);
    }
    SearchConfig cfg;
    cfg.bound_d = 4000;
    cfg.workers = 2;
    std::set<i64> filtered;
    for (const Hit& h : enumerate_fundamental_hits(cfg))
        filtered.insert(h.d);
    CHECK(filtered == oracle);
}
