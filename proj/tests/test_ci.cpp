#include <doctest.h>

#include <random>

#include "ccpg/ci.hpp"
#include "ccpg/synth.hpp"

using namespace ccpg;

TEST_CASE("query canonicalization") {
    const int n = 5;
    const CiQuery q(VertexSet(n, {3}), VertexSet(n, {1}), VertexSet(n, {1, 2, 3, 4}));
    CHECK(q.a() == VertexSet(n, {1}));  // lexicographically smaller side first
    CHECK(q.b() == VertexSet(n, {3}));
    CHECK(q.cond() == VertexSet(n, {2, 4}));  // endpoints removed from cond

    const CiQuery swapped(VertexSet(n, {1}), VertexSet(n, {3}), VertexSet(n, {2, 4}));
    CHECK(q == swapped);
    CHECK(q.hash() == swapped.hash());

    CHECK_THROWS_AS(CiQuery(VertexSet(n), VertexSet(n, {1}), VertexSet(n)), std::invalid_argument);
    CHECK_THROWS_AS(CiQuery(VertexSet(n, {1}), VertexSet(n, {1}), VertexSet(n)),
                    std::invalid_argument);
    CHECK_THROWS_AS(CiQuery(VertexSet(n, {1, 2}), VertexSet(n, {2, 3}), VertexSet(n)),
                    std::invalid_argument);
}

TEST_CASE("exact oracle answers by d-separation per regime") {
    const Dag g(3, {{0, 1}, {1, 2}});
    ExactOracle oracle(g, {{0, VertexSet(3, {1})}});

    CHECK_FALSE(oracle.dependent(0, 2, VertexSet(3, {1})));  // chain screened by middle
    CHECK_FALSE(oracle.dependent(0, 2, VertexSet(3), 0));    // mutilated graph {1->2}
    CHECK(oracle.dependent(0, 2, VertexSet(3)));

    const Dag star(4, {{0, 3}, {1, 3}, {2, 3}});
    ExactOracle star_oracle(star);
    CHECK(star_oracle.dependent(0, 1, VertexSet(4, {3})));  // collider opened
    CHECK_FALSE(star_oracle.dependent(0, 1, VertexSet(4)));

    CHECK_THROWS_AS(oracle.dependent(0, 2, VertexSet(3), 9), RegimeError);
    CHECK_THROWS_AS(ExactOracle(g, {{kObservational, VertexSet(3, {0})}}), std::invalid_argument);
}

TEST_CASE("dependence is symmetric in the endpoint sets") {
    const Dag g = random_dag(7, 0.4, 5);
    ExactOracle oracle(g);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        VertexSet a(7), b(7), c(7);
        for (int v = 0; v < 7; ++v) {
            switch (rng() % 4) {
                case 0: a.insert(v); break;
                case 1: b.insert(v); break;
                case 2: c.insert(v); break;
                default: break;
            }
        }
        if (a.empty() || b.empty()) continue;
        CHECK(oracle.dependent(a, b, c) == oracle.dependent(b, a, c));
    }
}

TEST_CASE("caching is transparent and counters follow the law") {
    const Dag g = random_dag(6, 0.4, 17);

    // Same query sequence with cache on and off gives identical answers.
    std::mt19937_64 rng(3);
    std::vector<CiQuery> queries;
    for (int trial = 0; trial < 200; ++trial) {
        VertexSet a(6), b(6), c(6);
        for (int v = 0; v < 6; ++v) {
            switch (rng() % 4) {
                case 0: a.insert(v); break;
                case 1: b.insert(v); break;
                case 2: c.insert(v); break;
                default: break;
            }
        }
        if (a.empty() || b.empty()) continue;
        queries.emplace_back(a, b, c);
    }
    ExactOracle cached(g);
    ExactOracle uncached(g);
    uncached.set_cache_enabled(false);
    for (const auto& q : queries) {
        CHECK(cached.dependent(q) == uncached.dependent(q));
    }

    // k distinct canonical queries issued twice: total = 2k, unique = k.
    ExactOracle counted(g);
    const VertexSet none(6);
    uint64_t k = 0;
    for (int a = 0; a < 6; ++a) {
        for (int b = a + 1; b < 6; ++b) {
            counted.dependent(a, b, none);
            ++k;
        }
    }
    for (int a = 0; a < 6; ++a) {
        for (int b = a + 1; b < 6; ++b) {
            counted.dependent(b, a, none);  // same canonical queries again
        }
    }
    CHECK(counted.counter().total == 2 * k);
    CHECK(counted.counter().unique == k);
    CHECK(counted.counter().unique <= counted.counter().total);
}
