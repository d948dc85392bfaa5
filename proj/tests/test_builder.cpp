#include <doctest.h>

#include <cmath>
#include <random>

#include "ccpg/builder.hpp"
#include "ccpg/io.hpp"
#include "ccpg/synth.hpp"
#include "ccpg/validator.hpp"

using namespace ccpg;

namespace {

const Dag kChain3(3, {{0, 1}, {1, 2}});
const Dag kInStar4(4, {{0, 3}, {1, 3}, {2, 3}});

}  // namespace

TEST_CASE("prefix chain layers") {
    ExactOracle star(kInStar4);
    const PrefixChain star_chain = prefix_chain(star);
    REQUIRE(star_chain.layers.size() == 2);
    CHECK(star_chain.layers[0] == VertexSet(4, {0, 1, 2}));
    CHECK(star_chain.layers[1] == VertexSet(4, {3}));

    ExactOracle chain(kChain3);
    const PrefixChain chain_chain = prefix_chain(chain);
    REQUIRE(chain_chain.layers.size() == 1);
    CHECK(chain_chain.layers[0] == VertexSet::full(3));

    ExactOracle single(Dag(1));
    const PrefixChain one = prefix_chain(single);
    REQUIRE(one.layers.size() == 1);
    CHECK(one.layers[0] == VertexSet(1, {0}));
}

TEST_CASE("layer splitting by conditional connectivity") {
    ExactOracle star(kInStar4);
    const auto star_comps = split_layer(star, VertexSet(4, {0, 1, 2}), VertexSet(4));
    REQUIRE(star_comps.size() == 3);
    CHECK(star_comps[0] == VertexSet(4, {0}));
    CHECK(star_comps[1] == VertexSet(4, {1}));
    CHECK(star_comps[2] == VertexSet(4, {2}));

    ExactOracle chain(kChain3);
    const auto chain_comps = split_layer(chain, VertexSet::full(3), VertexSet(3));
    REQUIRE(chain_comps.size() == 1);
    CHECK(chain_comps[0] == VertexSet::full(3));

    const auto singleton = split_layer(chain, VertexSet(3, {1}), VertexSet(3, {0}));
    REQUIRE(singleton.size() == 1);
    CHECK(singleton[0] == VertexSet(3, {1}));
}

TEST_CASE("component screening") {
    ExactOracle star(kInStar4);
    const std::vector<VertexSet> comps{VertexSet(4, {0}), VertexSet(4, {1}), VertexSet(4, {2}),
                                       VertexSet(4, {3})};
    CHECK(component_dag(star, comps) == std::vector<Edge>{{0, 3}, {1, 3}, {2, 3}});

    ExactOracle chain(kChain3);
    CHECK(component_dag(chain, {VertexSet::full(3)}).empty());

    ExactOracle isolated(Dag(2));
    CHECK(component_dag(isolated, {VertexSet(2, {0}), VertexSet(2, {1})}).empty());
}

TEST_CASE("full builds on fixtures") {
    ExactOracle chain(kChain3);
    const CcpgOutput chain_out = build(chain);
    REQUIRE(chain_out.components.size() == 1);
    CHECK(chain_out.components[0] == VertexSet::full(3));
    CHECK(chain_out.component_dag.empty());
    CHECK(check_ccpg(kChain3, chain_out).pass());

    ExactOracle star(kInStar4);
    const CcpgOutput star_out = build(star);
    CHECK(recovers_exactly(star_out, kInStar4));
    CHECK(star_out.layer_of == std::vector<int>{0, 0, 0, 1});

    const Intervention on_tail{0, VertexSet(2, {0})};
    const Dag edge(2, {{0, 1}});
    ExactOracle edge_oracle(edge, {on_tail});
    const CcpgOutput int_out = build_int(edge_oracle, {on_tail});
    CHECK(recovers_exactly(int_out, edge));
}

TEST_CASE("structural output invariants on random graphs") {
    std::mt19937_64 rng(515);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 8);
        const Dag g = random_dag(n, 0.2 + 0.2 * static_cast<double>(rng() % 2), rng());
        ExactOracle oracle(g);
        const BuildResult result = build_traced(oracle);
        const CcpgOutput& out = result.output;

        // Partition of 0..n-1.
        VertexSet seen(n);
        for (const auto& comp : out.components) {
            CHECK_FALSE(comp.empty());
            CHECK_FALSE(comp.intersects(seen));
            seen |= comp;
        }
        CHECK(seen == VertexSet::full(n));

        for (const auto& [i, j] : out.component_dag) CHECK(i < j);

        // The prefix chain is recoverable from the layer assignment.
        REQUIRE(out.layer_of.size() == out.components.size());
        VertexSet cumulative(n);
        size_t comp_idx = 0;
        for (size_t step = 0; step < result.steps.size(); ++step) {
            while (comp_idx < out.components.size() &&
                   out.layer_of[comp_idx] == static_cast<int>(step)) {
                cumulative |= out.components[comp_idx];
                ++comp_idx;
            }
            CHECK(cumulative == result.steps[step].output_prefix);
        }

        CHECK(check_ccpg(g, out).pass());
    }
}

TEST_CASE("components group layer vertices by their unique source ancestor") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const Dag g = random_dag(n, 0.35, rng());
        ExactOracle oracle(g);
        const BuildResult result = build_traced(oracle);

        VertexSet before(n);
        size_t comp_idx = 0;
        for (size_t step_idx = 0; step_idx < result.steps.size(); ++step_idx) {
            const PrefixStepTrace& step = result.steps[step_idx];
            const VertexSet layer = step.output_prefix - before;
            const VertexSet sources = g.src(before.complement());
            for (; comp_idx < result.output.components.size() &&
                   result.output.layer_of[comp_idx] == static_cast<int>(step_idx);
                 ++comp_idx) {
                const VertexSet& comp = result.output.components[comp_idx];
                // Every component is Des[s] restricted to its layer, for its
                // unique source ancestor s.
                const VertexSet comp_sources = g.src(comp);
                REQUIRE(comp_sources.count() == 1);
                const int s = comp_sources.first();
                CHECK(sources.contains(s));
                CHECK(comp == (g.des_closed(VertexSet::single(n, s)) & layer));
                comp.for_each([&](int w) {
                    CHECK((g.anc_closed(VertexSet::single(n, w)) & sources) ==
                          VertexSet::single(n, s));
                });
            }
            before = step.output_prefix;
        }
    }
}

TEST_CASE("identical runs produce byte-identical serialized output") {
    const Dag g = random_dag(9, 0.3, 313);
    ExactOracle o1(g);
    ExactOracle o2(g);
    CHECK(io::ccpg_to_json(build(o1)) == io::ccpg_to_json(build(o2)));

    const auto regimes = covered_edge_verifying_set(g);
    ExactOracle i1(g, regimes);
    ExactOracle i2(g, regimes);
    CHECK(io::ccpg_to_json(build_int(i1, regimes)) == io::ccpg_to_json(build_int(i2, regimes)));
}

TEST_CASE("query budgets") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 7);
        const Dag g = random_dag(n, 0.3, rng());
        ExactOracle oracle(g);
        const CcpgOutput out = build(oracle);
        CHECK(static_cast<double>(out.ci_stats.unique) <=
              kBuildQueryBudgetFactor * std::pow(n, 5));

        const auto regimes = log2_intervention_set(n);
        ExactOracle int_oracle(g, regimes);
        const CcpgOutput int_out = build_int(int_oracle, regimes);
        CHECK(static_cast<double>(int_out.ci_stats.unique) <=
              kBuildQueryBudgetFactor * std::pow(n, 5) +
                  kInterventionQueryBudgetFactor * static_cast<double>(regimes.size()) *
                      std::pow(n, 3));
    }
}

TEST_CASE("build rejects an empty vertex set") {
    ExactOracle oracle(Dag(0));
    CHECK_THROWS_AS(build(oracle), std::invalid_argument);
}
