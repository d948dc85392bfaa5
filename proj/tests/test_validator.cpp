#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "ccpg/builder.hpp"
#include "ccpg/synth.hpp"
#include "ccpg/validator.hpp"

using namespace ccpg;

namespace {

const Dag kChain3(3, {{0, 1}, {1, 2}});

// Singleton partition in topological order with the component DAG equal to g.
CcpgOutput singleton_output(const Dag& g) {
    CcpgOutput out;
    std::vector<int> position(static_cast<size_t>(g.n()), 0);
    const auto& order = g.topological_order();
    for (int i = 0; i < g.n(); ++i) {
        out.components.push_back(VertexSet::single(g.n(), order[static_cast<size_t>(i)]));
        out.layer_of.push_back(i);
        position[static_cast<size_t>(order[static_cast<size_t>(i)])] = i;
    }
    for (const auto& [u, v] : g.edges()) {
        out.component_dag.emplace_back(position[static_cast<size_t>(u)],
                                       position[static_cast<size_t>(v)]);
    }
    std::sort(out.component_dag.begin(), out.component_dag.end());
    return out;
}

// Ordered set partitions of 0..n-1.
void ordered_partitions_rec(const VertexSet& remaining, std::vector<VertexSet>& current,
                            const std::function<void(const std::vector<VertexSet>&)>& visit) {
    if (remaining.empty()) {
        visit(current);
        return;
    }
    const std::vector<int> rest = remaining.members();
    const size_t k = rest.size();
    for (uint64_t bits = 1; bits < (uint64_t{1} << k); ++bits) {
        VertexSet block(remaining.universe());
        for (size_t i = 0; i < k; ++i) {
            if ((bits >> i) & 1) block.insert(rest[i]);
        }
        current.push_back(block);
        ordered_partitions_rec(remaining - block, current, visit);
        current.pop_back();
    }
}

}  // namespace

TEST_CASE("singleton partition with the graph itself always passes") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const Dag g = random_dag(n, 0.4, rng());
        CHECK(check_ccpg(g, singleton_output(g)).pass());
        // Valid for any intervention set as well.
        CHECK(check_ccpg(g, singleton_output(g), log2_intervention_set(n)).pass());
    }
}

TEST_CASE("chain as a single component passes via its covered edge") {
    CcpgOutput out;
    out.components.push_back(VertexSet::full(3));
    out.layer_of.push_back(0);
    CHECK(check_ccpg(kChain3, out).pass());

    // With an intervention cutting the covered edge 0 -> 1, the strong
    // intra-component condition fails.
    const ValidationReport r = check_ccpg(kChain3, out, {{0, VertexSet(3, {0})}});
    CHECK_FALSE(r.pass());
    CHECK_FALSE(r.covered_edge);
}

TEST_CASE("a component without a covered edge fails the intra-component clause") {
    CcpgOutput out;
    out.components.push_back(VertexSet(3, {0}));
    out.components.push_back(VertexSet(3, {1, 2}));
    out.layer_of = {0, 1};
    out.component_dag = {{0, 1}};
    const ValidationReport r = check_ccpg(kChain3, out);
    CHECK_FALSE(r.pass());
    CHECK_FALSE(r.covered_edge);  // 1 -> 2 is not covered
    CHECK(r.single_source);
    CHECK(r.present_edges_witnessed);
}

TEST_CASE("missing and misdirected component edges are caught") {
    CcpgOutput out;
    out.components.push_back(VertexSet(3, {0}));
    out.components.push_back(VertexSet(3, {1}));
    out.components.push_back(VertexSet(3, {2}));
    out.layer_of = {0, 1, 2};
    out.component_dag = {{0, 1}};  // edge 1 -> 2 of the chain is unrepresented
    const ValidationReport r = check_ccpg(kChain3, out);
    CHECK_FALSE(r.pass());
    CHECK_FALSE(r.absent_edges_consistent);

    CcpgOutput extra = singleton_output(kChain3);
    extra.component_dag.push_back({0, 2});  // 0 is no parent of src(V_2) = 2
    std::sort(extra.component_dag.begin(), extra.component_dag.end());
    const ValidationReport r2 = check_ccpg(kChain3, extra);
    CHECK_FALSE(r2.pass());
    CHECK_FALSE(r2.present_edges_witnessed);
}

TEST_CASE("partition mismatches are argument errors") {
    CcpgOutput out;
    out.components.push_back(VertexSet(3, {0, 1}));
    out.layer_of = {0};
    CHECK_THROWS_AS(check_ccpg(kChain3, out), std::invalid_argument);

    out.components.push_back(VertexSet(3, {1, 2}));
    out.layer_of.push_back(0);
    CHECK_THROWS_AS(check_ccpg(kChain3, out), std::invalid_argument);
}

TEST_CASE("verifying intervention sets") {
    const Dag edge(2, {{0, 1}});
    CHECK(is_verifying_set(edge, {{0, VertexSet(2, {0})}}));
    CHECK_FALSE(is_verifying_set(edge, {{0, VertexSet(2, {0, 1})}}));
    CHECK_FALSE(is_verifying_set(edge, {}));

    // A graph without covered edges is verified by the empty set.
    const Dag vee(3, {{0, 2}, {1, 2}});
    CHECK(vee.covered_edges().empty());
    CHECK(is_verifying_set(vee, {}));
}

TEST_CASE("proxy probes report zero violations") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 5);
        const Dag g = random_dag(n, 0.35, rng());
        ExactOracle oracle(g);
        const ProbeResult v = proxy_vstructure_probe(g, oracle, 300, rng());
        CHECK(v.violations == 0);
        const ProbeResult m = proxy_meek1_probe(g, oracle, 300, rng());
        CHECK(m.violations == 0);
    }

    // The in-star premise tuple: 0 indep 1 | {} and 0 dep 1 | {3}.
    const Dag star(4, {{0, 3}, {1, 3}, {2, 3}});
    ExactOracle star_oracle(star);
    const ProbeResult v = proxy_vstructure_probe(star, star_oracle, 2000, 8);
    CHECK(v.satisfied > 0);
    CHECK(v.violations == 0);

    // On a complete DAG no premise tuple exists.
    const Dag complete = random_dag(5, 1.0, 1);
    ExactOracle complete_oracle(complete);
    CHECK(proxy_vstructure_probe(complete, complete_oracle, 500, 2).satisfied == 0);
}

TEST_CASE("without covered edges the only valid output is the graph itself") {
    std::mt19937_64 rng(31337);
    int checked = 0;
    while (checked < 8) {
        const int n = 4 + static_cast<int>(rng() % 2);
        const Dag g = random_dag(n, 0.45, rng());
        if (!g.covered_edges().empty()) continue;
        ++checked;

        std::vector<VertexSet> scratch;
        ordered_partitions_rec(
            VertexSet::full(n), scratch,
            [&](const std::vector<VertexSet>& parts) {
                // Forced component edges: every crossing graph edge.
                CcpgOutput out;
                out.components = parts;
                for (size_t i = 0; i < parts.size(); ++i) {
                    out.layer_of.push_back(static_cast<int>(i));
                }
                bool representable = true;
                for (size_t i = 0; i < parts.size() && representable; ++i) {
                    for (size_t j = 0; j < parts.size() && representable; ++j) {
                        if (i == j) continue;
                        bool crossing = false;
                        parts[i].for_each([&](int u) {
                            if (!crossing && g.children(u).intersects(parts[j])) crossing = true;
                        });
                        if (!crossing) continue;
                        if (i > j) {
                            representable = false;  // forced edge against the order
                        } else {
                            out.component_dag.emplace_back(static_cast<int>(i),
                                                           static_cast<int>(j));
                        }
                    }
                }
                if (!representable) return;
                std::sort(out.component_dag.begin(), out.component_dag.end());
                const ValidationReport r = check_ccpg(g, out);
                if (r.pass()) {
                    CHECK(recovers_exactly(out, g));
                }
            });
    }
}
