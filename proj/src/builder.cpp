#include "ccpg/builder.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ccpg {

int CcpgOutput::component_of(int vertex) const {
    for (size_t i = 0; i < components.size(); ++i) {
        if (components[i].contains(vertex)) return static_cast<int>(i);
    }
    return -1;
}

PrefixChain prefix_chain(CiOracle& oracle, const std::vector<Intervention>& interventions) {
    const int n = oracle.n();
    if (n < 1) throw std::invalid_argument("prefix_chain: need at least one vertex");

    PrefixChain chain;
    VertexSet prefix(n);
    const VertexSet all = VertexSet::full(n);
    while (prefix != all) {
        PrefixStepTrace step = interventions.empty()
                                   ? learn_prefix(oracle, prefix)
                                   : learn_prefix_int(oracle, prefix, interventions);
        chain.layers.push_back(step.output_prefix - prefix);
        prefix = step.output_prefix;
        chain.steps.push_back(std::move(step));
    }
    return chain;
}

std::vector<VertexSet> split_layer(CiOracle& oracle, const VertexSet& layer,
                                   const VertexSet& before) {
    const int n = oracle.n();
    const std::vector<int> verts = layer.members();

    // Union-find over layer vertices; edges from pairwise dependence given
    // all earlier layers.
    std::vector<int> parent(verts.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (size_t i = 0; i < verts.size(); ++i) {
        for (size_t j = i + 1; j < verts.size(); ++j) {
            if (oracle.dependent(verts[i], verts[j], before)) {
                const int ri = find(static_cast<int>(i));
                const int rj = find(static_cast<int>(j));
                if (ri != rj) parent[static_cast<size_t>(std::max(ri, rj))] = std::min(ri, rj);
            }
        }
    }

    std::vector<VertexSet> out;
    std::vector<int> slot(verts.size(), -1);
    for (size_t i = 0; i < verts.size(); ++i) {
        const int root = find(static_cast<int>(i));
        if (slot[static_cast<size_t>(root)] < 0) {
            slot[static_cast<size_t>(root)] = static_cast<int>(out.size());
            out.emplace_back(n);
        }
        out[static_cast<size_t>(slot[static_cast<size_t>(root)])].insert(verts[i]);
    }
    // Roots are discovered in ascending vertex order, so components are
    // already sorted by minimum vertex.
    return out;
}

std::vector<Edge> component_dag(CiOracle& oracle, const std::vector<VertexSet>& components) {
    const int n = oracle.n();
    std::vector<Edge> edges;
    VertexSet before(n);
    for (size_t j = 0; j < components.size(); ++j) {
        for (size_t i = 0; i < j; ++i) {
            if (oracle.dependent(components[i], components[j], before)) {
                edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
        before |= components[j];
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

BuildResult build_traced(CiOracle& oracle, const std::vector<Intervention>& interventions) {
    PrefixChain chain = prefix_chain(oracle, interventions);

    BuildResult result;
    result.steps = std::move(chain.steps);
    VertexSet before(oracle.n());
    for (size_t layer = 0; layer < chain.layers.size(); ++layer) {
        for (VertexSet& comp : split_layer(oracle, chain.layers[layer], before)) {
            result.output.components.push_back(std::move(comp));
            result.output.layer_of.push_back(static_cast<int>(layer));
        }
        before |= chain.layers[layer];
    }
    result.output.component_dag = component_dag(oracle, result.output.components);
    result.output.ci_stats = oracle.counter();
    return result;
}

CcpgOutput build(CiOracle& oracle) { return build_traced(oracle, {}).output; }

CcpgOutput build_int(CiOracle& oracle, const std::vector<Intervention>& interventions) {
    return build_traced(oracle, interventions).output;
}

bool recovers_exactly(const CcpgOutput& output, const Dag& g) {
    if (static_cast<int>(output.components.size()) != g.n()) return false;
    std::vector<int> vertex_of(output.components.size(), -1);
    for (size_t i = 0; i < output.components.size(); ++i) {
        if (output.components[i].count() != 1) return false;
        vertex_of[i] = output.components[i].first();
    }
    std::vector<Edge> mapped;
    mapped.reserve(output.component_dag.size());
    for (const auto& [i, j] : output.component_dag) {
        mapped.emplace_back(vertex_of[static_cast<size_t>(i)], vertex_of[static_cast<size_t>(j)]);
    }
    std::sort(mapped.begin(), mapped.end());
    return mapped == g.edges();
}

}  // namespace ccpg
