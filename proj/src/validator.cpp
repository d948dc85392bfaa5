#include "ccpg/validator.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace ccpg {

namespace {

bool edge_intervened(const Edge& e, const std::vector<Intervention>& interventions) {
    for (const auto& intervention : interventions) {
        const int hits = static_cast<int>(intervention.targets.contains(e.first)) +
                         static_cast<int>(intervention.targets.contains(e.second));
        if (hits == 1) return true;
    }
    return false;
}

}  // namespace

ValidationReport check_ccpg(const Dag& g_true, const CcpgOutput& output,
                            const std::vector<Intervention>& interventions) {
    const int n = g_true.n();
    const size_t k = output.components.size();
    if (output.layer_of.size() != k) {
        throw std::invalid_argument("check_ccpg: layer_of size does not match components");
    }
    VertexSet seen(n);
    int covered_count = 0;
    for (const auto& comp : output.components) {
        if (comp.universe() != n || comp.empty() || comp.intersects(seen)) {
            throw std::invalid_argument("check_ccpg: components do not partition the vertex set");
        }
        seen |= comp;
        covered_count += comp.count();
    }
    if (covered_count != n) {
        throw std::invalid_argument("check_ccpg: components do not cover the vertex set");
    }

    ValidationReport report;

    for (size_t i = 0; i < k; ++i) {
        const VertexSet& comp = output.components[i];
        const VertexSet sources = g_true.src(comp);
        if (sources.count() != 1) {
            report.single_source = false;
            report.failures.push_back("component " + std::to_string(i) + " has " +
                                      std::to_string(sources.count()) + " sources");
        }
        if (comp.count() > 1) {
            bool found = false;
            for (const auto& e : g_true.covered_edges()) {
                if (!comp.contains(e.first) || !comp.contains(e.second)) continue;
                if (!interventions.empty() && edge_intervened(e, interventions)) continue;
                found = true;
                break;
            }
            if (!found) {
                report.covered_edge = false;
                report.failures.push_back("component " + std::to_string(i) + " = " + comp.to_string() +
                                          (interventions.empty()
                                               ? " has no covered edge"
                                               : " has no unintervened covered edge"));
            }
        }
    }

    std::set<Edge> dag_edges(output.component_dag.begin(), output.component_dag.end());
    for (const auto& [i, j] : output.component_dag) {
        if (i >= j) {
            report.topologically_ordered = false;
            report.failures.push_back("component edge " + std::to_string(i) + "->" +
                                      std::to_string(j) + " violates the index order");
        }
        if (i < 0 || j < 0 || static_cast<size_t>(i) >= k || static_cast<size_t>(j) >= k) {
            throw std::invalid_argument("check_ccpg: component edge index out of range");
        }
    }

    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            const bool has_dag_edge = dag_edges.count({static_cast<int>(i), static_cast<int>(j)}) > 0;
            if (has_dag_edge) {
                const VertexSet src_j = g_true.src(output.components[j]);
                bool witness = false;
                src_j.for_each([&](int s) {
                    if (!witness && g_true.parents(s).intersects(output.components[i])) witness = true;
                });
                if (!witness) {
                    report.present_edges_witnessed = false;
                    report.failures.push_back("edge " + std::to_string(i) + "->" + std::to_string(j) +
                                              " has no parent of src(V_" + std::to_string(j) + ")");
                }
            } else {
                bool crossing = false;
                output.components[i].for_each([&](int u) {
                    if (!crossing && g_true.children(u).intersects(output.components[j])) crossing = true;
                });
                if (crossing) {
                    report.absent_edges_consistent = false;
                    report.failures.push_back("graph edge from V_" + std::to_string(i) + " to V_" +
                                              std::to_string(j) + " without a component edge");
                }
            }
        }
    }

    int max_layer = -1;
    for (size_t i = 0; i < k; ++i) {
        if (output.layer_of[i] < max_layer) {
            report.prefix_chain = false;
            report.failures.push_back("layer indices are not non-decreasing at component " +
                                      std::to_string(i));
        }
        max_layer = std::max(max_layer, output.layer_of[i]);
    }
    VertexSet cumulative(n);
    for (int t = 0; t <= max_layer; ++t) {
        for (size_t i = 0; i < k; ++i) {
            if (output.layer_of[i] == t) cumulative |= output.components[i];
        }
        if (!g_true.is_prefix_set(cumulative)) {
            report.prefix_chain = false;
            report.failures.push_back("cumulative layers 0.." + std::to_string(t) + " = " +
                                      cumulative.to_string() + " is not a prefix set");
        }
    }

    return report;
}

bool is_verifying_set(const Dag& g, const std::vector<Intervention>& interventions) {
    for (const auto& e : g.covered_edges()) {
        if (!edge_intervened(e, interventions)) return false;
    }
    return true;
}

ProbeResult proxy_vstructure_probe(const Dag& g, CiOracle& oracle, long trials, uint64_t seed) {
    const int n = g.n();
    std::mt19937_64 rng(seed);
    ProbeResult result;
    if (n < 3) return result;

    for (long t = 0; t < trials; ++t) {
        VertexSet s(n);
        for (int v = 0; v < n; ++v) {
            if (rng() & 1) s.insert(v);
        }
        std::vector<int> outside = s.complement().members();
        if (outside.size() < 3) continue;
        std::shuffle(outside.begin(), outside.end(), rng);
        const int u = outside[0];
        const int v = outside[1];
        const int z = outside[2];

        VertexSet with_z = s;
        with_z.insert(z);
        if (oracle.dependent(u, v, s) || !oracle.dependent(u, v, with_z)) continue;
        ++result.satisfied;
        const VertexSet des_z = g.des_closed(VertexSet::single(n, z));
        if (des_z.contains(u) || des_z.contains(v)) ++result.violations;
    }
    return result;
}

ProbeResult proxy_meek1_probe(const Dag& g, CiOracle& oracle, long trials, uint64_t seed) {
    const int n = g.n();
    std::mt19937_64 rng(seed);
    ProbeResult result;
    if (n < 3) return result;

    for (long t = 0; t < trials; ++t) {
        // Random order-prefix of a random topological order.
        const size_t len = rng() % static_cast<size_t>(n + 1);
        VertexSet s(n);
        VertexSet placed(n);
        for (size_t i = 0; i < len; ++i) {
            std::vector<int> ready;
            for (int v = 0; v < n; ++v) {
                if (!placed.contains(v) && g.parents(v).is_subset_of(placed)) ready.push_back(v);
            }
            const int pick = ready[rng() % ready.size()];
            placed.insert(pick);
            s.insert(pick);
        }
        if (s.empty() || s.complement().count() < 2) continue;

        std::vector<int> inside = s.members();
        std::vector<int> outside = s.complement().members();
        std::shuffle(outside.begin(), outside.end(), rng);
        const int u = inside[rng() % inside.size()];
        const int v = outside[0];
        const int w = outside[1];

        VertexSet with_v = s;
        with_v.insert(v);
        if (!oracle.dependent(u, v, s) || oracle.dependent(u, w, with_v)) continue;
        ++result.satisfied;
        if (g.des_closed(VertexSet::single(n, w)).contains(v)) ++result.violations;
    }
    return result;
}

}  // namespace ccpg
