#ifndef CCPG_BUILDER_HPP
#define CCPG_BUILDER_HPP

#include <vector>

#include "ccpg/ci.hpp"
#include "ccpg/prefix.hpp"
#include "ccpg/vertex_set.hpp"

namespace ccpg {

// Ordered partition of the vertices plus a DAG on the component indices.
struct CcpgOutput {
    std::vector<VertexSet> components;   // disjoint, covering 0..n-1
    std::vector<Edge> component_dag;     // (i, j) with i < j, ascending
    std::vector<int> layer_of;           // component index -> prefix-chain layer
    CiCounter ci_stats;

    int component_of(int vertex) const;
    bool operator==(const CcpgOutput& o) const {
        return components == o.components && component_dag == o.component_dag &&
               layer_of == o.layer_of;
    }
};

struct PrefixChain {
    std::vector<VertexSet> layers;       // successive differences S' \ S
    std::vector<PrefixStepTrace> steps;
};

// Whole-run unique-query budgets asserted by the benchmarks: an observational
// build uses at most kBuildQueryBudgetFactor * n^5 unique CI tests, plus
// kInterventionQueryBudgetFactor * n^3 per intervention when present.
inline constexpr double kBuildQueryBudgetFactor = 5.0;
inline constexpr double kInterventionQueryBudgetFactor = 5.0;

// Iterates prefix growing from the empty set until V is covered.
PrefixChain prefix_chain(CiOracle& oracle, const std::vector<Intervention>& interventions = {});

// Splits one prefix-chain layer into connected components of the graph whose
// edges join layer vertices that are dependent given all earlier layers.
// Components are emitted in ascending order of their minimum vertex.
std::vector<VertexSet> split_layer(CiOracle& oracle, const VertexSet& layer,
                                   const VertexSet& before);

// Set-level dependence screen between components: edge i -> j (i < j) iff
// V_i and V_j are dependent given V_1 u ... u V_{j-1}.
std::vector<Edge> component_dag(CiOracle& oracle, const std::vector<VertexSet>& components);

struct BuildResult {
    CcpgOutput output;
    std::vector<PrefixStepTrace> steps;
};

CcpgOutput build(CiOracle& oracle);
CcpgOutput build_int(CiOracle& oracle, const std::vector<Intervention>& interventions);
BuildResult build_traced(CiOracle& oracle, const std::vector<Intervention>& interventions = {});

// True iff the output has all-singleton components and its component DAG is
// exactly g under the component -> vertex bijection.
bool recovers_exactly(const CcpgOutput& output, const Dag& g);

}  // namespace ccpg

#endif  // CCPG_BUILDER_HPP
