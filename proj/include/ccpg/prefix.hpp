#ifndef CCPG_PREFIX_HPP
#define CCPG_PREFIX_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "ccpg/ci.hpp"
#include "ccpg/vertex_set.hpp"

namespace ccpg {

// Raised when a prefix step makes no progress (S' = S). Impossible under an
// exact oracle; recoverable signal of statistical failure under a sampled one.
class StallError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One round of prefix growing: S -> S' = S u (S-bar minus all exclusion sets).
struct PrefixStepTrace {
    VertexSet input_prefix;
    VertexSet d_set;
    VertexSet e_set;
    VertexSet f_set;
    std::map<RegimeId, VertexSet> j_sets;
    VertexSet output_prefix;
    CiCounter queries_used;  // cumulative oracle counter after the step

    // First witness tuple found per excluded vertex, for audit.
    std::map<int, std::vector<int>> d_witness;  // w -> {u, v}
    std::map<int, std::vector<int>> e_witness;  // w -> {u, v, v'}
    std::map<int, std::vector<int>> f_witness;  // w -> {u, v}
};

// Per-step unique-query budget: at most this factor times n^4 (plus a small
// constant slack for tiny graphs), asserted by the test suite.
inline constexpr double kPrefixStepQueryBudgetFactor = 3.0;

// Vertices w of S-bar with u indep v | S but u dep v | S u {w} for some
// u in V, v in S-bar (u, v, w mutually distinct).
VertexSet type1_set(CiOracle& oracle, const VertexSet& prefix,
                    std::map<int, std::vector<int>>* witness = nullptr);

// Vertices w of S-bar \ D with u indep v' | S u {v} but u dep v' | S u {v,w}
// for some u in S and v, v' in S-bar \ D (all distinct).
VertexSet type2_set(CiOracle& oracle, const VertexSet& prefix, const VertexSet& d_set,
                    std::map<int, std::vector<int>>* witness = nullptr);

// Vertices w of S-bar \ D with u dep v | S, u indep w | S u {v}, v dep w | S
// for some u in S and v in S-bar \ D (all distinct).
VertexSet type3_set(CiOracle& oracle, const VertexSet& prefix, const VertexSet& d_set,
                    std::map<int, std::vector<int>>* witness = nullptr);

// Observational prefix-growing round. Requires prefix != V; the result is a
// strictly larger prefix set containing src(S-bar) when the oracle is exact.
PrefixStepTrace learn_prefix(CiOracle& oracle, const VertexSet& prefix);

// Non-target descendants of I \ S, via marginal dependence in regime I.
// The closed set Des[I \ S] is the result united with I \ S.
VertexSet interventional_descendants(CiOracle& oracle, const VertexSet& prefix,
                                     const Intervention& intervention);

// H set for a target v of I \ S: vertices outside S u Des[I \ S] that stay
// dependent on v given everything outside Des[I \ S] (observational regime).
// Sandwiched between Pa(v) and Anc(v) outside S u Des[I \ S].
VertexSet h_set(CiOracle& oracle, const VertexSet& prefix, const Intervention& intervention,
                int v, const VertexSet& closed_descendants);

// Type-IV exclusion set: Des(I \ S) plus targets whose H set is nonempty.
VertexSet type4_set(CiOracle& oracle, const VertexSet& prefix, const Intervention& intervention);

// Interventional prefix-growing round: additionally excludes the type-IV set
// of every available intervention.
PrefixStepTrace learn_prefix_int(CiOracle& oracle, const VertexSet& prefix,
                                 const std::vector<Intervention>& interventions);

}  // namespace ccpg

#endif  // CCPG_PREFIX_HPP
