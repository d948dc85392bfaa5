#ifndef CCPG_VALIDATOR_HPP
#define CCPG_VALIDATOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ccpg/builder.hpp"
#include "ccpg/ci.hpp"
#include "ccpg/dag.hpp"

namespace ccpg {

// Clause-by-clause verdict of a partition-graph check against a ground-truth
// DAG, with concrete witnesses for every failing clause.
struct ValidationReport {
    bool single_source = true;       // |src(V_i)| = 1 for every component
    bool covered_edge = true;        // |V_i| > 1 implies a covered edge in V_i
                                     // (unintervened when interventions given)
    bool absent_edges_consistent = true;  // no i->j in D implies no G-edge V_i -> V_j
    bool present_edges_witnessed = true;  // i->j in D implies some u in V_i parents src(V_j)
    bool topologically_ordered = true;    // D edges respect i < j
    bool prefix_chain = true;             // cumulative layers are prefix sets
    std::vector<std::string> failures;

    bool pass() const {
        return single_source && covered_edge && absent_edges_consistent &&
               present_edges_witnessed && topologically_ordered && prefix_chain;
    }
};

// Checks every clause of the partition-graph definition. Components must
// partition the vertices of g_true (argument error otherwise). When
// interventions are given, multi-vertex components must contain a covered
// edge untouched by every intervention.
ValidationReport check_ccpg(const Dag& g_true, const CcpgOutput& output,
                            const std::vector<Intervention>& interventions = {});

// True iff every covered edge (u, v) of g is cut by some intervention, i.e.
// |I n {u,v}| = 1.
bool is_verifying_set(const Dag& g, const std::vector<Intervention>& interventions);

struct ProbeResult {
    long satisfied = 0;   // trials whose premises held
    long violations = 0;  // premise-satisfying trials that broke the conclusion
};

// Randomized check of the v-structure proxy: u indep v | S and u dep v | S u {z}
// force u, v outside Des[z]. Must report zero violations on every DAG.
ProbeResult proxy_vstructure_probe(const Dag& g, CiOracle& oracle, long trials, uint64_t seed);

// Randomized check of the Meek-rule-1 proxy on random order-prefix sets S:
// u in S, v, w outside, u dep v | S and u indep w | S u {v} force v outside
// Des[w]. Must report zero violations.
ProbeResult proxy_meek1_probe(const Dag& g, CiOracle& oracle, long trials, uint64_t seed);

}  // namespace ccpg

#endif  // CCPG_VALIDATOR_HPP
