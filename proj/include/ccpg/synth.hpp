#ifndef CCPG_SYNTH_HPP
#define CCPG_SYNTH_HPP

#include <cstdint>
#include <vector>

#include "ccpg/dag.hpp"
#include "ccpg/dataset.hpp"

namespace ccpg {

// Linear structural model with additive Gaussian noise over a DAG.
struct SemModel {
    Dag g{0};
    std::vector<double> weights;    // aligned with g.edges()
    std::vector<double> noise_std;  // per vertex, positive

    double weight(int u, int v) const;
    void validate() const;
};

// Uniform random permutation, then each forward pair kept with probability
// edge_prob. Deterministic per seed.
Dag random_dag(int n, double edge_prob, uint64_t seed);

// Leaves 0..n-2 all pointing at n-1.
Dag in_star(int n);

// 0 -> 1 -> ... -> n-1.
Dag chain(int n);

// Edge weights drawn uniformly from +-[weight_low, weight_high] with uniform
// sign; unit noise. Magnitudes bounded away from zero keep finite-sample CI
// decisions stable.
SemModel random_sem(const Dag& g, double weight_low, double weight_high, uint64_t seed);
inline SemModel random_sem(const Dag& g, uint64_t seed) { return random_sem(g, 0.5, 1.5, seed); }

// Ancestral sampling in topological order. A hard intervention replaces each
// target's equation by a fresh standard normal.
Dataset sample(const SemModel& model, long m, uint64_t seed);
Dataset sample_intervened(const SemModel& model, const Intervention& intervention, long m,
                          uint64_t seed);

// Exact covariance of the model (and of its intervened version).
std::vector<double> analytic_covariance(const SemModel& model);
std::vector<double> analytic_covariance(const SemModel& model, const Intervention& intervention);

// One singleton intervention on the tail of each covered edge; cuts every
// covered edge, hence verifying.
std::vector<Intervention> covered_edge_verifying_set(const Dag& g);

// ceil(log2 n) interventions I_b = {v : bit b of v is set}; separates every
// vertex pair, hence verifying for any DAG on n vertices.
std::vector<Intervention> log2_intervention_set(int n);

}  // namespace ccpg

#endif  // CCPG_SYNTH_HPP
