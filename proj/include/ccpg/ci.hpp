#ifndef CCPG_CI_HPP
#define CCPG_CI_HPP

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ccpg/dag.hpp"
#include "ccpg/vertex_set.hpp"

namespace ccpg {

class RegimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Canonical conditional-independence query. The conditioning set is stored as
// cond \ (a u b), and (a, b) are ordered with the lexicographically smaller
// set first so that symmetric queries share one cache entry.
class CiQuery {
public:
    CiQuery(VertexSet a, VertexSet b, VertexSet cond, RegimeId regime = kObservational);

    const VertexSet& a() const { return a_; }
    const VertexSet& b() const { return b_; }
    const VertexSet& cond() const { return cond_; }
    RegimeId regime() const { return regime_; }

    friend bool operator==(const CiQuery& x, const CiQuery& y) {
        return x.regime_ == y.regime_ && x.a_ == y.a_ && x.b_ == y.b_ && x.cond_ == y.cond_;
    }

    size_t hash() const;

private:
    VertexSet a_;
    VertexSet b_;
    VertexSet cond_;
    RegimeId regime_;
};

struct CiQueryHash {
    size_t operator()(const CiQuery& q) const noexcept { return q.hash(); }
};

struct CiCounter {
    uint64_t total = 0;   // every oracle invocation
    uint64_t unique = 0;  // distinct canonical queries
};

// Uniform CI-query interface with result caching and test counting. Oracles
// are single-writer: one oracle per concurrent run.
class CiOracle {
public:
    virtual ~CiOracle() = default;

    bool dependent(const CiQuery& q);
    bool dependent(const VertexSet& a, const VertexSet& b, const VertexSet& cond,
                   RegimeId regime = kObservational) {
        return dependent(CiQuery(a, b, cond, regime));
    }
    bool dependent(int a, int b, const VertexSet& cond, RegimeId regime = kObservational) {
        return dependent(VertexSet::single(n(), a), VertexSet::single(n(), b), cond, regime);
    }

    virtual int n() const = 0;
    virtual bool has_regime(RegimeId regime) const = 0;

    const CiCounter& counter() const { return counter_; }
    void reset_counter() { counter_ = CiCounter{}; }

    // Answers are identical with caching on or off; only recomputation differs.
    void set_cache_enabled(bool enabled) { cache_enabled_ = enabled; }

    // Targets of I \ S that are descendants of another target of I \ S. This
    // completes the descendant set of I \ S, whose target-internal part is not
    // determined by the marginal regime-I tests alone. Exact oracles override
    // this with the structural answer; the default is a best-effort estimate
    // from full-conditioning contrasts between the observational and the
    // intervened regime.
    virtual VertexSet descended_targets(const VertexSet& prefix, const Intervention& intervention);

protected:
    virtual bool evaluate(const CiQuery& q) = 0;

private:
    std::unordered_map<CiQuery, bool, CiQueryHash> cache_;
    CiCounter counter_;
    bool cache_enabled_ = true;
};

// Faithfulness oracle: dependence is exactly the negation of d-separation in
// the ground-truth DAG (or its mutilated version for an intervened regime).
class ExactOracle : public CiOracle {
public:
    explicit ExactOracle(Dag truth, std::vector<Intervention> interventions = {});

    int n() const override { return truth_.n(); }
    bool has_regime(RegimeId regime) const override;

    const Dag& truth() const { return truth_; }
    const Dag& regime_graph(RegimeId regime) const;

    VertexSet descended_targets(const VertexSet& prefix, const Intervention& intervention) override;

protected:
    bool evaluate(const CiQuery& q) override;

private:
    Dag truth_;
    std::unordered_map<RegimeId, Dag> mutilated_;
};

}  // namespace ccpg

#endif  // CCPG_CI_HPP
