#include "ccpg/ci.hpp"

#include <utility>

namespace ccpg {

CiQuery::CiQuery(VertexSet a, VertexSet b, VertexSet cond, RegimeId regime)
    : a_(std::move(a)), b_(std::move(b)), cond_(std::move(cond)), regime_(regime) {
    if (a_.universe() != b_.universe() || a_.universe() != cond_.universe()) {
        throw std::invalid_argument("CiQuery: set universe mismatch");
    }
    if (a_.empty() || b_.empty()) {
        throw std::invalid_argument("CiQuery: endpoint sets must be nonempty");
    }
    if (a_.intersects(b_)) {
        throw std::invalid_argument("CiQuery: endpoint sets must be disjoint");
    }
    cond_ -= a_;
    cond_ -= b_;
    if (b_.lex_less(a_)) std::swap(a_, b_);
}

size_t CiQuery::hash() const {
    size_t h = a_.hash();
    h ^= b_.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= cond_.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= static_cast<size_t>(regime_) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

bool CiOracle::dependent(const CiQuery& q) {
    ++counter_.total;
    auto it = cache_.find(q);
    if (it == cache_.end()) {
        ++counter_.unique;
        const bool answer = evaluate(q);
        cache_.emplace(q, answer);
        return answer;
    }
    if (!cache_enabled_) {
        it->second = evaluate(q);
    }
    return it->second;
}

VertexSet CiOracle::descended_targets(const VertexSet& prefix, const Intervention& intervention) {
    const int nv = n();
    const VertexSet targets = intervention.targets - prefix;
    VertexSet out(nv);
    if (targets.count() <= 1) return out;

    // Regime-I marginal dependence yields the non-target descendants of the
    // target set (these queries are shared with interventional_descendants).
    VertexSet non_target_desc(nv);
    const VertexSet empty(nv);
    for (int u = 0; u < nv; ++u) {
        if (intervention.targets.contains(u)) continue;
        bool hit = false;
        targets.for_each([&](int v) {
            if (!hit && dependent(u, v, empty, intervention.id)) hit = true;
        });
        if (hit) non_target_desc.insert(u);
    }

    // A target whose full-conditioning dependence on a non-target blob vertex
    // disappears under the intervention has lost an incoming edge, so it sits
    // below another target. The contrast is heuristic: a shared target-child
    // can mimic the pattern, and target-to-target edges with no non-target
    // witness stay invisible.
    const VertexSet everything = VertexSet::full(nv);
    targets.for_each([&](int v) {
        bool found = false;
        non_target_desc.for_each([&](int u) {
            if (found) return;
            if (dependent(u, v, empty, intervention.id)) return;  // u sits below v
            if (dependent(u, v, everything, kObservational) &&
                !dependent(u, v, everything, intervention.id)) {
                found = true;
            }
        });
        if (found) out.insert(v);
    });
    return out;
}

ExactOracle::ExactOracle(Dag truth, std::vector<Intervention> interventions)
    : truth_(std::move(truth)) {
    for (const auto& intervention : interventions) {
        if (intervention.id == kObservational) {
            throw std::invalid_argument("ExactOracle: intervention id collides with observational regime");
        }
        if (!mutilated_.emplace(intervention.id, truth_.mutilated(intervention)).second) {
            throw std::invalid_argument("ExactOracle: duplicate intervention id");
        }
    }
}

bool ExactOracle::has_regime(RegimeId regime) const {
    return regime == kObservational || mutilated_.count(regime) > 0;
}

const Dag& ExactOracle::regime_graph(RegimeId regime) const {
    if (regime == kObservational) return truth_;
    auto it = mutilated_.find(regime);
    if (it == mutilated_.end()) {
        throw RegimeError("ExactOracle: unknown regime " + std::to_string(regime));
    }
    return it->second;
}

bool ExactOracle::evaluate(const CiQuery& q) {
    return !regime_graph(q.regime()).d_separated(q.a(), q.b(), q.cond());
}

VertexSet ExactOracle::descended_targets(const VertexSet& prefix, const Intervention& intervention) {
    const VertexSet targets = intervention.targets - prefix;
    return truth_.descendants(targets) & targets;
}

}  // namespace ccpg
