#include "ccpg/prefix.hpp"

#include <string>

namespace ccpg {

namespace {

void check_prefix_arg(const CiOracle& oracle, const VertexSet& prefix) {
    if (prefix.universe() != oracle.n()) {
        throw std::invalid_argument("prefix set universe does not match oracle");
    }
}

}  // namespace

VertexSet type1_set(CiOracle& oracle, const VertexSet& prefix,
                    std::map<int, std::vector<int>>* witness) {
    check_prefix_arg(oracle, prefix);
    const int n = oracle.n();
    const VertexSet bar = prefix.complement();
    VertexSet out(n);

    for (int w = 0; w < n; ++w) {
        if (!bar.contains(w)) continue;
        VertexSet with_w = prefix;
        with_w.insert(w);
        bool found = false;
        for (int u = 0; u < n && !found; ++u) {
            if (u == w) continue;
            for (int v = 0; v < n && !found; ++v) {
                if (!bar.contains(v) || v == w || v == u) continue;
                if (!oracle.dependent(u, v, prefix) && oracle.dependent(u, v, with_w)) {
                    found = true;
                    out.insert(w);
                    if (witness) (*witness)[w] = {u, v};
                }
            }
        }
    }
    return out;
}

VertexSet type2_set(CiOracle& oracle, const VertexSet& prefix, const VertexSet& d_set,
                    std::map<int, std::vector<int>>* witness) {
    check_prefix_arg(oracle, prefix);
    const int n = oracle.n();
    const VertexSet pool = prefix.complement() - d_set;
    VertexSet out(n);

    for (int w = 0; w < n; ++w) {
        if (!pool.contains(w)) continue;
        bool found = false;
        for (int u = 0; u < n && !found; ++u) {
            if (!prefix.contains(u)) continue;
            for (int v = 0; v < n && !found; ++v) {
                if (!pool.contains(v) || v == w) continue;
                VertexSet with_v = prefix;
                with_v.insert(v);
                VertexSet with_vw = with_v;
                with_vw.insert(w);
                for (int vp = 0; vp < n && !found; ++vp) {
                    if (!pool.contains(vp) || vp == w || vp == v) continue;
                    if (!oracle.dependent(u, vp, with_v) && oracle.dependent(u, vp, with_vw)) {
                        found = true;
                        out.insert(w);
                        if (witness) (*witness)[w] = {u, v, vp};
                    }
                }
            }
        }
    }
    return out;
}

VertexSet type3_set(CiOracle& oracle, const VertexSet& prefix, const VertexSet& d_set,
                    std::map<int, std::vector<int>>* witness) {
    check_prefix_arg(oracle, prefix);
    const int n = oracle.n();
    const VertexSet pool = prefix.complement() - d_set;
    VertexSet out(n);

    for (int w = 0; w < n; ++w) {
        if (!pool.contains(w)) continue;
        bool found = false;
        for (int u = 0; u < n && !found; ++u) {
            if (!prefix.contains(u)) continue;
            for (int v = 0; v < n && !found; ++v) {
                if (!pool.contains(v) || v == w) continue;
                VertexSet with_v = prefix;
                with_v.insert(v);
                if (oracle.dependent(u, v, prefix) && !oracle.dependent(u, w, with_v) &&
                    oracle.dependent(v, w, prefix)) {
                    found = true;
                    out.insert(w);
                    if (witness) (*witness)[w] = {u, v};
                }
            }
        }
    }
    return out;
}

namespace {

PrefixStepTrace finish_step(CiOracle& oracle, const VertexSet& prefix, PrefixStepTrace trace) {
    VertexSet excluded = trace.d_set | trace.e_set | trace.f_set;
    for (const auto& [id, j] : trace.j_sets) excluded |= j;

    trace.input_prefix = prefix;
    trace.output_prefix = prefix | (prefix.complement() - excluded);
    trace.queries_used = oracle.counter();
    if (trace.output_prefix == prefix) {
        throw StallError("prefix step excluded every remaining vertex (S' = S); "
                         "the CI answers are inconsistent with any DAG");
    }
    return trace;
}

}  // namespace

PrefixStepTrace learn_prefix(CiOracle& oracle, const VertexSet& prefix) {
    check_prefix_arg(oracle, prefix);
    if (prefix == VertexSet::full(oracle.n())) {
        throw std::invalid_argument("learn_prefix: prefix already covers all vertices");
    }
    PrefixStepTrace trace;
    trace.d_set = type1_set(oracle, prefix, &trace.d_witness);
    trace.e_set = type2_set(oracle, prefix, trace.d_set, &trace.e_witness);
    trace.f_set = type3_set(oracle, prefix, trace.d_set, &trace.f_witness);
    return finish_step(oracle, prefix, std::move(trace));
}

VertexSet interventional_descendants(CiOracle& oracle, const VertexSet& prefix,
                                     const Intervention& intervention) {
    check_prefix_arg(oracle, prefix);
    if (!oracle.has_regime(intervention.id)) {
        throw RegimeError("interventional_descendants: regime " + std::to_string(intervention.id) +
                          " not available");
    }
    const int n = oracle.n();
    const VertexSet targets = intervention.targets - prefix;
    const VertexSet empty(n);
    VertexSet out(n);
    if (targets.empty()) return out;

    for (int u = 0; u < n; ++u) {
        if (intervention.targets.contains(u)) continue;
        bool hit = false;
        targets.for_each([&](int v) {
            if (!hit && oracle.dependent(u, v, empty, intervention.id)) hit = true;
        });
        if (hit) out.insert(u);
    }
    return out;
}

VertexSet h_set(CiOracle& oracle, const VertexSet& prefix, const Intervention& intervention,
                int v, const VertexSet& closed_descendants) {
    check_prefix_arg(oracle, prefix);
    const int n = oracle.n();
    if (v < 0 || v >= n || !intervention.targets.contains(v) || prefix.contains(v)) {
        throw std::invalid_argument("h_set: vertex must be a target outside the prefix");
    }
    const VertexSet cond = closed_descendants.complement();
    VertexSet out(n);
    for (int u = 0; u < n; ++u) {
        if (u == v || prefix.contains(u) || closed_descendants.contains(u)) continue;
        if (oracle.dependent(u, v, cond)) out.insert(u);
    }
    return out;
}

VertexSet type4_set(CiOracle& oracle, const VertexSet& prefix, const Intervention& intervention) {
    check_prefix_arg(oracle, prefix);
    const VertexSet targets = intervention.targets - prefix;
    VertexSet out(oracle.n());
    if (targets.empty()) return out;

    const VertexSet outside = interventional_descendants(oracle, prefix, intervention);
    const VertexSet within = oracle.descended_targets(prefix, intervention) & targets;
    const VertexSet closed = outside | targets;  // Des[I \ S]

    out = outside | within;
    targets.for_each([&](int v) {
        if (!out.contains(v) && !h_set(oracle, prefix, intervention, v, closed).empty()) {
            out.insert(v);
        }
    });
    return out;
}

PrefixStepTrace learn_prefix_int(CiOracle& oracle, const VertexSet& prefix,
                                 const std::vector<Intervention>& interventions) {
    check_prefix_arg(oracle, prefix);
    if (prefix == VertexSet::full(oracle.n())) {
        throw std::invalid_argument("learn_prefix_int: prefix already covers all vertices");
    }
    PrefixStepTrace trace;
    for (const auto& intervention : interventions) {
        trace.j_sets[intervention.id] = type4_set(oracle, prefix, intervention);
    }
    trace.d_set = type1_set(oracle, prefix, &trace.d_witness);
    trace.e_set = type2_set(oracle, prefix, trace.d_set, &trace.e_witness);
    trace.f_set = type3_set(oracle, prefix, trace.d_set, &trace.f_witness);
    return finish_step(oracle, prefix, std::move(trace));
}

}  // namespace ccpg
