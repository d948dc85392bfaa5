#ifndef CCPG_TESTS_SUPPORT_HPP
#define CCPG_TESTS_SUPPORT_HPP

#include <functional>
#include <vector>

#include "ccpg/dag.hpp"
#include "ccpg/vertex_set.hpp"

namespace ccpg::testing {

// Exhaustive-path d-separation checker, independent of the reachability
// implementation: enumerates every simple path between the endpoint sets and
// applies the collider/non-collider blocking rules directly.
inline bool d_separated_by_paths(const Dag& g, const VertexSet& a, const VertexSet& b,
                                 const VertexSet& c) {
    const int n = g.n();
    const VertexSet cond = (c - a) - b;
    const VertexSet anc_cond = g.anc_closed(cond);

    // Undirected adjacency with direction flags.
    std::vector<std::vector<int>> nbr(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        g.parents(v).for_each([&](int p) { nbr[static_cast<size_t>(v)].push_back(p); });
        g.children(v).for_each([&](int ch) { nbr[static_cast<size_t>(v)].push_back(ch); });
    }

    std::vector<int> path;
    std::vector<bool> on_path(static_cast<size_t>(n), false);
    bool active_found = false;

    std::function<void(int)> extend = [&](int v) {
        if (active_found) return;
        if (b.contains(v) && path.size() >= 1) {
            // Evaluate the completed path: interior vertices only.
            path.push_back(v);
            bool active = true;
            for (size_t i = 1; i + 1 < path.size(); ++i) {
                const int x = path[i];
                const bool collider =
                    g.has_edge(path[i - 1], x) && g.has_edge(path[i + 1], x);
                if (collider ? !anc_cond.contains(x) : cond.contains(x)) {
                    active = false;
                    break;
                }
            }
            if (active) active_found = true;
            path.pop_back();
            return;  // simple paths cannot pass through b
        }
        for (int u : nbr[static_cast<size_t>(v)]) {
            if (on_path[static_cast<size_t>(u)] || a.contains(u)) continue;
            on_path[static_cast<size_t>(u)] = true;
            path.push_back(v);
            extend(u);
            path.pop_back();
            on_path[static_cast<size_t>(u)] = false;
            if (active_found) return;
        }
    };

    std::vector<int> starts = a.members();
    for (int s : starts) {
        on_path[static_cast<size_t>(s)] = true;
        extend(s);
        on_path[static_cast<size_t>(s)] = false;
        if (active_found) return false;
    }
    return true;
}

// All subsets of the given universe restricted to a mask.
inline std::vector<VertexSet> all_subsets(const VertexSet& mask) {
    const std::vector<int> verts = mask.members();
    std::vector<VertexSet> out;
    out.reserve(size_t{1} << verts.size());
    for (size_t bits = 0; bits < (size_t{1} << verts.size()); ++bits) {
        VertexSet s(mask.universe());
        for (size_t i = 0; i < verts.size(); ++i) {
            if ((bits >> i) & 1) s.insert(verts[i]);
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace ccpg::testing

#endif  // CCPG_TESTS_SUPPORT_HPP
