#include "ccpg/dag.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace ccpg {

Dag::Dag(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw std::invalid_argument("Dag: negative vertex count");
    parents_.assign(static_cast<size_t>(n_), VertexSet(n_));
    children_.assign(static_cast<size_t>(n_), VertexSet(n_));

    std::sort(edges_.begin(), edges_.end());
    for (size_t i = 0; i < edges_.size(); ++i) {
        const auto [u, v] = edges_[i];
        if (u < 0 || u >= n_ || v < 0 || v >= n_) {
            throw std::invalid_argument("Dag: edge endpoint out of range");
        }
        if (u == v) throw std::invalid_argument("Dag: self-loop at vertex " + std::to_string(u));
        if (i > 0 && edges_[i] == edges_[i - 1]) {
            throw std::invalid_argument("Dag: duplicate edge");
        }
        parents_[static_cast<size_t>(v)].insert(u);
        children_[static_cast<size_t>(u)].insert(v);
    }

    // Kahn's algorithm, smallest eligible vertex first. Rejects cycles.
    std::vector<int> in_degree(static_cast<size_t>(n_), 0);
    for (const auto& [u, v] : edges_) ++in_degree[static_cast<size_t>(v)];
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int v = 0; v < n_; ++v) {
        if (in_degree[static_cast<size_t>(v)] == 0) ready.push(v);
    }
    topo_order_.reserve(static_cast<size_t>(n_));
    while (!ready.empty()) {
        const int v = ready.top();
        ready.pop();
        topo_order_.push_back(v);
        children_[static_cast<size_t>(v)].for_each([&](int c) {
            if (--in_degree[static_cast<size_t>(c)] == 0) ready.push(c);
        });
    }
    if (static_cast<int>(topo_order_.size()) != n_) {
        throw CycleError("Dag: edge set contains a directed cycle");
    }
}

VertexSet Dag::reach(const VertexSet& start, const std::vector<VertexSet>& step) const {
    if (start.universe() != n_) throw std::invalid_argument("Dag: set universe mismatch");
    VertexSet out(n_);
    VertexSet frontier = start;
    while (!frontier.empty()) {
        VertexSet next(n_);
        frontier.for_each([&](int v) { next |= step[static_cast<size_t>(v)]; });
        next -= out;
        out |= next;
        frontier = next;
    }
    return out;
}

std::vector<Edge> Dag::covered_edges() const {
    std::vector<Edge> out;
    for (const auto& [u, v] : edges_) {
        if (is_covered_edge(u, v)) out.emplace_back(u, v);
    }
    return out;
}

bool Dag::is_covered_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    VertexSet pa_closed_u = parents_[static_cast<size_t>(u)];
    pa_closed_u.insert(u);
    return pa_closed_u == parents_[static_cast<size_t>(v)];
}

bool Dag::d_separated(const VertexSet& a, const VertexSet& b, const VertexSet& c) const {
    if (a.universe() != n_ || b.universe() != n_ || c.universe() != n_) {
        throw std::invalid_argument("Dag: set universe mismatch");
    }
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("Dag: d-separation endpoint sets must be nonempty");
    }
    if (a.intersects(b)) {
        throw std::invalid_argument("Dag: d-separation endpoint sets must be disjoint");
    }
    const VertexSet cond = (c - a) - b;
    const VertexSet anc_cond = anc_closed(cond);

    // Ball-passing reachability: a vertex is visited "up" when entered against
    // an edge (from a child or as a start vertex) and "down" when entered along
    // an edge. Collider traversal requires membership in Anc[cond].
    VertexSet visited_up(n_);
    VertexSet visited_down(n_);
    std::vector<std::pair<int, bool>> stack;  // (vertex, entered_up)
    stack.reserve(static_cast<size_t>(2 * n_));
    a.for_each([&](int v) { stack.emplace_back(v, true); });

    while (!stack.empty()) {
        const auto [v, up] = stack.back();
        stack.pop_back();
        VertexSet& visited = up ? visited_up : visited_down;
        if (visited.contains(v)) continue;
        visited.insert(v);

        if (up && !cond.contains(v)) {
            if (b.contains(v)) return false;
            parents_[static_cast<size_t>(v)].for_each([&](int p) { stack.emplace_back(p, true); });
            children_[static_cast<size_t>(v)].for_each([&](int ch) { stack.emplace_back(ch, false); });
        } else if (!up) {
            if (!cond.contains(v)) {
                if (b.contains(v)) return false;
                children_[static_cast<size_t>(v)].for_each([&](int ch) { stack.emplace_back(ch, false); });
            }
            if (anc_cond.contains(v)) {
                parents_[static_cast<size_t>(v)].for_each([&](int p) { stack.emplace_back(p, true); });
            }
        }
    }
    return true;
}

Dag Dag::mutilated(const Intervention& intervention) const {
    if (intervention.targets.universe() != n_) {
        throw std::invalid_argument("Dag: intervention target universe mismatch");
    }
    std::vector<Edge> kept;
    kept.reserve(edges_.size());
    for (const auto& e : edges_) {
        if (!intervention.targets.contains(e.second)) kept.push_back(e);
    }
    return Dag(n_, std::move(kept));
}

}  // namespace ccpg
