#ifndef CCPG_DAG_HPP
#define CCPG_DAG_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "ccpg/vertex_set.hpp"

namespace ccpg {

using Edge = std::pair<int, int>;

// Cyclic edge sets are rejected at construction with this distinct error.
class CycleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Regime identifier for CI queries: kObservational or the id of an Intervention.
using RegimeId = int;
inline constexpr RegimeId kObservational = -1;

// Hard intervention: incoming edges of every target are removed in the
// mutilated graph and each target's mechanism is replaced by an exogenous one.
struct Intervention {
    RegimeId id = 0;
    VertexSet targets;
};

// Immutable DAG over vertices 0..n-1.
class Dag {
public:
    explicit Dag(int n, std::vector<Edge> edges = {});

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }

    const VertexSet& parents(int v) const { return check_vertex(v), parents_[static_cast<size_t>(v)]; }
    const VertexSet& children(int v) const { return check_vertex(v), children_[static_cast<size_t>(v)]; }
    bool has_edge(int u, int v) const { return check_vertex(u), children_[static_cast<size_t>(u)].contains(v); }

    // Strict closures over a set: union of per-vertex ancestors/descendants.
    // May intersect S itself. The *_closed variants include S.
    VertexSet ancestors(const VertexSet& s) const { return reach(s, parents_); }
    VertexSet descendants(const VertexSet& s) const { return reach(s, children_); }
    VertexSet anc_closed(const VertexSet& s) const { return ancestors(s) | s; }
    VertexSet des_closed(const VertexSet& s) const { return descendants(s) | s; }

    VertexSet ancestors(int v) const { return ancestors(VertexSet::single(n_, v)); }
    VertexSet descendants(int v) const { return descendants(VertexSet::single(n_, v)); }

    // Vertices of s with no ancestor inside s.
    VertexSet src(const VertexSet& s) const { return s - descendants(s); }

    // True iff no vertex of s has an ancestor outside s.
    bool is_prefix_set(const VertexSet& s) const { return !ancestors(s).intersects(s.complement()); }

    // Edges u->v with Pa(u) + u = Pa(v), in ascending (u, v) order.
    std::vector<Edge> covered_edges() const;
    bool is_covered_edge(int u, int v) const;

    // Reachability-based d-separation of a and b given c (a, b nonempty and
    // disjoint; c is taken as c \ (a u b) per the query convention).
    bool d_separated(const VertexSet& a, const VertexSet& b, const VertexSet& c) const;

    // Graph with all edges into intervention targets removed.
    Dag mutilated(const Intervention& intervention) const;

    // Deterministic topological order (smallest eligible vertex first).
    const std::vector<int>& topological_order() const { return topo_order_; }

    VertexSet all_vertices() const { return VertexSet::full(n_); }

    friend bool operator==(const Dag& a, const Dag& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }
    friend bool operator!=(const Dag& a, const Dag& b) { return !(a == b); }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) {
            throw std::invalid_argument("Dag: vertex " + std::to_string(v) + " out of range");
        }
    }
    VertexSet reach(const VertexSet& start, const std::vector<VertexSet>& step) const;

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<VertexSet> parents_;
    std::vector<VertexSet> children_;
    std::vector<int> topo_order_;
};

}  // namespace ccpg

#endif  // CCPG_DAG_HPP
