#pragma once

#include <vector>

#include "ggm/error.hpp"

namespace ggm {

/// Finite rooted subtree of the d-regular tree.
///
/// Vertex 0 is the root and parent(v) < v for every other vertex. Edge e
/// joins parent(e + 1) to e + 1 and is oriented away from the root. Leaves
/// (degree 1) form the boundary; every other vertex is an inner vertex.
/// Inner vertices with fewer than d + 1 neighbours are allowed: the missing
/// neighbours are treated as marginalized out.
class FiniteTreeVolume {
  public:
    FiniteTreeVolume(int d, std::vector<int> parents);

    /// Ball of the given radius around the root: root has d + 1 children,
    /// other inner vertices d.
    static FiniteTreeVolume ball(int d, int radius);
    /// Path with n edges, rooted at one end.
    static FiniteTreeVolume path(int d, int edges);
    /// Root plus d + 1 neighbours.
    static FiniteTreeVolume star(int d);

    int d() const { return d_; }
    int size() const { return static_cast<int>(parent_.size()); }
    int edge_count() const { return size() - 1; }
    int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& parents() const { return parent_; }
    const std::vector<int>& children(int v) const { return children_[static_cast<std::size_t>(v)]; }
    int degree(int v) const;
    bool is_boundary(int v) const { return degree(v) == 1; }
    std::vector<int> boundary() const;
    std::vector<int> inner() const;

    /// Edge ending at child vertex v (v > 0).
    static int edge_of(int v) { return v - 1; }
    static int child_of(int e) { return e + 1; }
    int parent_of_edge(int e) const { return parent(e + 1); }

    /// True when u lies in the subtree below v (v itself included).
    bool in_subtree(int u, int v) const;
    int depth(int v) const;
    int distance(int u, int v) const;

    /// Volume after turning boundary vertex z into an inner vertex with d
    /// fresh boundary neighbours. Old ids are kept; new leaves are appended.
    FiniteTreeVolume grown(int z) const;

  private:
    int d_;
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
};

/// Sub-volume induced by a connected vertex set, with maps back to the host.
struct SubVolume {
    FiniteTreeVolume volume;
    std::vector<int> host_vertex;
    std::vector<int> host_edge;
};

/// Induced subtree on a connected set of host vertices. Vertex order and
/// edge orientation follow the host.
SubVolume sub_volume(const FiniteTreeVolume& host, std::vector<int> vertices);

/// Integer increment per edge, child minus parent.
struct GradientConfiguration {
    std::vector<long> increments;

    long operator[](int e) const { return increments[static_cast<std::size_t>(e)]; }
    bool operator==(const GradientConfiguration&) const = default;
};

/// Height of every vertex relative to the root.
std::vector<long> heights(const FiniteTreeVolume& vol, const GradientConfiguration& zeta);

} // namespace ggm
