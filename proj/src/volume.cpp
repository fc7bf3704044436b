#include "ggm/volume.hpp"

#include <algorithm>
#include <string>

namespace ggm {

FiniteTreeVolume::FiniteTreeVolume(int d, std::vector<int> parents) : d_(d), parent_(std::move(parents))
{
    require(d >= 1, "degree parameter d must be at least 1");
    require(!parent_.empty(), "volume needs at least one vertex");
    parent_[0] = -1;
    children_.resize(parent_.size());
    for (int v = 1; v < size(); ++v) {
        int p = parent_[static_cast<std::size_t>(v)];
        require(p >= 0 && p < v, "parent of vertex " + std::to_string(v) + " must precede it");
        children_[static_cast<std::size_t>(p)].push_back(v);
    }
    for (int v = 0; v < size(); ++v) {
        require(degree(v) <= d + 1, "vertex " + std::to_string(v) + " has more than d + 1 neighbours");
    }
}

FiniteTreeVolume FiniteTreeVolume::ball(int d, int radius)
{
    require(radius >= 0, "radius must be non-negative");
    std::vector<int> parents{-1};
    std::vector<int> frontier{0};
    for (int r = 0; r < radius; ++r) {
        std::vector<int> next;
        for (int v : frontier) {
            int kids = v == 0 ? d + 1 : d;
            for (int k = 0; k < kids; ++k) {
                next.push_back(static_cast<int>(parents.size()));
                parents.push_back(v);
            }
        }
        frontier = std::move(next);
    }
    return FiniteTreeVolume(d, std::move(parents));
}

FiniteTreeVolume FiniteTreeVolume::path(int d, int edges)
{
    require(edges >= 0, "path length must be non-negative");
    std::vector<int> parents{-1};
    for (int v = 1; v <= edges; ++v) {
        parents.push_back(v - 1);
    }
    return FiniteTreeVolume(d, std::move(parents));
}

FiniteTreeVolume FiniteTreeVolume::star(int d)
{
    return ball(d, 1);
}

int FiniteTreeVolume::degree(int v) const
{
    int deg = static_cast<int>(children(v).size());
    return v == 0 ? deg : deg + 1;
}

std::vector<int> FiniteTreeVolume::boundary() const
{
    std::vector<int> out;
    for (int v = 0; v < size(); ++v) {
        if (is_boundary(v)) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<int> FiniteTreeVolume::inner() const
{
    std::vector<int> out;
    for (int v = 0; v < size(); ++v) {
        if (!is_boundary(v)) {
            out.push_back(v);
        }
    }
    return out;
}

bool FiniteTreeVolume::in_subtree(int u, int v) const
{
    while (u > v) {
        u = parent(u);
    }
    return u == v;
}

int FiniteTreeVolume::depth(int v) const
{
    int k = 0;
    while (v > 0) {
        v = parent(v);
        ++k;
    }
    return k;
}

int FiniteTreeVolume::distance(int u, int v) const
{
    int k = 0;
    while (u != v) {
        if (u > v) {
            u = parent(u);
        } else {
            v = parent(v);
        }
        ++k;
    }
    return k;
}

FiniteTreeVolume FiniteTreeVolume::grown(int z) const
{
    require(z >= 0 && z < size(), "growth site outside the volume");
    require(is_boundary(z), "growth site must be a boundary vertex");
    std::vector<int> parents(parent_);
    // a boundary root (size-2 path) already has one neighbour as child
    int missing = d_ + 1 - degree(z);
    for (int k = 0; k < missing; ++k) {
        parents.push_back(z);
    }
    return FiniteTreeVolume(d_, std::move(parents));
}

SubVolume sub_volume(const FiniteTreeVolume& host, std::vector<int> vertices)
{
    require(!vertices.empty(), "sub-volume needs at least one vertex");
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    require(vertices.front() >= 0 && vertices.back() < host.size(), "sub-volume vertex outside host");

    std::vector<int> local(static_cast<std::size_t>(host.size()), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        local[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
    }
    // the smallest id is the unique vertex whose host parent lies outside
    std::vector<int> parents{-1};
    std::vector<int> host_edge;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        int hp = host.parent(vertices[i]);
        require(hp >= 0 && local[static_cast<std::size_t>(hp)] >= 0, "sub-volume vertex set is not connected");
        parents.push_back(local[static_cast<std::size_t>(hp)]);
        host_edge.push_back(FiniteTreeVolume::edge_of(vertices[i]));
    }
    return SubVolume{FiniteTreeVolume(host.d(), std::move(parents)), std::move(vertices), std::move(host_edge)};
}

std::vector<long> heights(const FiniteTreeVolume& vol, const GradientConfiguration& zeta)
{
    require(static_cast<int>(zeta.increments.size()) == vol.edge_count(),
            "configuration does not match the volume's edges");
    std::vector<long> h(static_cast<std::size_t>(vol.size()), 0);
    for (int v = 1; v < vol.size(); ++v) {
        h[static_cast<std::size_t>(v)] = h[static_cast<std::size_t>(vol.parent(v))] + zeta[FiniteTreeVolume::edge_of(v)];
    }
    return h;
}

} // namespace ggm
