#pragma once

#include <functional>

// Depth-first enumeration of all windowed gradient configurations on a
// volume. Partial products are carried per root class u, so every quantity
// that depends on the configuration only through the layers (u + h[v]) mod q
// is available for all q root classes at once.

#include <cmath>
#include <string>
#include <vector>

#include "ggm/chains.hpp"
#include "ggm/measures.hpp"
#include "ggm/volume.hpp"

namespace ggm::detail {

using VertexTable = std::vector<std::vector<double>>; // [vertex][layer]

class Enumerator {
  public:
    Enumerator(const FiniteTreeVolume& vol, long cutoff, int q, std::vector<double> q_window)
        : vol_(vol), M_(cutoff), q_(q), q_window_(std::move(q_window))
    {
    }

    /// Boundary-law style vertex weights; blw(k, u) multiplies them over all vertices.
    int add_table(VertexTable table)
    {
        tables_.push_back(std::move(table));
        return static_cast<int>(tables_.size()) - 1;
    }

    /// Pbar product oriented away from pin w; prod(p, u).
    int add_pin(int w, const LayerKernel& kernel)
    {
        std::vector<char> toward(static_cast<std::size_t>(vol_.edge_count()));
        for (int e = 0; e < vol_.edge_count(); ++e) {
            toward[static_cast<std::size_t>(e)] = vol_.in_subtree(w, FiniteTreeVolume::child_of(e)) ? 1 : 0;
        }
        pins_.push_back(Pin{w, &kernel, std::move(toward)});
        return static_cast<int>(pins_.size()) - 1;
    }

    double configurations() const { return configuration_count(vol_, M_); }

    void check_budget(double budget) const
    {
        if (configurations() > budget) {
            throw Error(ErrorKind::volume_too_large,
                        "volume has " + std::to_string(configurations()) + " windowed configurations, budget " +
                            std::to_string(budget));
        }
    }

    // state visible to the visitor
    const std::vector<long>& zeta() const { return zeta_; }
    const std::vector<long>& h() const { return h_; }
    double qprod() const { return qprod_[static_cast<std::size_t>(depth_)]; }
    double blw(int k, int u) const { return level(depth_)[static_cast<std::size_t>(k * q_ + u)]; }
    double prod(int p, int u) const
    {
        return level(depth_)[static_cast<std::size_t>((static_cast<int>(tables_.size()) + p) * q_ + u)];
    }
    int q() const { return q_; }

    /// Calls visit(*this) once per configuration with nonzero Q product.
    template <class Visit>
    void run(Visit&& visit)
    {
        int E = vol_.edge_count();
        stride_ = static_cast<int>(tables_.size() + pins_.size()) * q_;
        levels_.assign(static_cast<std::size_t>((E + 1) * stride_), 1.0);
        qprod_.assign(static_cast<std::size_t>(E + 1), 1.0);
        zeta_.assign(static_cast<std::size_t>(E), 0);
        h_.assign(static_cast<std::size_t>(vol_.size()), 0);
        for (std::size_t k = 0; k < tables_.size(); ++k) {
            for (int u = 0; u < q_; ++u) {
                levels_[k * static_cast<std::size_t>(q_) + static_cast<std::size_t>(u)] =
                    tables_[k][0][static_cast<std::size_t>(u)];
            }
        }
        recurse(0, visit);
    }

  private:
    struct Pin {
        int w;
        const LayerKernel* kernel;
        std::vector<char> toward;
    };

    const double* level(int e) const { return levels_.data() + static_cast<std::ptrdiff_t>(e) * stride_; }
    double* level(int e) { return levels_.data() + static_cast<std::ptrdiff_t>(e) * stride_; }

    template <class Visit>
    void recurse(int e, Visit& visit)
    {
        if (e == vol_.edge_count()) {
            depth_ = e;
            visit(*this);
            return;
        }
        int child = FiniteTreeVolume::child_of(e);
        int parent = vol_.parent(child);
        auto cu = static_cast<std::size_t>(child);
        const double* prev = level(e);
        double* next = level(e + 1);
        int K = static_cast<int>(tables_.size());
        for (long z = -M_; z <= M_; ++z) {
            double qz = q_window_[static_cast<std::size_t>(z + M_)];
            if (qz == 0.0) {
                continue;
            }
            zeta_[static_cast<std::size_t>(e)] = z;
            long hc = h_[static_cast<std::size_t>(parent)] + z;
            h_[cu] = hc;
            qprod_[static_cast<std::size_t>(e + 1)] = qprod_[static_cast<std::size_t>(e)] * qz;
            for (int k = 0; k < K; ++k) {
                const auto& w = tables_[static_cast<std::size_t>(k)][cu];
                for (int u = 0; u < q_; ++u) {
                    next[k * q_ + u] = prev[k * q_ + u] * w[static_cast<std::size_t>(mod_q(u + hc, q_))];
                }
            }
            for (std::size_t p = 0; p < pins_.size(); ++p) {
                const Pin& pin = pins_[p];
                int base = (K + static_cast<int>(p)) * q_;
                bool toward = pin.toward[static_cast<std::size_t>(e)] != 0;
                long hp = h_[static_cast<std::size_t>(parent)];
                for (int u = 0; u < q_; ++u) {
                    double f = toward ? (*pin.kernel)(u + hc, -z) : (*pin.kernel)(u + hp, z);
                    next[base + u] = prev[base + u] * f;
                }
            }
            recurse(e + 1, visit);
        }
    }

    const FiniteTreeVolume& vol_;
    long M_;
    int q_;
    std::vector<double> q_window_;
    std::vector<VertexTable> tables_;
    std::vector<Pin> pins_;

    int stride_ = 0;
    int depth_ = 0;
    std::vector<double> levels_;
    std::vector<double> qprod_;
    std::vector<long> zeta_;
    std::vector<long> h_;
};

/// g(v, t) = W[v][t] prod_children sum_z Q(z) g(c, t + z); returns g.
inline VertexTable subtree_sums(const FiniteTreeVolume& vol, const VertexTable& W, long M, int q,
                                const std::vector<double>& q_window)
{
    VertexTable g = W;
    for (int v = vol.size() - 1; v >= 0; --v) {
        for (int c : vol.children(v)) {
            for (int t = 0; t < q; ++t) {
                double s = 0.0;
                for (long z = -M; z <= M; ++z) {
                    s += q_window[static_cast<std::size_t>(z + M)] *
                         g[static_cast<std::size_t>(c)][static_cast<std::size_t>(mod_q(t + z, q))];
                }
                g[static_cast<std::size_t>(v)][static_cast<std::size_t>(t)] *= s;
            }
        }
    }
    return g;
}

/// Total weight with the class at vertex w fixed to s, for every s: the
/// same sum as subtree_sums but with the tree hung from w.
inline std::vector<double> pin_sums(const FiniteTreeVolume& vol, const VertexTable& W, long M, int q,
                                    const std::vector<double>& q_window, int w)
{
    std::function<std::vector<double>(int, int)> message = [&](int v, int from) {
        std::vector<double> m = W[static_cast<std::size_t>(v)];
        auto absorb = [&](int u) {
            if (u < 0 || u == from) {
                return;
            }
            auto g = message(u, v);
            for (int t = 0; t < q; ++t) {
                double s = 0.0;
                for (long z = -M; z <= M; ++z) {
                    s += q_window[static_cast<std::size_t>(z + M)] * g[static_cast<std::size_t>(mod_q(t + z, q))];
                }
                m[static_cast<std::size_t>(t)] *= s;
            }
        };
        absorb(v == 0 ? -1 : vol.parent(v));
        for (int c : vol.children(v)) {
            absorb(c);
        }
        return m;
    };
    return message(w, -1);
}

} // namespace ggm::detail
