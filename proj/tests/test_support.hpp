#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's numerics; only plain types are shared.

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "ggm/volume.hpp"

namespace oracle {

inline int mod(long i, int q)
{
    long r = i % q;
    return static_cast<int>(r < 0 ? r + q : r);
}

inline double sos(double beta, long m)
{
    return std::exp(-beta * static_cast<double>(std::labs(m)));
}

// sum_{|j| <= J} Q(q j + m), with J large enough for the decay at hand.
inline double wrapped(const std::function<double(long)>& Q, int q, int m, long J = 4000)
{
    double s = 0.0;
    for (long j = -J; j <= J; ++j) {
        s += Q(q * j + m);
    }
    return s;
}

// Kernel rows Q(z) l(s + z) / N(s) on |z| <= M, straight from the definition.
struct Kernel {
    int q;
    long M;
    std::vector<std::vector<double>> rows;
    std::vector<double> N;
    double operator()(long s, long z) const { return rows[static_cast<std::size_t>(mod(s, q))][static_cast<std::size_t>(z + M)]; }
};

inline Kernel kernel(const std::function<double(long)>& Q, const std::vector<double>& l, long M)
{
    int q = static_cast<int>(l.size());
    Kernel k{q, M, {}, {}};
    for (int s = 0; s < q; ++s) {
        std::vector<double> row;
        double n = 0.0;
        for (long z = -M; z <= M; ++z) {
            row.push_back(Q(z) * l[static_cast<std::size_t>(mod(s + z, q))]);
            n += row.back();
        }
        for (double& p : row) {
            p /= n;
        }
        k.rows.push_back(row);
        k.N.push_back(n);
    }
    return k;
}

// Stationary vector of a small stochastic matrix by power iteration.
inline std::vector<double> stationary(const std::vector<std::vector<double>>& P)
{
    std::size_t q = P.size();
    std::vector<double> a(q, 1.0 / static_cast<double>(q));
    for (int it = 0; it < 200000; ++it) {
        std::vector<double> b(q, 0.0);
        for (std::size_t i = 0; i < q; ++i) {
            for (std::size_t j = 0; j < q; ++j) {
                b[j] += a[i] * P[i][j];
            }
        }
        double diff = 0.0;
        for (std::size_t j = 0; j < q; ++j) {
            diff += std::abs(b[j] - a[j]);
        }
        a = b;
        if (diff < 1e-17) {
            break;
        }
    }
    return a;
}

// Wrap a kernel mod q.
inline std::vector<std::vector<double>> fuzzy(const Kernel& k)
{
    std::vector<std::vector<double>> P(static_cast<std::size_t>(k.q), std::vector<double>(static_cast<std::size_t>(k.q), 0.0));
    for (int s = 0; s < k.q; ++s) {
        for (long z = -k.M; z <= k.M; ++z) {
            P[static_cast<std::size_t>(s)][static_cast<std::size_t>(mod(s + z, k.q))] += k(s, z);
        }
    }
    return P;
}

// Every windowed configuration on the volume, odometer order.
inline void for_each_configuration(const ggm::FiniteTreeVolume& vol, long M,
                                   const std::function<void(const ggm::GradientConfiguration&)>& f)
{
    ggm::GradientConfiguration z{std::vector<long>(static_cast<std::size_t>(vol.edge_count()), -M)};
    while (true) {
        f(z);
        std::size_t e = 0;
        while (e < z.increments.size() && z.increments[e] == M) {
            z.increments[e] = -M;
            ++e;
        }
        if (e == z.increments.size()) {
            return;
        }
        ++z.increments[e];
    }
}

inline std::vector<long> heights(const ggm::FiniteTreeVolume& vol, const ggm::GradientConfiguration& z)
{
    std::vector<long> h(static_cast<std::size_t>(vol.size()), 0);
    for (int v = 1; v < vol.size(); ++v) {
        h[static_cast<std::size_t>(v)] = h[static_cast<std::size_t>(vol.parent(v))] + z.increments[static_cast<std::size_t>(v - 1)];
    }
    return h;
}

// Pinned product: walk every edge away from the pin vertex.
inline double pinned_product(const Kernel& k, const ggm::FiniteTreeVolume& vol, const ggm::GradientConfiguration& z,
                             int pin, int s)
{
    auto h = oracle::heights(vol, z);
    long base = s - h[static_cast<std::size_t>(pin)];
    double p = 1.0;
    for (int v = 1; v < vol.size(); ++v) {
        int u = vol.parent(v);
        // is the pin on the child's side?
        int w = pin;
        bool below = false;
        while (w > 0) {
            if (w == v) {
                below = true;
                break;
            }
            w = vol.parent(w);
        }
        long hp = h[static_cast<std::size_t>(u)];
        long hc = h[static_cast<std::size_t>(v)];
        p *= below ? k(base + hc, hp - hc) : k(base + hp, hc - hp);
    }
    return p;
}

} // namespace oracle
