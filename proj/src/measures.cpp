#include "ggm/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "enumeration.hpp"
#include "ggm/parallel.hpp"
#include "ggm/random.hpp"

namespace ggm {
namespace {

using detail::Enumerator;
using detail::VertexTable;

std::vector<double> q_window(const LayerKernel& k)
{
    long M = k.cutoff();
    std::vector<double> out;
    for (long z = -M; z <= M; ++z) {
        out.push_back(k.has_source() ? k.Q(z) : 1.0);
    }
    return out;
}

// Leaves carry l(t); other vertices N(t)^{d + 1 - degree}.
VertexTable bl_table(const LayerKernel& k, const FiniteTreeVolume& vol)
{
    const auto& l = k.law();
    int q = k.period();
    VertexTable W(static_cast<std::size_t>(vol.size()), std::vector<double>(static_cast<std::size_t>(q)));
    for (int v = 0; v < vol.size(); ++v) {
        for (int t = 0; t < q; ++t) {
            double w = vol.is_boundary(v) ? l(t) : std::pow(k.window_normalizer(t), vol.d() + 1 - vol.degree(v));
            W[static_cast<std::size_t>(v)][static_cast<std::size_t>(t)] = w;
        }
    }
    return W;
}

void check_config(const FiniteTreeVolume& vol, long M, const GradientConfiguration& zeta)
{
    require(static_cast<int>(zeta.increments.size()) == vol.edge_count(),
            "configuration has " + std::to_string(zeta.increments.size()) + " increments, volume has " +
                std::to_string(vol.edge_count()) + " edges");
    for (std::size_t e = 0; e < zeta.increments.size(); ++e) {
        if (std::abs(zeta.increments[e]) > M) {
            throw Error(ErrorKind::out_of_window, "increment " + std::to_string(zeta.increments[e]) + " on edge " +
                                                      std::to_string(e) + " exceeds window M = " + std::to_string(M));
        }
    }
}

void check_vertex(const FiniteTreeVolume& vol, int v, const char* what)
{
    require(v >= 0 && v < vol.size(), std::string(what) + " " + std::to_string(v) + " is not in the volume");
}

// toward[e] is set when edge e points at w (w below its child).
std::vector<char> orientation(const FiniteTreeVolume& vol, int w)
{
    std::vector<char> toward(static_cast<std::size_t>(vol.edge_count()));
    for (int e = 0; e < vol.edge_count(); ++e) {
        toward[static_cast<std::size_t>(e)] = vol.in_subtree(w, FiniteTreeVolume::child_of(e)) ? 1 : 0;
    }
    return toward;
}

// Pbar product oriented away from the pin, with root class u.
double product_from(const LayerKernel& k, const FiniteTreeVolume& vol, const std::vector<long>& h,
                    const GradientConfiguration& zeta, const std::vector<char>& toward, long u)
{
    double p = 1.0;
    for (int e = 0; e < vol.edge_count(); ++e) {
        int c = FiniteTreeVolume::child_of(e);
        long z = zeta[e];
        if (toward[static_cast<std::size_t>(e)]) {
            p *= k(u + h[static_cast<std::size_t>(c)], -z);
        } else {
            p *= k(u + h[static_cast<std::size_t>(vol.parent(c))], z);
        }
    }
    return p;
}

double bl_weight(const VertexTable& W, const FiniteTreeVolume& vol, const std::vector<long>& h, int q, long u)
{
    double w = 1.0;
    for (int v = 0; v < vol.size(); ++v) {
        w *= W[static_cast<std::size_t>(v)][static_cast<std::size_t>(mod_q(u + h[static_cast<std::size_t>(v)], q))];
    }
    return w;
}

double q_product(const LayerKernel& k, const GradientConfiguration& zeta)
{
    double p = 1.0;
    for (long z : zeta.increments) {
        p *= k.Q(z);
    }
    return p;
}

int root_class(int s, long h_pin, int q)
{
    return mod_q(s - h_pin, q);
}

} // namespace

GGMSpec make_ggm_spec(const LayerKernel& kernel, const FiniteTreeVolume& volume, int pin_vertex)
{
    check_vertex(volume, pin_vertex, "pin vertex");
    return GGMSpec{kernel, fuzzy_transform(kernel), volume, pin_vertex};
}

double configuration_count(const FiniteTreeVolume& volume, long cutoff)
{
    return std::pow(static_cast<double>(2 * cutoff + 1), volume.edge_count());
}

double pinned_prob_product(const PinnedMeasureSpec& spec, const GradientConfiguration& zeta)
{
    check_vertex(spec.volume, spec.pin_vertex, "pin vertex");
    check_config(spec.volume, spec.kernel.cutoff(), zeta);
    auto h = heights(spec.volume, zeta);
    int q = spec.kernel.period();
    long u = root_class(spec.pin_class, h[static_cast<std::size_t>(spec.pin_vertex)], q);
    return product_from(spec.kernel, spec.volume, h, zeta, orientation(spec.volume, spec.pin_vertex), u);
}

double pinned_prob_bl(const PinnedMeasureSpec& spec, const GradientConfiguration& zeta)
{
    check_vertex(spec.volume, spec.pin_vertex, "pin vertex");
    check_config(spec.volume, spec.kernel.cutoff(), zeta);
    const auto& k = spec.kernel;
    int q = k.period();
    auto W = bl_table(k, spec.volume);
    auto Z = detail::pin_sums(spec.volume, W, k.cutoff(), q, q_window(k), spec.pin_vertex);
    auto h = heights(spec.volume, zeta);
    long u = root_class(spec.pin_class, h[static_cast<std::size_t>(spec.pin_vertex)], q);
    return bl_weight(W, spec.volume, h, q, u) * q_product(k, zeta) / Z[static_cast<std::size_t>(spec.pin_class)];
}

double ggm_prob_at(const GGMSpec& spec, const GradientConfiguration& zeta, int pin_vertex)
{
    check_vertex(spec.volume, pin_vertex, "pin vertex");
    check_config(spec.volume, spec.kernel.cutoff(), zeta);
    auto h = heights(spec.volume, zeta);
    int q = spec.kernel.period();
    auto toward = orientation(spec.volume, pin_vertex);
    double p = 0.0;
    for (int s = 0; s < q; ++s) {
        long u = root_class(s, h[static_cast<std::size_t>(pin_vertex)], q);
        p += spec.chain.alpha[static_cast<std::size_t>(s)] * product_from(spec.kernel, spec.volume, h, zeta, toward, u);
    }
    return p;
}

double ggm_prob(const GGMSpec& spec, const GradientConfiguration& zeta)
{
    return ggm_prob_at(spec, zeta, spec.pin_vertex);
}

double alt_ggm_prob(const LayerKernel& kernel, const FiniteTreeVolume& volume, const GradientConfiguration& zeta)
{
    check_config(volume, kernel.cutoff(), zeta);
    int q = kernel.period();
    auto W = bl_table(kernel, volume);
    auto g = detail::subtree_sums(volume, W, kernel.cutoff(), q, q_window(kernel));
    auto h = heights(volume, zeta);
    double num = 0.0;
    double den = 0.0;
    for (int u = 0; u < q; ++u) {
        num += bl_weight(W, volume, h, q, u);
        den += g[0][static_cast<std::size_t>(u)];
    }
    return num * q_product(kernel, zeta) / den;
}

namespace {

// Neumaier compensated sum; mass totals run over up to 1e8 terms.
struct Accumulator {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x)
    {
        double t = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

} // namespace

RepresentationGaps compare_representations(const GGMSpec& spec, const EnumerationBudget& budget)
{
    const auto& k = spec.kernel;
    const auto& vol = spec.volume;
    check_vertex(vol, spec.pin_vertex, "pin vertex");
    int q = k.period();
    auto Qw = q_window(k);
    auto W = bl_table(k, vol);
    auto g = detail::subtree_sums(vol, W, k.cutoff(), q, Qw);
    auto Zpin = detail::pin_sums(vol, W, k.cutoff(), q, Qw, spec.pin_vertex);
    double Ztot = 0.0;
    for (int u = 0; u < q; ++u) {
        Ztot += g[0][static_cast<std::size_t>(u)];
    }

    Enumerator en(vol, k.cutoff(), q, Qw);
    en.check_budget(budget.max_configurations);
    int table = en.add_table(W);
    int pin = en.add_pin(spec.pin_vertex, k);

    RepresentationGaps out;
    std::vector<Accumulator> product_mass(static_cast<std::size_t>(q));
    std::vector<Accumulator> bl_mass(static_cast<std::size_t>(q));
    Accumulator ggm_mass;
    Accumulator alt_mass;
    const auto w = static_cast<std::size_t>(spec.pin_vertex);
    en.run([&](const Enumerator& st) {
        ++out.configurations;
        double mix = 0.0;
        double alt = 0.0;
        for (int s = 0; s < q; ++s) {
            int u = root_class(s, st.h()[w], q);
            double pp = st.prod(pin, u);
            double pb = st.blw(table, u) * st.qprod() / Zpin[static_cast<std::size_t>(s)];
            out.pinned = std::max(out.pinned, std::abs(pp - pb));
            product_mass[static_cast<std::size_t>(s)].add(pp);
            bl_mass[static_cast<std::size_t>(s)].add(pb);
            mix += spec.chain.alpha[static_cast<std::size_t>(s)] * pp;
            alt += st.blw(table, s);
        }
        alt *= st.qprod() / Ztot;
        out.ggm = std::max(out.ggm, std::abs(mix - alt));
        ggm_mass.add(mix);
        alt_mass.add(alt);
    });
    for (int s = 0; s < q; ++s) {
        out.product_mass_error = std::max(out.product_mass_error, std::abs(product_mass[static_cast<std::size_t>(s)].value() - 1.0));
        out.bl_mass_error = std::max(out.bl_mass_error, std::abs(bl_mass[static_cast<std::size_t>(s)].value() - 1.0));
    }
    out.ggm_mass_error = std::abs(ggm_mass.value() - 1.0);
    out.alt_mass_error = std::abs(alt_mass.value() - 1.0);
    return out;
}

std::vector<int> induced_layers(const FiniteTreeVolume& volume, const GradientConfiguration& zeta, int q,
                                int pin_vertex, int pin_class)
{
    check_vertex(volume, pin_vertex, "pin vertex");
    auto h = heights(volume, zeta);
    long u = root_class(pin_class, h[static_cast<std::size_t>(pin_vertex)], q);
    std::vector<int> layers;
    for (long hv : h) {
        layers.push_back(mod_q(u + hv, q));
    }
    return layers;
}

double coupling_expectation(const GGMSpec& spec, const CouplingFunction& F, const EnumerationBudget& budget)
{
    const auto& k = spec.kernel;
    int q = k.period();
    Enumerator en(spec.volume, k.cutoff(), q, q_window(k));
    en.check_budget(budget.max_configurations);
    int pin = en.add_pin(spec.pin_vertex, k);
    const auto w = static_cast<std::size_t>(spec.pin_vertex);
    double total = 0.0;
    GradientConfiguration zeta;
    std::vector<int> layers(static_cast<std::size_t>(spec.volume.size()));
    en.run([&](const Enumerator& st) {
        zeta.increments = st.zeta();
        for (int s = 0; s < q; ++s) {
            int u = root_class(s, st.h()[w], q);
            double weight = spec.chain.alpha[static_cast<std::size_t>(s)] * st.prod(pin, u);
            if (weight == 0.0) {
                continue;
            }
            for (std::size_t v = 0; v < layers.size(); ++v) {
                layers[v] = mod_q(u + st.h()[v], q);
            }
            total += weight * F(zeta, layers);
        }
    });
    return total;
}

std::map<std::vector<long>, double> ggm_marginal(const GGMSpec& spec, const std::vector<int>& edges,
                                                 const EnumerationBudget& budget)
{
    for (int e : edges) {
        require(e >= 0 && e < spec.volume.edge_count(), "marginal edge " + std::to_string(e) + " is not in the volume");
    }
    const auto& k = spec.kernel;
    int q = k.period();
    Enumerator en(spec.volume, k.cutoff(), q, q_window(k));
    en.check_budget(budget.max_configurations);
    int pin = en.add_pin(spec.pin_vertex, k);
    const auto w = static_cast<std::size_t>(spec.pin_vertex);
    std::map<std::vector<long>, double> out;
    std::vector<long> key(edges.size());
    en.run([&](const Enumerator& st) {
        double p = 0.0;
        for (int s = 0; s < q; ++s) {
            p += spec.chain.alpha[static_cast<std::size_t>(s)] * st.prod(pin, root_class(s, st.h()[w], q));
        }
        for (std::size_t i = 0; i < edges.size(); ++i) {
            key[i] = st.zeta()[static_cast<std::size_t>(edges[i])];
        }
        out[key] += p;
    });
    return out;
}

std::vector<GradientConfiguration> sample_ggm(const GGMSpec& spec, std::uint64_t seed, std::size_t n, int workers)
{
    const auto& k = spec.kernel;
    const auto& vol = spec.volume;
    long M = k.cutoff();
    std::vector<GradientConfiguration> out(n);
    std::size_t blocks = (n + kSampleBlock - 1) / kSampleBlock;
    parallel_for(
        blocks,
        [&](std::size_t b) {
            auto rng = stream_engine(seed, b);
            std::vector<int> layer(static_cast<std::size_t>(vol.size()));
            std::size_t end = std::min(n, (b + 1) * kSampleBlock);
            for (std::size_t i = b * kSampleBlock; i < end; ++i) {
                auto& zeta = out[i].increments;
                zeta.resize(static_cast<std::size_t>(vol.edge_count()));
                layer[0] = static_cast<int>(draw_index(rng, spec.chain.alpha));
                for (int v = 1; v < vol.size(); ++v) {
                    int lp = layer[static_cast<std::size_t>(vol.parent(v))];
                    long z = static_cast<long>(draw_index(rng, k.row(lp))) - M;
                    zeta[static_cast<std::size_t>(FiniteTreeVolume::edge_of(v))] = z;
                    layer[static_cast<std::size_t>(v)] = mod_q(lp + z, k.period());
                }
            }
        },
        workers > 0 ? workers : worker_count());
    return out;
}

GradientConfiguration sample_ggm(const GGMSpec& spec, std::uint64_t seed)
{
    return sample_ggm(spec, seed, 1, 1).front();
}

double check_consistency(const PinnedMeasureSpec& spec, const std::vector<int>& inner,
                         const EnumerationBudget& budget)
{
    const auto& k = spec.kernel;
    const auto& outer = spec.volume;
    check_vertex(outer, spec.pin_vertex, "pin vertex");
    require(std::find(inner.begin(), inner.end(), 0) != inner.end(), "inner volume must contain the root");
    require(std::find(inner.begin(), inner.end(), spec.pin_vertex) != inner.end(),
            "inner volume must contain the pin vertex");
    int q = k.period();
    long M = k.cutoff();
    auto Qw = q_window(k);
    auto sub = sub_volume(outer, inner);

    auto W_out = bl_table(k, outer);
    auto g_out = detail::subtree_sums(outer, W_out, M, q, Qw);
    std::vector<char> is_inner(static_cast<std::size_t>(outer.size()), 0);
    for (int v : sub.host_vertex) {
        is_inner[static_cast<std::size_t>(v)] = 1;
    }
    // outer weights with every subtree hanging off the inner set summed out
    VertexTable W_marg;
    for (int v : sub.host_vertex) {
        std::vector<double> w = W_out[static_cast<std::size_t>(v)];
        for (int c : outer.children(v)) {
            if (is_inner[static_cast<std::size_t>(c)]) {
                continue;
            }
            for (int t = 0; t < q; ++t) {
                double s = 0.0;
                for (long z = -M; z <= M; ++z) {
                    s += Qw[static_cast<std::size_t>(z + M)] *
                         g_out[static_cast<std::size_t>(c)][static_cast<std::size_t>(mod_q(t + z, q))];
                }
                w[static_cast<std::size_t>(t)] *= s;
            }
        }
        W_marg.push_back(std::move(w));
    }
    auto W_in = bl_table(k, sub.volume);
    auto g_in = detail::subtree_sums(sub.volume, W_in, M, q, Qw);

    Enumerator en(sub.volume, M, q, Qw);
    en.check_budget(budget.max_configurations);
    int marg = en.add_table(W_marg);
    int direct = en.add_table(W_in);
    int w_local = static_cast<int>(std::find(sub.host_vertex.begin(), sub.host_vertex.end(), spec.pin_vertex) -
                                   sub.host_vertex.begin());
    auto Zout_pin = detail::pin_sums(outer, W_out, M, q, Qw, spec.pin_vertex);
    auto Zin_pin = detail::pin_sums(sub.volume, W_in, M, q, Qw, w_local);
    double Zout = 0.0;
    double Zin = 0.0;
    for (int u = 0; u < q; ++u) {
        Zout += g_out[0][static_cast<std::size_t>(u)];
        Zin += g_in[0][static_cast<std::size_t>(u)];
    }
    std::vector<double> tv_pinned(static_cast<std::size_t>(q), 0.0);
    double tv_mix = 0.0;
    en.run([&](const Enumerator& st) {
        double a_mix = 0.0;
        double b_mix = 0.0;
        for (int s = 0; s < q; ++s) {
            int u = root_class(s, st.h()[static_cast<std::size_t>(w_local)], q);
            double a = st.blw(marg, u) * st.qprod() / Zout_pin[static_cast<std::size_t>(s)];
            double b = st.blw(direct, u) * st.qprod() / Zin_pin[static_cast<std::size_t>(s)];
            tv_pinned[static_cast<std::size_t>(s)] += std::abs(a - b);
            a_mix += st.blw(marg, s);
            b_mix += st.blw(direct, s);
        }
        tv_mix += std::abs(a_mix * st.qprod() / Zout - b_mix * st.qprod() / Zin);
    });
    double worst = tv_mix;
    for (double t : tv_pinned) {
        worst = std::max(worst, t);
    }
    return 0.5 * worst;
}

double check_homogeneity(const GGMSpec& spec, const std::vector<int>& pins, const EnumerationBudget& budget)
{
    require(!pins.empty(), "homogeneity needs at least one pin vertex");
    const auto& k = spec.kernel;
    int q = k.period();
    Enumerator en(spec.volume, k.cutoff(), q, q_window(k));
    en.check_budget(budget.max_configurations);
    for (int w : pins) {
        check_vertex(spec.volume, w, "pin vertex");
        en.add_pin(w, k);
    }
    std::size_t P = pins.size();
    std::vector<double> vals(P);
    std::vector<double> tv(P * P, 0.0);
    en.run([&](const Enumerator& st) {
        for (std::size_t p = 0; p < P; ++p) {
            double v = 0.0;
            for (int s = 0; s < q; ++s) {
                int u = root_class(s, st.h()[static_cast<std::size_t>(pins[p])], q);
                v += spec.chain.alpha[static_cast<std::size_t>(s)] * st.prod(static_cast<int>(p), u);
            }
            vals[p] = v;
        }
        for (std::size_t a = 0; a < P; ++a) {
            for (std::size_t b = a + 1; b < P; ++b) {
                tv[a * P + b] += std::abs(vals[a] - vals[b]);
            }
        }
    });
    return 0.5 * *std::max_element(tv.begin(), tv.end());
}

double DlrReport::max() const
{
    return std::max({pinned, mixture, agreement});
}

DlrReport check_restricted_dlr(const PinnedMeasureSpec& spec, const std::vector<int>& inner,
                               const EnumerationBudget& budget)
{
    const auto& k = spec.kernel;
    const auto& vol = spec.volume;
    check_vertex(vol, spec.pin_vertex, "pin vertex");
    int q = k.period();
    long M = k.cutoff();
    auto sub = sub_volume(vol, inner);
    for (int v = 0; v < sub.volume.size(); ++v) {
        if (!sub.volume.is_boundary(v) && sub.host_vertex[static_cast<std::size_t>(v)] == spec.pin_vertex) {
            throw Error(ErrorKind::pin_inside_inner,
                        "pin vertex " + std::to_string(spec.pin_vertex) + " lies inside the inner volume");
        }
    }
    if (configuration_count(vol, M) > budget.max_configurations) {
        throw Error(ErrorKind::volume_too_large, "restricted DLR check exceeds the enumeration budget");
    }
    auto chain = fuzzy_transform(k);

    std::vector<char> edge_inner(static_cast<std::size_t>(vol.edge_count()), 0);
    for (int e : sub.host_edge) {
        edge_inner[static_cast<std::size_t>(e)] = 1;
    }
    std::vector<int> outer_edges;
    for (int e = 0; e < vol.edge_count(); ++e) {
        if (!edge_inner[static_cast<std::size_t>(e)]) {
            outer_edges.push_back(e);
        }
    }
    const auto& inner_edges = sub.host_edge;

    // inner configurations with their height class and Q product
    auto leaves = sub.volume.boundary();
    std::vector<std::vector<long>> inner_conf;
    std::vector<int> inner_class;
    std::vector<double> inner_q;
    std::map<std::vector<long>, int> class_ids;
    {
        std::size_t Ein = inner_edges.size();
        std::vector<long> z(Ein, -M);
        while (true) {
            double w = 1.0;
            for (long x : z) {
                w *= k.Q(x);
            }
            if (w > 0.0) {
                auto h = heights(sub.volume, GradientConfiguration{z});
                std::vector<long> key;
                for (int y : leaves) {
                    key.push_back(h[static_cast<std::size_t>(y)] - h[static_cast<std::size_t>(leaves.front())]);
                }
                auto [it, fresh] = class_ids.emplace(key, static_cast<int>(class_ids.size()));
                inner_conf.push_back(z);
                inner_class.push_back(it->second);
                inner_q.push_back(w);
            }
            std::size_t i = 0;
            while (i < Ein && z[i] == M) {
                z[i++] = -M;
            }
            if (i == Ein) {
                break;
            }
            ++z[i];
        }
    }
    std::size_t C = class_ids.size();

    DlrReport report;
    GradientConfiguration zeta{std::vector<long>(static_cast<std::size_t>(vol.edge_count()), 0)};
    std::vector<long> zo(outer_edges.size(), -M);
    std::vector<double> p_pin(inner_conf.size());
    std::vector<double> p_mix(inner_conf.size());
    std::vector<double> sum_pin(C);
    std::vector<double> sum_mix(C);
    std::vector<double> sum_q(C);
    std::vector<double> tv_pin(C);
    std::vector<double> tv_mix(C);
    std::vector<double> tv_agree(C);
    const auto w = static_cast<std::size_t>(spec.pin_vertex);
    auto toward = orientation(vol, spec.pin_vertex);
    std::vector<long> h(static_cast<std::size_t>(vol.size()), 0);
    while (true) {
        for (std::size_t i = 0; i < outer_edges.size(); ++i) {
            zeta.increments[static_cast<std::size_t>(outer_edges[i])] = zo[i];
        }
        std::fill(sum_pin.begin(), sum_pin.end(), 0.0);
        std::fill(sum_mix.begin(), sum_mix.end(), 0.0);
        std::fill(sum_q.begin(), sum_q.end(), 0.0);
        for (std::size_t c = 0; c < inner_conf.size(); ++c) {
            for (std::size_t i = 0; i < inner_edges.size(); ++i) {
                zeta.increments[static_cast<std::size_t>(inner_edges[i])] = inner_conf[c][i];
            }
            for (int v = 1; v < vol.size(); ++v) {
                h[static_cast<std::size_t>(v)] =
                    h[static_cast<std::size_t>(vol.parent(v))] + zeta[FiniteTreeVolume::edge_of(v)];
            }
            double mix = 0.0;
            double pinned = 0.0;
            for (int s = 0; s < q; ++s) {
                double p = product_from(k, vol, h, zeta, toward, root_class(s, h[w], q));
                mix += chain.alpha[static_cast<std::size_t>(s)] * p;
                if (s == mod_q(spec.pin_class, q)) {
                    pinned = p;
                }
            }
            auto cls = static_cast<std::size_t>(inner_class[c]);
            p_pin[c] = pinned;
            p_mix[c] = mix;
            sum_pin[cls] += pinned;
            sum_mix[cls] += mix;
            sum_q[cls] += inner_q[c];
        }
        std::fill(tv_pin.begin(), tv_pin.end(), 0.0);
        std::fill(tv_mix.begin(), tv_mix.end(), 0.0);
        std::fill(tv_agree.begin(), tv_agree.end(), 0.0);
        for (std::size_t c = 0; c < inner_conf.size(); ++c) {
            auto cls = static_cast<std::size_t>(inner_class[c]);
            double ref = inner_q[c] / sum_q[cls];
            double a = sum_pin[cls] > 0.0 ? p_pin[c] / sum_pin[cls] : 0.0;
            double b = sum_mix[cls] > 0.0 ? p_mix[c] / sum_mix[cls] : 0.0;
            tv_pin[cls] += std::abs(a - ref);
            tv_mix[cls] += std::abs(b - ref);
            tv_agree[cls] += std::abs(a - b);
        }
        for (std::size_t cls = 0; cls < C; ++cls) {
            // conditioning events of zero mass carry no conditional law
            if (sum_pin[cls] > 0.0) {
                report.pinned = std::max(report.pinned, 0.5 * tv_pin[cls]);
            }
            if (sum_mix[cls] > 0.0) {
                report.mixture = std::max(report.mixture, 0.5 * tv_mix[cls]);
            }
            if (sum_pin[cls] > 0.0 && sum_mix[cls] > 0.0) {
                report.agreement = std::max(report.agreement, 0.5 * tv_agree[cls]);
            }
        }
        std::size_t i = 0;
        while (i < zo.size() && zo[i] == M) {
            zo[i++] = -M;
        }
        if (i == zo.size()) {
            break;
        }
        ++zo[i];
    }
    return report;
}

} // namespace ggm
