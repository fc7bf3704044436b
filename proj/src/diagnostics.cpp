#include "ggm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ggm {
namespace {

std::vector<double> event_profile(const LayerKernel& kernel, const LocalEvent& ev)
{
    std::vector<double> out;
    for (int s = 0; s < kernel.period(); ++s) {
        out.push_back(pinned_prob_product(PinnedMeasureSpec{kernel, ev.volume, ev.anchor, s}, ev.zeta));
    }
    return out;
}

} // namespace

CorrelationResult correlation_and_bound(const LayerKernel& kernel, const FuzzyChain& chain, const LocalEvent& A,
                                        const LocalEvent& B, int n)
{
    require(n >= 0, "distance n must be non-negative");
    require(chain.q == kernel.period(), "chain and kernel periods differ");
    auto a = event_profile(kernel, A);
    auto b = event_profile(kernel, B);
    auto Pn = matrix_power(chain.matrix, n);
    std::size_t q = a.size();

    CorrelationResult r;
    for (std::size_t s = 0; s < q; ++s) {
        r.prob_a += chain.alpha[s] * a[s];
        r.prob_b += chain.alpha[s] * b[s];
        double carried = 0.0;
        double centred = 0.0;
        for (std::size_t t = 0; t < q; ++t) {
            carried += Pn[s][t] * b[t];
            centred += (Pn[s][t] - chain.alpha[t]) * b[t];
        }
        r.prob_ab += chain.alpha[s] * a[s] * carried;
        r.covariance += chain.alpha[s] * a[s] * centred;
        r.tv = std::max(r.tv, total_variation(Pn[s], chain.alpha));
    }
    r.bound = 2.0 * r.prob_a * r.tv * *std::max_element(b.begin(), b.end());
    return r;
}

double MixingEnvelope::at(int n) const
{
    return C * std::pow(delta, n);
}

int MixingEnvelope::steps_below(double target) const
{
    require(target > 0.0, "target must be positive");
    if (C <= target) {
        return 0;
    }
    if (delta <= 0.0) {
        return 1;
    }
    int n = static_cast<int>(std::ceil(std::log(target / C) / std::log(delta)));
    while (n > 0 && at(n - 1) < target) {
        --n;
    }
    while (at(n) >= target) {
        ++n;
    }
    return n;
}

MixingEnvelope mixing_envelope(const FuzzyChain& chain)
{
    MixingEnvelope env;
    env.delta = second_eigen_modulus(chain.matrix);
    if (env.delta <= 0.0) {
        return env;
    }
    auto tv = tv_sequence(chain, 2);
    env.C = std::max(tv[1] / env.delta, tv[2] / (env.delta * env.delta));
    return env;
}

double log_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    require(x.size() == y.size() && x.size() >= 2, "slope needs at least two points");
    double n = static_cast<double>(x.size());
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double ly = std::log(std::abs(y[i]));
        sx += x[i];
        sy += ly;
        sxx += x[i] * x[i];
        sxy += x[i] * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> single_bond_marginal(const TransferOperator& op, const PeriodicBoundaryLaw& l, long cutoff)
{
    std::vector<double> p;
    double total = 0.0;
    for (long z = -cutoff; z <= cutoff; ++z) {
        double overlap = 0.0;
        for (int s = 0; s < l.period(); ++s) {
            overlap += l(s) * l(s + z);
        }
        p.push_back(op(z) * overlap);
        total += p.back();
    }
    for (double& x : p) {
        x /= total;
    }
    return p;
}

IdentifiabilityResult identifiability_check(const TransferOperator& op, const PeriodicBoundaryLaw& l1,
                                            const PeriodicBoundaryLaw& l2, double threshold)
{
    if (l1.period() != l2.period()) {
        throw Error(ErrorKind::period_mismatch, "boundary laws have periods " + std::to_string(l1.period()) +
                                                    " and " + std::to_string(l2.period()));
    }
    long M = std::max(choose_window(op, l1).cutoff, choose_window(op, l2).cutoff);
    auto p1 = single_bond_marginal(op, l1, M);
    auto p2 = single_bond_marginal(op, l2, M);
    IdentifiabilityResult r;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        r.gap = std::max(r.gap, std::abs(p1[i] - p2[i]));
    }
    r.distinguishable = r.gap > threshold;
    for (int j = 0; j < l1.period() && !r.shift_related; ++j) {
        auto s = l1.shifted(j);
        bool equal = true;
        for (int k = 0; k < l1.period(); ++k) {
            equal = equal && std::abs(s(k) - l2(k)) <= 1e-9 * std::max(1.0, l2(k));
        }
        r.shift_related = equal;
    }
    return r;
}

CounterexampleChain::CounterexampleChain(double eps0, double eps1) : eps0_(eps0), eps1_(eps1)
{
    require(eps0 > 0.0 && eps0 < 0.5 && eps1 > 0.0 && eps1 < 0.5, "step probabilities must lie in (0, 1/2)");
    require(eps0 != eps1, "equal step probabilities give a Gibbs chain; need eps0 != eps1");
}

double CounterexampleChain::C() const
{
    return (1.0 - 2.0 * eps1_) / (1.0 - 2.0 * eps0_);
}

std::vector<double> CounterexampleChain::alpha() const
{
    return {eps1_ / (eps0_ + eps1_), eps0_ / (eps0_ + eps1_)};
}

LayerKernel CounterexampleChain::kernel() const
{
    return LayerKernel::from_rows(2, 1, {{eps0_, 1.0 - 2.0 * eps0_, eps0_}, {eps1_, 1.0 - 2.0 * eps1_, eps1_}});
}

double counterexample_conditional_ratio(const CounterexampleChain& ce, int lenL, int lenR)
{
    require(lenL >= 0 && lenR >= 0, "segment lengths must be non-negative");
    auto a = ce.alpha();
    double C = ce.C();
    double e0 = ce.eps0();
    double e1 = ce.eps1();
    double num = a[1] * (1.0 - 2.0 * e1) * std::pow(C, lenL + lenR) + a[0] * (1.0 - 2.0 * e0);
    double den = a[1] * e1 * std::pow(C, lenL) + a[0] * e0 * std::pow(C, lenR);
    return num / den;
}

double counterexample_ratio_enumerated(const CounterexampleChain& ce, int lenL, int lenR)
{
    require(lenL >= 0 && lenR >= 0, "segment lengths must be non-negative");
    auto spec = make_ggm_spec(ce.kernel(), FiniteTreeVolume::path(1, lenL + 1 + lenR));
    GradientConfiguration zeros{std::vector<long>(static_cast<std::size_t>(lenL + 1 + lenR), 0)};
    GradientConfiguration step = zeros;
    step.increments[static_cast<std::size_t>(lenL)] = 1;
    return ggm_prob(spec, zeros) / ggm_prob(spec, step);
}

double counterexample_translation_gap(const CounterexampleChain& ce, int edges)
{
    require(edges >= 1, "path needs at least one edge");
    auto spec = make_ggm_spec(ce.kernel(), FiniteTreeVolume::path(1, edges));
    auto first = ggm_marginal(spec, {0});
    double gap = 0.0;
    for (int e = 1; e < edges; ++e) {
        auto other = ggm_marginal(spec, {e});
        for (const auto& [key, p] : first) {
            gap = std::max(gap, std::abs(p - other[key]));
        }
    }
    return gap;
}

} // namespace ggm
