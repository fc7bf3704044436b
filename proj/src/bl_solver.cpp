#include "ggm/bl_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "ggm/parallel.hpp"

namespace ggm {
namespace {

constexpr double kLower = 1e-12;
constexpr double kUpper = 1e12;
constexpr double kMergeTol = 1e-6;

std::vector<double> consistency_map(std::span<const double> a, std::span<const double> T, int d)
{
    int q = static_cast<int>(a.size());
    std::vector<double> F(a.size());
    for (int k = 0; k < q; ++k) {
        double s = 0.0;
        for (int m = 0; m < q; ++m) {
            s += T[static_cast<std::size_t>(mod_q(k - m, q))] * a[static_cast<std::size_t>(m)];
        }
        F[static_cast<std::size_t>(k)] = std::pow(s, d);
    }
    return F;
}

bool close(double x, double y)
{
    return std::abs(x - y) <= kMergeTol * std::max(1.0, std::abs(y));
}

bool same_law(std::span<const double> a, std::span<const double> b)
{
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (!close(a[k], b[k])) {
            return false;
        }
    }
    return true;
}

BranchLabel label_for(const PeriodicBoundaryLaw& l, std::span<const double> T, int d)
{
    if (l.is_trivial(kMergeTol)) {
        return BranchLabel::trivial;
    }
    if (l.period() != 2) {
        return BranchLabel::other;
    }
    auto roots = ising_type_solve(T[0], T[1], d);
    if (roots.size() < 3) {
        return BranchLabel::other;
    }
    if (close(l(1), roots.back())) {
        return BranchLabel::upper;
    }
    if (close(l(1), roots.front())) {
        return BranchLabel::lower;
    }
    return BranchLabel::other;
}

void check_degree(int d)
{
    if (d < 1) {
        throw Error(ErrorKind::unsupported_degree, "d must be at least 1, got " + std::to_string(d));
    }
}

} // namespace

std::string_view to_string(BranchLabel label)
{
    switch (label) {
    case BranchLabel::trivial: return "trivial";
    case BranchLabel::upper: return "upper";
    case BranchLabel::lower: return "lower";
    case BranchLabel::other: return "other";
    }
    return "other";
}

MaxIterationsError::MaxIterationsError(SolveReport best)
    : Error(ErrorKind::max_iterations,
            "no convergence after " + std::to_string(best.iterations) +
                " iterations (best residual " + std::to_string(best.residual) + ")"),
      best_(std::move(best))
{
}

double residual(std::span<const double> a, std::span<const double> wrapped, int d)
{
    require(a.size() == wrapped.size(), "wrapped sums do not match the period");
    auto F = consistency_map(a, wrapped, d);
    double c = a[0] / F[0];
    double r = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        r = std::max(r, std::abs(a[k] - c * F[k]));
    }
    return r;
}

double residual(const PeriodicBoundaryLaw& l, const TransferOperator& op, int d)
{
    check_degree(d);
    auto T = wrapped_sums(op, l.period());
    return residual(l.values(), T, d);
}

SolveReport fixed_point_solve(const TransferOperator& op, int q, int d, std::vector<double> init,
                              const SolveOptions& opts)
{
    check_degree(d);
    require(q >= 1, "period q must be at least 1");
    require(static_cast<int>(init.size()) == q, "initial vector must have q entries");
    require(opts.damping > 0.0 && opts.damping <= 1.0, "damping must lie in (0, 1]");
    require(opts.max_iter >= 0, "max_iter must be non-negative");


    auto T = wrapped_sums(op, q);
    PeriodicBoundaryLaw start(std::move(init));
    std::vector<double> a(start.values().begin(), start.values().end());

    SolveReport best{start, residual(a, T, d), 0, BranchLabel::other};
    auto finish = [&](std::vector<double> v, double r, int it) {
        PeriodicBoundaryLaw law(std::move(v), r <= opts.tol);
        BranchLabel label = label_for(law, T, d);
        return SolveReport{std::move(law), r, it, label};
    };

    for (int it = 0;; ++it) {
        double r = residual(a, T, d);
        if (r < best.residual || it == 0) {
            best = SolveReport{PeriodicBoundaryLaw(a), r, it, BranchLabel::other};
        }
        if (r <= opts.tol) {
            return finish(a, r, it);
        }
        if (it >= opts.max_iter) {
            best.branch_label = label_for(best.solution, T, d);
            throw MaxIterationsError(std::move(best));
        }
        auto F = consistency_map(a, T, d);
        for (int k = 0; k < q; ++k) {
            auto ku = static_cast<std::size_t>(k);
            a[ku] = (1.0 - opts.damping) * a[ku] + opts.damping * F[ku] / F[0];
            if (!(a[ku] > kLower && a[ku] < kUpper)) {
                throw Error(ErrorKind::diverged, "entry a_" + std::to_string(k) + " left (1e-12, 1e12) at iteration " +
                                                     std::to_string(it + 1));
            }
        }
        a[0] = 1.0;
    }
}

std::vector<std::vector<double>> multi_start_inits(int q, Ansatz ansatz, int count)
{
    require(q >= 1, "period q must be at least 1");
    if (ansatz == Ansatz::q4_paired) {
        require(q == 4, "paired ansatz needs q = 4");
    }
    std::vector<std::vector<double>> inits;
    inits.emplace_back(static_cast<std::size_t>(q), 1.0);
    if (q == 1) {
        return inits;
    }
    for (int i = 0; i < count; ++i) {
        double t = count == 1 ? 0.5 : static_cast<double>(i) / (count - 1);
        double x = std::pow(10.0, -3.0 + 6.0 * t);
        if (ansatz == Ansatz::q4_paired) {
            inits.push_back({1.0, 1.0, x, x});
            continue;
        }
        for (int k = 1; k < q; ++k) {
            std::vector<double> v(static_cast<std::size_t>(q), 1.0);
            v[static_cast<std::size_t>(k)] = x;
            inits.push_back(std::move(v));
        }
        if (q > 2) {
            std::vector<double> v(static_cast<std::size_t>(q), x);
            v[0] = 1.0;
            inits.push_back(std::move(v));
        }
    }
    return inits;
}

std::vector<SolveReport> multi_start_solve(const TransferOperator& op, int q, int d, Ansatz ansatz,
                                           const SolveOptions& opts)
{
    auto inits = multi_start_inits(q, ansatz);
    std::vector<std::optional<SolveReport>> found(inits.size());
    parallel_for(inits.size(), [&](std::size_t i) {
        try {
            found[i] = fixed_point_solve(op, q, d, inits[i], opts);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::diverged && e.kind() != ErrorKind::max_iterations) {
                throw;
            }
        }
    });

    std::vector<SolveReport> branches;
    for (auto& rep : found) {
        if (!rep) {
            continue;
        }
        bool seen = std::any_of(branches.begin(), branches.end(), [&](const SolveReport& b) {
            return same_law(b.solution.values(), rep->solution.values());
        });
        if (!seen) {
            branches.push_back(std::move(*rep));
        }
    }
    std::sort(branches.begin(), branches.end(), [](const SolveReport& x, const SolveReport& y) {
        auto a = x.solution.values();
        auto b = y.solution.values();
        return std::lexicographical_compare(a.begin() + 1, a.end(), b.begin() + 1, b.end());
    });
    return branches;
}

std::vector<PeriodicBoundaryLaw> closed_form_q2_sos(double beta, int d)
{
    if (d != 2) {
        throw Error(ErrorKind::unsupported_degree, "closed form exists only for d = 2, got " + std::to_string(d));
    }
    require(beta > 0.0, "beta must be positive");
    std::vector<PeriodicBoundaryLaw> out{PeriodicBoundaryLaw::trivial(2)};
    double c = std::cosh(beta);
    double disc = c * c - 2.0 * c - 3.0;
    // At cosh(beta) = 3 the two nontrivial roots merge into the trivial one.
    if (disc <= 1e-12 * c * c) {
        return out;
    }
    double root = std::sqrt(disc);
    double u_hi = (c - 1.0) / 2.0 + root / 2.0;
    double u_lo = (c - 1.0) / 2.0 - root / 2.0;
    out.emplace_back(std::vector<double>{1.0, u_hi * u_hi}, true);
    out.emplace_back(std::vector<double>{1.0, u_lo * u_lo}, true);
    return out;
}

double effective_beta(const TransferOperator& op, int q, Ansatz variant)
{
    if (variant == Ansatz::q4_paired) {
        if (q != 4) {
            throw Error(ErrorKind::unsupported_period, "paired variant needs q = 4");
        }
        auto T = wrapped_sums(op, 4);
        return 0.5 * std::log((T[0] + T[1]) / (T[1] + T[2]));
    }
    switch (q) {
    case 2: return 0.5 * std::log(wrapped_sum(op, 2, 0) / wrapped_sum(op, 2, 1));
    case 3: return std::log(wrapped_sum(op, 3, 0) / wrapped_sum(op, 3, 1));
    default: break;
    }
    throw Error(ErrorKind::unsupported_period,
                "effective beta is defined for q = 2, 3 and paired q = 4, got q = " + std::to_string(q));
}

double effective_threshold(int q, int d, Ansatz variant)
{
    bool ising = (q == 2 && variant == Ansatz::generic) || (q == 4 && variant == Ansatz::q4_paired);
    bool potts = q == 3 && variant == Ansatz::generic;
    if (!ising && !potts) {
        throw Error(ErrorKind::unsupported_period,
                    "critical beta is known for q = 2, 3 and paired q = 4, got q = " + std::to_string(q));
    }
    if (ising) {
        if (d < 2) {
            throw Error(ErrorKind::unsupported_degree, "Ising threshold needs d >= 2");
        }
        return 0.5 * std::log((d + 1.0) / (d - 1.0)); // acoth(d)
    }
    if (d != 2) {
        throw Error(ErrorKind::unsupported_degree, "Potts threshold is only available for d = 2");
    }
    return std::log(1.0 + 2.0 * std::sqrt(2.0));
}

double critical_beta(int q, int d, Ansatz variant)
{
    double target = effective_threshold(q, d, variant);
    auto f = [&](double b) { return effective_beta(TransferOperator::sos(b), q, variant) - target; };
    double lo = 1e-6;
    double hi = 60.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> ising_type_solve(double Qpp, double Qpm, int d)
{
    require(Qpp > 0.0 && Qpm > 0.0, "Ising weights must be positive");
    check_degree(d);
    // f is odd in x = log a; nontrivial roots come in pairs +-x
    auto f = [&](double x) {
        return x - d * (std::log(Qpm + std::exp(x) * Qpp) - std::log(Qpp + std::exp(x) * Qpm));
    };
    auto h = [&](double x) { return f(x) / x; };

    std::vector<double> roots{1.0};
    constexpr int kGrid = 4000;
    const double x_min = 1e-7;
    const double x_max = 2.0 * d * std::abs(std::log(Qpp / Qpm)) + 10.0;
    double ratio = std::pow(x_max / x_min, 1.0 / kGrid);
    double x0 = x_min;
    double h0 = h(x0);
    for (int i = 1; i <= kGrid; ++i) {
        double x1 = x0 * ratio;
        double h1 = h(x1);
        if ((h0 < 0.0) != (h1 < 0.0)) {
            double lo = x0;
            double hi = x1;
            bool lo_neg = h0 < 0.0;
            for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
                double mid = 0.5 * (lo + hi);
                ((h(mid) < 0.0) == lo_neg ? lo : hi) = mid;
            }
            double x = 0.5 * (lo + hi);
            roots.push_back(std::exp(x));
            roots.push_back(std::exp(-x));
        }
        x0 = x1;
        h0 = h1;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

bool is_normalizable(const PeriodicBoundaryLaw& l, const TransferOperator& op, int d, long horizon)
{
    check_degree(d);
    require(horizon >= 0, "horizon must be non-negative");
    // summand at w is N(w mod q)^{d+1}; periodic and positive, so the
    // partial sums grow linearly and never converge
    int q = l.period();
    auto T = wrapped_sums(op, q);
    double floor = std::numeric_limits<double>::infinity();
    for (int s = 0; s < q; ++s) {
        double n = 0.0;
        for (int c = 0; c < q; ++c) {
            n += T[static_cast<std::size_t>(c)] * l(s + c);
        }
        floor = std::min(floor, std::pow(n, d + 1));
    }
    if (floor > 0.0) {
        return false;
    }
    throw Error(ErrorKind::inconclusive, "summand vanishes somewhere within one period");
}

} // namespace ggm
