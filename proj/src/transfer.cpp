#include "ggm/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ggm/bl_solver.hpp"

namespace ggm {
namespace {

void check_potts(int q, double beta_tilde)
{
    require(q >= 2, "Potts lift needs q >= 2");
    require(std::isfinite(beta_tilde) && beta_tilde >= 0.0, "beta_tilde must be non-negative");
}

// Tail mass sum_{|k| > K, k = r mod q} e^{-t |k|}.
double tail_on_residue(int q, int r, double t)
{
    int K = q / 2;
    double geo = -std::expm1(-t * q);
    int pos = r > K ? r : r + q;
    int neg = mod_q(-r, q);
    if (neg <= K) {
        neg += q;
    }
    return (std::exp(-t * pos) + std::exp(-t * neg)) / geo;
}

// Central entries Q(0..K) for tail rate t.
std::vector<double> positive_central(int q, double beta_tilde, double t)
{
    auto row = potts_row(q, beta_tilde);
    int K = q / 2;
    std::vector<double> central;
    for (int k = 0; k <= K; ++k) {
        double c = row[static_cast<std::size_t>(k)] - tail_on_residue(q, k, t);
        // residue q/2 of even q is shared by +-q/2
        if (q % 2 == 0 && k == K) {
            c *= 0.5;
        }
        central.push_back(c);
    }
    return central;
}

bool all_positive(const std::vector<double>& v)
{
    return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
}

} // namespace

std::vector<double> CirculantSpec::full() const
{
    std::vector<double> out(static_cast<std::size_t>(q));
    for (int m = 0; m < q; ++m) {
        out[static_cast<std::size_t>(m)] = values[static_cast<std::size_t>(std::min(m, q - m))];
    }
    return out;
}

TailTooFatError::TailTooFatError(double tail_beta, double minimal)
    : Error(ErrorKind::tail_too_fat, "tail_beta " + std::to_string(tail_beta) +
                                         " makes a central weight non-positive; minimal admissible tail_beta is " +
                                         std::to_string(minimal)),
      minimal_(minimal)
{
}

std::vector<double> potts_row(int q, double beta_tilde)
{
    check_potts(q, beta_tilde);
    double e = std::exp(beta_tilde);
    double z = e + q - 1.0;
    std::vector<double> row(static_cast<std::size_t>(q), 1.0 / z);
    row[0] = e / z;
    return row;
}

TransferOperator lift_potts(int q, double beta_tilde)
{
    auto row = potts_row(q, beta_tilde);
    int K = q / 2;
    std::vector<double> central(row.begin(), row.begin() + K + 1);
    if (q % 2 == 0) {
        central[static_cast<std::size_t>(K)] *= 0.5;
    }
    return TransferOperator::lifted(PotentialKind::lifted_potts, q, beta_tilde, std::move(central), std::nullopt);
}

TransferOperator lift_potts_positive(int q, double beta_tilde, double tail_beta)
{
    check_potts(q, beta_tilde);
    require(std::isfinite(tail_beta) && tail_beta > 0.0, "tail_beta must be positive");
    auto central = positive_central(q, beta_tilde, tail_beta);
    if (!all_positive(central)) {
        double hi = tail_beta;
        while (!all_positive(positive_central(q, beta_tilde, hi))) {
            hi *= 2.0;
        }
        double lo = tail_beta;
        while (hi - lo > 1e-6) {
            double mid = 0.5 * (lo + hi);
            (all_positive(positive_central(q, beta_tilde, mid)) ? hi : lo) = mid;
        }
        throw TailTooFatError(tail_beta, hi);
    }
    return TransferOperator::lifted(PotentialKind::lifted_potts_positive, q, beta_tilde, std::move(central),
                                    TransferOperator::Tail{1.0, tail_beta}, tail_beta);
}

CirculantSpec clock_reduction(const TransferOperator& op, int q)
{
    auto T = wrapped_sums(op, q);
    CirculantSpec spec{q, {}};
    for (int m = 0; m <= q / 2; ++m) {
        spec.values.push_back(T[static_cast<std::size_t>(m)]);
    }
    return spec;
}

double clock_residual(const CirculantSpec& spec, const PeriodicBoundaryLaw& l, int d)
{
    if (l.period() != spec.q) {
        throw Error(ErrorKind::period_mismatch, "boundary law period differs from the clock spec");
    }
    auto T = spec.full();
    return residual(l.values(), T, d);
}

std::vector<double> potts_roots(int q, double beta_tilde, int d, int m)
{
    check_potts(q, beta_tilde);
    require(m >= 1 && m < q, "number of raised entries must lie in [1, q)");
    double th = std::exp(beta_tilde);
    auto f = [&](double x) {
        double h = std::exp(x);
        return x - d * (std::log((th + m - 1.0) * h + (q - m)) - std::log(m * h + th + q - m - 1.0));
    };
    auto ratio = [&](double x) { return f(x) / x; };

    std::vector<double> roots;
    const double X = 2.0 * d * (std::abs(beta_tilde) + std::log(static_cast<double>(q))) + 10.0;
    constexpr int kGrid = 4000;
    for (double sign : {-1.0, 1.0}) {
        double step = std::pow(X / 1e-7, 1.0 / kGrid);
        double x0 = sign * 1e-7;
        double r0 = ratio(x0);
        for (int i = 1; i <= kGrid; ++i) {
            double x1 = x0 * step;
            double r1 = ratio(x1);
            if ((r0 < 0.0) != (r1 < 0.0)) {
                double lo = x0;
                double hi = x1;
                bool lo_neg = r0 < 0.0;
                for (int k = 0; k < 200 && std::abs(hi - lo) > 1e-15 * std::abs(hi); ++k) {
                    double mid = 0.5 * (lo + hi);
                    ((ratio(mid) < 0.0) == lo_neg ? lo : hi) = mid;
                }
                roots.push_back(std::exp(0.5 * (lo + hi)));
            }
            x0 = x1;
            r0 = r1;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<PeriodicBoundaryLaw> potts_boundary_laws(int q, double beta_tilde, int d)
{
    std::vector<PeriodicBoundaryLaw> out{PeriodicBoundaryLaw::trivial(q)};
    for (int m = 1; m < q; ++m) {
        for (double h : potts_roots(q, beta_tilde, d, m)) {
            std::vector<double> a(static_cast<std::size_t>(q), 1.0);
            for (int k = 0; k < m; ++k) {
                a[static_cast<std::size_t>(k)] = h;
            }
            PeriodicBoundaryLaw l(std::move(a), true);
            bool seen = std::any_of(out.begin(), out.end(), [&](const PeriodicBoundaryLaw& o) {
                for (int k = 0; k < q; ++k) {
                    if (std::abs(o(k) - l(k)) > 1e-9 * std::max(1.0, l(k))) {
                        return false;
                    }
                }
                return true;
            });
            if (!seen) {
                out.push_back(std::move(l));
            }
        }
    }
    return out;
}

} // namespace ggm
