#include "ggm/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ggm {
namespace {

constexpr long kMaxCutoff = 10'000'000;

double geometric_tail(double prefactor, double rate, long first)
{
    // 2 * sum_{m >= first} prefactor * e^{-rate m}
    return 2.0 * prefactor * std::exp(-rate * static_cast<double>(first)) / -std::expm1(-rate);
}

// Smallest cutoff (up to kMaxCutoff) with op.tail_bound(cutoff) * scale <= tol.
std::optional<long> certified_cutoff(const TransferOperator& op, double tol, double scale = 1.0)
{
    if (auto radius = op.support_radius(); radius && !op.tail()) {
        if (op.kind() != PotentialKind::sos && op.kind() != PotentialKind::discrete_gaussian) {
            // finite support: exact at the radius, maybe earlier
            long lo = 0;
            long hi = *radius;
            while (lo < hi) {
                long mid = (lo + hi) / 2;
                if (op.tail_bound(mid) * scale <= tol) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            return lo;
        }
    }
    long hi = 1;
    while (op.tail_bound(hi) * scale > tol) {
        if (hi >= kMaxCutoff) {
            return std::nullopt;
        }
        hi = std::min(2 * hi, kMaxCutoff);
    }
    long lo = 0;
    while (lo < hi) {
        long mid = (lo + hi) / 2;
        if (op.tail_bound(mid) * scale <= tol) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

} // namespace

//---------------------------------------------------------------------------//
// TransferOperator
//---------------------------------------------------------------------------//

TransferOperator TransferOperator::sos(double beta)
{
    require(std::isfinite(beta) && beta > 0.0, "SOS beta must be positive");
    TransferOperator op;
    op.kind_ = PotentialKind::sos;
    op.beta_ = beta;
    return op;
}

TransferOperator TransferOperator::discrete_gaussian(double beta)
{
    require(std::isfinite(beta) && beta > 0.0, "discrete Gaussian beta must be positive");
    TransferOperator op;
    op.kind_ = PotentialKind::discrete_gaussian;
    op.beta_ = beta;
    return op;
}

TransferOperator TransferOperator::table(std::map<long, double> weights,
                                         std::optional<double> tail_rate)
{
    std::map<long, double> folded;
    for (auto [m, w] : weights) {
        require(std::isfinite(w) && w > 0.0,
                "table weight at " + std::to_string(m) + " must be positive");
        long k = m < 0 ? -m : m;
        if (auto it = folded.find(k); it != folded.end()) {
            require(it->second == w, "table weights are not symmetric at |m| = " + std::to_string(k));
        } else {
            folded.emplace(k, w);
        }
    }
    require(!folded.empty(), "table needs at least Q(0)");
    long K = folded.rbegin()->first;
    require(static_cast<long>(folded.size()) == K + 1,
            "table weights must cover every |m| from 0 to the largest key");

    TransferOperator op;
    op.kind_ = PotentialKind::table;
    for (auto [m, w] : folded) {
        op.central_.push_back(w);
    }
    if (tail_rate) {
        require(std::isfinite(*tail_rate) && *tail_rate > 0.0, "table tail rate must be positive");
        double edge = op.central_.back();
        op.tail_ = Tail{edge * std::exp(*tail_rate * static_cast<double>(K)), *tail_rate};
    }
    return op;
}

TransferOperator TransferOperator::lifted(PotentialKind kind, int potts_q, double beta_tilde,
                                          std::vector<double> central, std::optional<Tail> tail,
                                          double tail_beta)
{
    require(kind == PotentialKind::lifted_potts || kind == PotentialKind::lifted_potts_positive,
            "lifted() only builds lifted Potts operators");
    require(!central.empty(), "lifted operator needs a central table");
    TransferOperator op;
    op.kind_ = kind;
    op.potts_q_ = potts_q;
    op.beta_tilde_ = beta_tilde;
    op.tail_beta_ = tail_beta;
    op.central_ = std::move(central);
    op.tail_ = tail;
    return op;
}

std::optional<double> TransferOperator::table_tail_rate() const
{
    if (kind_ == PotentialKind::table && tail_) {
        return tail_->rate;
    }
    return std::nullopt;
}

double TransferOperator::operator()(long m) const
{
    long k = m < 0 ? -m : m;
    switch (kind_) {
    case PotentialKind::sos: return std::exp(-beta_ * static_cast<double>(k));
    case PotentialKind::discrete_gaussian:
        return std::exp(-beta_ * static_cast<double>(k) * static_cast<double>(k));
    default: break;
    }
    if (k < static_cast<long>(central_.size())) {
        return central_[static_cast<std::size_t>(k)];
    }
    if (tail_) {
        return tail_->prefactor * std::exp(-tail_->rate * static_cast<double>(k));
    }
    return 0.0;
}

std::optional<long> TransferOperator::support_radius() const
{
    if (kind_ == PotentialKind::sos || kind_ == PotentialKind::discrete_gaussian || tail_) {
        return std::nullopt;
    }
    long k = static_cast<long>(central_.size()) - 1;
    while (k > 0 && central_[static_cast<std::size_t>(k)] == 0.0) {
        --k;
    }
    return k;
}

double TransferOperator::tail_bound(long cutoff) const
{
    require(cutoff >= 0, "cutoff must be non-negative");
    double c = static_cast<double>(cutoff);
    switch (kind_) {
    case PotentialKind::sos: return geometric_tail(1.0, beta_, cutoff + 1);
    case PotentialKind::discrete_gaussian: {
        // consecutive-term ratio beyond the cutoff is at most e^{-beta (2M + 3)}
        double first = std::exp(-beta_ * (c + 1.0) * (c + 1.0));
        return 2.0 * first / -std::expm1(-beta_ * (2.0 * c + 3.0));
    }
    default: break;
    }
    long K = static_cast<long>(central_.size()) - 1;
    double sum = 0.0;
    for (long k = K; k > cutoff; --k) {
        sum += 2.0 * central_[static_cast<std::size_t>(k)];
    }
    if (tail_) {
        sum += geometric_tail(tail_->prefactor, tail_->rate, std::max(cutoff, K) + 1);
    }
    return sum;
}

double eval_Q(const TransferOperator& op, long m)
{
    return op(m);
}

//---------------------------------------------------------------------------//
// Wrapped sums
//---------------------------------------------------------------------------//

double wrapped_sum_numeric(const TransferOperator& op, int q, int m, double tol)
{
    require(q >= 1, "period q must be at least 1");
    require(m >= 0 && m < q, "residue must lie in [0, q)");
    require(tol > 0.0, "tolerance must be positive");
    auto cutoff = certified_cutoff(op, tol);
    if (!cutoff) {
        throw Error(ErrorKind::non_summable,
                    "tail bound cannot certify tolerance " + std::to_string(tol));
    }
    long M = *cutoff;
    // accumulate from the outermost terms inward
    long hi = m + static_cast<long>(q) * ((M - m) / q);
    double sum = 0.0;
    long lo_start = m - static_cast<long>(q) * ((M + m) / q);
    long k_pos = hi;
    long k_neg = lo_start;
    while (k_pos >= m || k_neg < m) {
        bool take_pos = k_pos >= m && (k_neg >= m || k_pos >= -k_neg);
        if (take_pos) {
            sum += op(k_pos);
            k_pos -= q;
        } else {
            sum += op(k_neg);
            k_neg += q;
        }
    }
    return sum;
}

double wrapped_sum(const TransferOperator& op, int q, int m, double tol)
{
    require(q >= 1, "period q must be at least 1");
    require(m >= 0 && m < q, "residue must lie in [0, q)");
    if (op.kind() == PotentialKind::sos) {
        // (e^{-beta m'} + e^{-beta (q - m')}) / (1 - e^{-beta q}), m' = min(m, q - m)
        double b = op.beta();
        int mm = std::min(m, q - m);
        double num = std::exp(-b * mm) + std::exp(-b * (q - mm));
        return num / -std::expm1(-b * q);
    }
    // Q is symmetric, so T(m) = T(q - m); fold to keep that exact
    return wrapped_sum_numeric(op, q, m == 0 ? 0 : std::min(m, q - m), tol);
}

std::vector<double> wrapped_sums(const TransferOperator& op, int q, double tol)
{
    require(q >= 1, "period q must be at least 1");
    std::vector<double> out(static_cast<std::size_t>(q));
    for (int m = 0; m <= q / 2; ++m) {
        double v = wrapped_sum(op, q, m, tol);
        out[static_cast<std::size_t>(m)] = v;
        out[static_cast<std::size_t>(mod_q(-m, q))] = v;
    }
    return out;
}

double total_mass(const TransferOperator& op, double tol)
{
    return wrapped_sum(op, 1, 0, tol);
}

TransferOperator restrict_to_window(const TransferOperator& op, long cutoff)
{
    require(cutoff >= 0, "cutoff must be non-negative");
    if (auto radius = op.support_radius(); radius && *radius <= cutoff) {
        return op;
    }
    std::map<long, double> weights;
    for (long m = 0; m <= cutoff; ++m) {
        weights.emplace(m, op(m));
    }
    return TransferOperator::table(std::move(weights));
}

//---------------------------------------------------------------------------//
// PeriodicBoundaryLaw
//---------------------------------------------------------------------------//

PeriodicBoundaryLaw::PeriodicBoundaryLaw(std::vector<double> values, bool solved)
    : a_(std::move(values)), solved_(solved)
{
    require(!a_.empty(), "boundary law needs at least one entry");
    for (double v : a_) {
        require(std::isfinite(v) && v > 0.0, "boundary law entries must be positive and finite");
    }
    double a0 = a_.front();
    for (double& v : a_) {
        v /= a0;
    }
    a_.front() = 1.0;
}

PeriodicBoundaryLaw PeriodicBoundaryLaw::trivial(int q)
{
    require(q >= 1, "period q must be at least 1");
    return PeriodicBoundaryLaw(std::vector<double>(static_cast<std::size_t>(q), 1.0), true);
}

PeriodicBoundaryLaw PeriodicBoundaryLaw::shifted(long j) const
{
    std::vector<double> out(a_.size());
    for (int i = 0; i < period(); ++i) {
        out[static_cast<std::size_t>(i)] = (*this)(i + j);
    }
    return PeriodicBoundaryLaw(std::move(out), solved_);
}

PeriodicBoundaryLaw PeriodicBoundaryLaw::perturbed(double relative) const
{
    std::vector<double> out(a_);
    if (out.size() > 1) {
        out[1] *= 1.0 + relative;
    }
    return PeriodicBoundaryLaw(std::move(out), false);
}

PeriodicBoundaryLaw PeriodicBoundaryLaw::with_solved(bool solved) const
{
    PeriodicBoundaryLaw copy(*this);
    copy.solved_ = solved;
    return copy;
}

bool PeriodicBoundaryLaw::is_trivial(double tol) const
{
    return std::all_of(a_.begin(), a_.end(), [tol](double v) { return std::abs(v - 1.0) <= tol; });
}

//---------------------------------------------------------------------------//
// IncrementWindow
//---------------------------------------------------------------------------//

IncrementWindow choose_window(const TransferOperator& op, const PeriodicBoundaryLaw& l,
                              double tail_mass_bound)
{
    require(tail_mass_bound > 0.0, "tail mass bound must be positive");
    int q = l.period();
    auto T = wrapped_sums(op, q);
    double min_norm = std::numeric_limits<double>::infinity();
    for (int s = 0; s < q; ++s) {
        double n = 0.0;
        for (int r = 0; r < q; ++r) {
            n += T[static_cast<std::size_t>(r)] * l(s + r);
        }
        min_norm = std::min(min_norm, n);
    }
    auto values = l.values();
    double max_l = *std::max_element(values.begin(), values.end());
    auto cutoff = certified_cutoff(op, tail_mass_bound, max_l / min_norm);
    if (!cutoff) {
        throw Error(ErrorKind::non_summable, "no window certifies the requested tail mass");
    }
    return IncrementWindow{*cutoff, tail_mass_bound};
}

} // namespace ggm
