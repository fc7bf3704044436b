#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ggm/error.hpp"

namespace ggm {

/// Non-negative residue of i modulo q (q >= 1).
constexpr int mod_q(long i, int q)
{
    long r = i % q;
    return static_cast<int>(r < 0 ? r + q : r);
}

enum class PotentialKind {
    sos,
    discrete_gaussian,
    table,
    lifted_potts,
    lifted_potts_positive,
};

/// Symmetric edge weight Q(m) = exp(-U(m)) on integer increments.
///
/// Every kind is stored as a central table Q(0..K) plus an optional
/// exponential tail prefactor * exp(-rate * |m|) for |m| > K. SOS and
/// discrete Gaussian keep their closed forms and use no table.
class TransferOperator {
  public:
    struct Tail {
        double prefactor = 0.0;
        double rate = 0.0;
    };

    static TransferOperator sos(double beta);
    static TransferOperator discrete_gaussian(double beta);

    /// Weights for m >= 0 (mirrored to negative m). With a tail rate r the
    /// weights continue as Q(K) * exp(-r (|m| - K)); without one Q vanishes
    /// beyond the table.
    static TransferOperator table(std::map<long, double> weights,
                                  std::optional<double> tail_rate = std::nullopt);

    /// Raw constructor for the lifted Potts operators; use transfer.hpp.
    static TransferOperator lifted(PotentialKind kind, int potts_q, double beta_tilde,
                                   std::vector<double> central, std::optional<Tail> tail,
                                   double tail_beta = 0.0);

    PotentialKind kind() const { return kind_; }
    double beta() const { return beta_; }
    int potts_q() const { return potts_q_; }
    double beta_tilde() const { return beta_tilde_; }
    double tail_beta() const { return tail_beta_; }
    std::span<const double> central() const { return central_; }
    const std::optional<Tail>& tail() const { return tail_; }
    /// Table tail rate as given at construction (table kind only).
    std::optional<double> table_tail_rate() const;

    double operator()(long m) const;

    /// Largest |m| with Q(m) > 0, if finite.
    std::optional<long> support_radius() const;

    /// Upper bound on sum_{|m| > cutoff} Q(m).
    double tail_bound(long cutoff) const;

  private:
    TransferOperator() = default;

    PotentialKind kind_ = PotentialKind::sos;
    double beta_ = 0.0;
    int potts_q_ = 0;
    double beta_tilde_ = 0.0;
    double tail_beta_ = 0.0;
    std::vector<double> central_;
    std::optional<Tail> tail_;
};

double eval_Q(const TransferOperator& op, long m);

/// T_q Q(m) = sum_j Q(q j + m) to absolute tolerance tol. SOS uses the
/// closed geometric form; other kinds sum numerically with a certified
/// tail. Throws NonSummable if no cutoff below 10^7 certifies tol.
double wrapped_sum(const TransferOperator& op, int q, int m, double tol = 1e-15);

/// Numeric route for every kind, including SOS (cross-validation).
double wrapped_sum_numeric(const TransferOperator& op, int q, int m, double tol = 1e-15);

/// All residues T_q Q(0..q-1).
std::vector<double> wrapped_sums(const TransferOperator& op, int q, double tol = 1e-15);

/// sum_{m in Z} Q(m).
double total_mass(const TransferOperator& op, double tol = 1e-15);

/// Q restricted to |m| <= cutoff, as a finite table. Operators already
/// supported inside the cutoff are returned unchanged.
TransferOperator restrict_to_window(const TransferOperator& op, long cutoff);

/// Positive q-periodic vector (a_0, ..., a_{q-1}), normalized to a_0 = 1.
class PeriodicBoundaryLaw {
  public:
    /// Divides by values[0]; throws InvalidArgument on empty or non-positive input.
    explicit PeriodicBoundaryLaw(std::vector<double> values, bool solved = false);

    static PeriodicBoundaryLaw trivial(int q);

    int period() const { return static_cast<int>(a_.size()); }
    std::span<const double> values() const { return a_; }
    double operator()(long i) const { return a_[static_cast<std::size_t>(mod_q(i, period()))]; }
    bool solved() const { return solved_; }

    /// i -> l(i + j), renormalized.
    PeriodicBoundaryLaw shifted(long j) const;

    /// Copy with a_k scaled by (1 + relative) for k = 1 (no-op for q = 1).
    PeriodicBoundaryLaw perturbed(double relative) const;

    PeriodicBoundaryLaw with_solved(bool solved) const;

    bool is_trivial(double tol = 1e-6) const;

  private:
    std::vector<double> a_;
    bool solved_ = false;
};

/// Cutoff M for increment sums together with the tail mass it certifies.
struct IncrementWindow {
    long cutoff = 0;
    double tail_mass_bound = 1e-12;

    long width() const { return 2 * cutoff + 1; }
};

/// Smallest cutoff whose kernel tail mass for (op, l) is below the bound.
IncrementWindow choose_window(const TransferOperator& op, const PeriodicBoundaryLaw& l,
                              double tail_mass_bound = 1e-12);

} // namespace ggm
