#pragma once

#include <vector>

#include "ggm/model.hpp"

namespace ggm {

/// Wrapped row T_qQ(0..floor(q/2)); the rest follows from T(m) = T(q - m).
struct CirculantSpec {
    int q = 1;
    std::vector<double> values;

    /// All q residues.
    std::vector<double> full() const;
};

class TailTooFatError : public Error {
  public:
    TailTooFatError(double tail_beta, double minimal);
    double minimal_tail_beta() const { return minimal_; }

  private:
    double minimal_;
};

/// Q(0) = e^b / (e^b + q - 1), Q(m) = 1 / (e^b + q - 1) for 0 < |m| <= floor(q/2),
/// zero beyond. For even q the entries at +-q/2 share one residue and are halved.
TransferOperator lift_potts(int q, double beta_tilde);

/// Strictly positive variant: Q(k) = e^{-tail_beta |k|} beyond floor(q/2),
/// central entries reduced by the tail mass landing on their residue so the
/// wrapped row is still the Potts row.
TransferOperator lift_potts_positive(int q, double beta_tilde, double tail_beta);

/// Potts row of the lifted operators.
std::vector<double> potts_row(int q, double beta_tilde);

CirculantSpec clock_reduction(const TransferOperator& op, int q);

/// Residual of the clock-model equation a_k = c (sum_m T(k - m) a_m)^d.
double clock_residual(const CirculantSpec& spec, const PeriodicBoundaryLaw& l, int d);

/// Translation-invariant Potts boundary laws with m entries h and q - m
/// entries 1, for every m in 1..q-1 and every nontrivial root h, plus the
/// trivial law. Normalized to a_0 = 1.
std::vector<PeriodicBoundaryLaw> potts_boundary_laws(int q, double beta_tilde, int d);

/// Roots h != 1 of h = (((e^b + m - 1) h + q - m) / (m h + e^b + q - m - 1))^d.
std::vector<double> potts_roots(int q, double beta_tilde, int d, int m);

} // namespace ggm
