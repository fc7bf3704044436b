#pragma once

#include <vector>

#include "ggm/measures.hpp"

namespace ggm {

/// Event {increments on `volume` equal zeta}, attached to the connecting
/// path at `anchor`.
struct LocalEvent {
    FiniteTreeVolume volume;
    int anchor = 0;
    GradientConfiguration zeta;
};

struct CorrelationResult {
    double covariance = 0.0;
    double bound = 0.0;
    double prob_a = 0.0;
    double prob_b = 0.0;
    double prob_ab = 0.0;
    double tv = 0.0; // max_s TV((P')^n(s, .), alpha)
};

/// Covariance of two local events whose anchors are n edges apart. The
/// layer at A's anchor is carried to B's anchor by (P')^n:
///   cov = sum_s alpha(s) a(s) sum_t ((P')^n(s, t) - alpha(t)) b(t)
/// with a(s), b(t) the pinned event probabilities. The bound is
///   2 nu(A) max_s TV((P')^n(s, .), alpha) max_t b(t).
CorrelationResult correlation_and_bound(const LayerKernel& kernel, const FuzzyChain& chain, const LocalEvent& A,
                                        const LocalEvent& B, int n);

/// Geometric envelope C delta^n of the mixing sequence: delta is the second
/// eigenvalue modulus, C = max(TV(1) / delta, TV(2) / delta^2).
struct MixingEnvelope {
    double delta = 0.0;
    double C = 0.0;
    double at(int n) const;
    /// Smallest n with C delta^n below the target.
    int steps_below(double target) const;
};
MixingEnvelope mixing_envelope(const FuzzyChain& chain);

/// Least-squares slope of log|y_i| against x_i.
double log_slope(const std::vector<double>& x, const std::vector<double>& y);

struct IdentifiabilityResult {
    bool distinguishable = false;
    double gap = 0.0;          // max over the window of the single-bond marginal gap
    bool shift_related = false; // l2 is a cyclic shift of l1
};

/// Compares single-bond marginals, proportional to Q(z) sum_s l(s) l(s + z).
IdentifiabilityResult identifiability_check(const TransferOperator& op, const PeriodicBoundaryLaw& l1,
                                            const PeriodicBoundaryLaw& l2, double threshold = 1e-10);

/// Single-bond marginal on [-M, M] for the window chosen for (op, l).
std::vector<double> single_bond_marginal(const TransferOperator& op, const PeriodicBoundaryLaw& l, long cutoff);

/// Two-layer chain on Z: from layer s, step +-1 with probability eps_s
/// each and 0 with probability 1 - 2 eps_s.
class CounterexampleChain {
  public:
    CounterexampleChain(double eps0, double eps1);

    double eps0() const { return eps0_; }
    double eps1() const { return eps1_; }
    /// (1 - 2 eps1) / (1 - 2 eps0).
    double C() const;
    /// alpha(0), alpha(1) with alpha(1) / alpha(0) = eps0 / eps1.
    std::vector<double> alpha() const;
    LayerKernel kernel() const;

  private:
    double eps0_;
    double eps1_;
};

/// nu(eta_b = 0 | zeros on L and R) / nu(eta_b = 1 | zeros on L and R).
double counterexample_conditional_ratio(const CounterexampleChain& ce, int lenL, int lenR);

/// Same ratio from the mixture on a path of lenL + 1 + lenR edges.
double counterexample_ratio_enumerated(const CounterexampleChain& ce, int lenL, int lenR);

/// Largest difference of the single-bond marginal across bond positions
/// of a path with the given number of edges.
double counterexample_translation_gap(const CounterexampleChain& ce, int edges);

} // namespace ggm
