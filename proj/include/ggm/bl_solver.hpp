#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "ggm/model.hpp"

namespace ggm {

enum class BranchLabel { trivial, upper, lower, other };
std::string_view to_string(BranchLabel label);

struct SolveReport {
    PeriodicBoundaryLaw solution;
    double residual = 0.0;
    int iterations = 0;
    BranchLabel branch_label = BranchLabel::other;
};

/// Thrown when the iteration budget runs out; carries the best iterate seen.
class MaxIterationsError : public Error {
  public:
    explicit MaxIterationsError(SolveReport best);
    const SolveReport& best() const { return best_; }

  private:
    SolveReport best_;
};

/// max_k |a_k - c F_k| with F_k = (sum_m T(k - m) a_m)^d and c = 1 / F_0.
double residual(const PeriodicBoundaryLaw& l, const TransferOperator& op, int d);
/// Same, from precomputed wrapped sums T(0..q-1).
double residual(std::span<const double> a, std::span<const double> wrapped, int d);

struct SolveOptions {
    double damping = 0.7;
    int max_iter = 20000;
    double tol = 1e-12;
};

/// Damped iteration a <- (1 - damping) a + damping G(a), G(a)_k = F_k / F_0.
SolveReport fixed_point_solve(const TransferOperator& op, int q, int d, std::vector<double> init,
                              const SolveOptions& opts = {});

enum class Ansatz { generic, q4_paired };

/// Distinct converged solutions from 50 log-spaced starts in [1e-3, 1e3]
/// per start pattern, plus the trivial law. Duplicates (entries within
/// 1e-6) are merged. Sorted by a_1, then a_2, ...
std::vector<SolveReport> multi_start_solve(const TransferOperator& op, int q, int d,
                                           Ansatz ansatz = Ansatz::generic,
                                           const SolveOptions& opts = {});

/// Starting vectors used by multi_start_solve.
std::vector<std::vector<double>> multi_start_inits(int q, Ansatz ansatz, int count = 50);

/// Trivial law plus, when cosh(beta) >= 3, the laws a_1 = u^2 with
/// u = (cosh b - 1)/2 +- sqrt(cosh^2 b - 2 cosh b - 3)/2.
std::vector<PeriodicBoundaryLaw> closed_form_q2_sos(double beta, int d = 2);

/// Effective Ising (q = 2, q = 4 paired) or Potts (q = 3) inverse temperature.
double effective_beta(const TransferOperator& op, int q, Ansatz variant = Ansatz::generic);

/// SOS beta at which effective_beta reaches the Ising threshold acoth(d)
/// (q = 2, q = 4 paired) or the binary-tree Potts threshold log(1 + 2 sqrt 2)
/// (q = 3, d = 2 only).
double critical_beta(int q, int d, Ansatz variant = Ansatz::generic);

/// Effective threshold the SOS beta is tuned to.
double effective_threshold(int q, int d, Ansatz variant = Ansatz::generic);

/// All positive roots of a = ((Qpm + a Qpp) / (Qpp + a Qpm))^d, ascending.
std::vector<double> ising_type_solve(double Qpp, double Qpm, int d);

/// Zachary summability of sum_w (sum_c Q(c) l(w + c))^{d+1}. Periodic laws
/// give a periodic summand bounded below by a positive constant, so the
/// answer is always false.
bool is_normalizable(const PeriodicBoundaryLaw& l, const TransferOperator& op, int d, long horizon);

} // namespace ggm
