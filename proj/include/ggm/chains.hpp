#pragma once

#include <optional>
#include <vector>

#include "ggm/model.hpp"

namespace ggm {

/// Layer-dependent increment kernel Pbar(s, zeta) for s in Z_q, |zeta| <= M.
class LayerKernel {
  public:
    /// Kernel given directly by its rows (rows[s][zeta + M]). Rows must be
    /// probability vectors within 1e-9; they are renormalized exactly.
    static LayerKernel from_rows(int q, long cutoff, std::vector<std::vector<double>> rows);

    int period() const { return q_; }
    long cutoff() const { return window_.cutoff; }
    const IncrementWindow& window() const { return window_; }

    /// Pbar(s mod q, zeta); zero outside the window.
    double operator()(long s, long zeta) const
    {
        if (zeta < -window_.cutoff || zeta > window_.cutoff) {
            return 0.0;
        }
        return rows_[static_cast<std::size_t>(mod_q(s, q_))][static_cast<std::size_t>(zeta + window_.cutoff)];
    }
    const std::vector<double>& row(int s) const { return rows_[static_cast<std::size_t>(s)]; }

    /// Mass lost to truncation per row, before renormalization.
    const std::vector<double>& deficit() const { return deficit_; }

    /// Q on the window and the boundary law, when built from (Q, l).
    bool has_source() const { return law_.has_value(); }
    double Q(long zeta) const;
    const PeriodicBoundaryLaw& law() const;
    /// sum_{|c| <= M} Q(c) l(s + c).
    double window_normalizer(long s) const;

  private:
    friend LayerKernel build_layer_kernel(const TransferOperator&, const PeriodicBoundaryLaw&,
                                          const IncrementWindow&);
    LayerKernel() = default;

    int q_ = 1;
    IncrementWindow window_;
    std::vector<std::vector<double>> rows_;
    std::vector<double> deficit_;
    std::vector<double> q_window_;
    std::vector<double> normalizer_;
    std::optional<PeriodicBoundaryLaw> law_;
};

/// Rows Q(zeta) l(s + zeta) / N(s) on the window, renormalized. Throws
/// NonSummable when some row loses more than window.tail_mass_bound.
LayerKernel build_layer_kernel(const TransferOperator& op, const PeriodicBoundaryLaw& l,
                               const IncrementWindow& window);

/// Kernel on the window chosen by choose_window(op, l).
LayerKernel build_layer_kernel(const TransferOperator& op, const PeriodicBoundaryLaw& l);

using Matrix = std::vector<std::vector<double>>;

struct FuzzyChain {
    int q = 1;
    Matrix matrix;
    std::vector<double> alpha;
};

/// Wraps the kernel mod q. alpha is l(i) N(i) normalized when the kernel
/// comes from (Q, l), else the stationary vector of the matrix.
FuzzyChain fuzzy_transform(const LayerKernel& k);

/// max |alpha(i) Pbar(i, zeta) - alpha(i + zeta) Pbar(i + zeta, -zeta)|.
double check_reversibility(const LayerKernel& k, const FuzzyChain& chain);

/// Left Perron vector of a stochastic matrix via Eigen.
std::vector<double> stationary_distribution(const Matrix& P);

bool is_irreducible(const Matrix& P);

/// Modulus of the second largest eigenvalue.
double second_eigen_modulus(const Matrix& P);

Matrix multiply(const Matrix& A, const Matrix& B);
Matrix matrix_power(const Matrix& P, int n);

/// max_s TV(P^n(s, .), alpha) for n = 0..nmax.
std::vector<double> tv_sequence(const FuzzyChain& chain, int nmax);

double total_variation(const std::vector<double>& p, const std::vector<double>& r);

} // namespace ggm
