#include "ggm/chains.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ggm {
namespace {

// rounding slack when comparing a truncation deficit to its bound
constexpr double kSlack = 1e-14;

Eigen::MatrixXd to_eigen(const Matrix& P)
{
    auto n = static_cast<Eigen::Index>(P.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            m(i, j) = P[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    return m;
}

} // namespace

LayerKernel LayerKernel::from_rows(int q, long cutoff, std::vector<std::vector<double>> rows)
{
    require(q >= 1, "period q must be at least 1");
    require(cutoff >= 0, "cutoff must be non-negative");
    require(static_cast<int>(rows.size()) == q, "kernel needs one row per layer");
    LayerKernel k;
    k.q_ = q;
    k.window_ = IncrementWindow{cutoff, 0.0};
    for (auto& row : rows) {
        require(static_cast<long>(row.size()) == 2 * cutoff + 1, "kernel row must cover [-M, M]");
        double sum = 0.0;
        for (double p : row) {
            require(std::isfinite(p) && p >= 0.0, "kernel entries must be non-negative");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw Error(ErrorKind::non_stochastic, "kernel row sums to " + std::to_string(sum));
        }
        for (double& p : row) {
            p /= sum;
        }
        k.deficit_.push_back(0.0);
    }
    k.rows_ = std::move(rows);
    return k;
}

double LayerKernel::Q(long zeta) const
{
    require(has_source(), "kernel was not built from a transfer operator");
    if (zeta < -cutoff() || zeta > cutoff()) {
        return 0.0;
    }
    return q_window_[static_cast<std::size_t>(zeta + cutoff())];
}

const PeriodicBoundaryLaw& LayerKernel::law() const
{
    require(has_source(), "kernel was not built from a boundary law");
    return *law_;
}

double LayerKernel::window_normalizer(long s) const
{
    require(has_source(), "kernel was not built from a boundary law");
    return normalizer_[static_cast<std::size_t>(mod_q(s, q_))];
}

LayerKernel build_layer_kernel(const TransferOperator& op, const PeriodicBoundaryLaw& l,
                               const IncrementWindow& window)
{
    require(window.cutoff >= 0, "window cutoff must be non-negative");
    int q = l.period();
    long M = window.cutoff;
    auto T = wrapped_sums(op, q);

    LayerKernel k;
    k.q_ = q;
    k.window_ = window;
    k.law_ = l;
    for (long c = -M; c <= M; ++c) {
        k.q_window_.push_back(op(c));
    }
    for (int s = 0; s < q; ++s) {
        double exact = 0.0;
        for (int r = 0; r < q; ++r) {
            exact += T[static_cast<std::size_t>(r)] * l(s + r);
        }
        std::vector<double> row;
        double windowed = 0.0;
        for (long c = -M; c <= M; ++c) {
            double w = k.q_window_[static_cast<std::size_t>(c + M)] * l(s + c);
            row.push_back(w);
        }
        // sum from the edges inward
        for (long c = M; c >= 1; --c) {
            windowed += row[static_cast<std::size_t>(M + c)] + row[static_cast<std::size_t>(M - c)];
        }
        windowed += row[static_cast<std::size_t>(M)];
        double deficit = std::max(0.0, 1.0 - windowed / exact);
        if (deficit > window.tail_mass_bound + kSlack) {
            throw Error(ErrorKind::non_summable, "row " + std::to_string(s) + " loses mass " +
                                                     std::to_string(deficit) + " outside the window M = " +
                                                     std::to_string(M));
        }
        for (double& w : row) {
            w /= windowed;
        }
        k.rows_.push_back(std::move(row));
        k.deficit_.push_back(deficit);
        k.normalizer_.push_back(windowed);
    }
    return k;
}

LayerKernel build_layer_kernel(const TransferOperator& op, const PeriodicBoundaryLaw& l)
{
    return build_layer_kernel(op, l, choose_window(op, l));
}

FuzzyChain fuzzy_transform(const LayerKernel& k)
{
    int q = k.period();
    long M = k.cutoff();
    FuzzyChain chain;
    chain.q = q;
    chain.matrix.assign(static_cast<std::size_t>(q), std::vector<double>(static_cast<std::size_t>(q), 0.0));
    for (int i = 0; i < q; ++i) {
        auto& row = chain.matrix[static_cast<std::size_t>(i)];
        for (long z = -M; z <= M; ++z) {
            row[static_cast<std::size_t>(mod_q(i + z, q))] += k(i, z);
        }
        double sum = 0.0;
        for (double p : row) {
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw Error(ErrorKind::non_stochastic, "fuzzy row " + std::to_string(i) + " sums to " + std::to_string(sum));
        }
    }
    if (!is_irreducible(chain.matrix)) {
        throw Error(ErrorKind::reducible, "fuzzy chain is reducible; invariant distribution not unique");
    }
    if (k.has_source()) {
        const auto& l = k.law();
        double total = 0.0;
        for (int i = 0; i < q; ++i) {
            double a = l(i) * k.window_normalizer(i);
            chain.alpha.push_back(a);
            total += a;
        }
        for (double& a : chain.alpha) {
            a /= total;
        }
    } else {
        chain.alpha = stationary_distribution(chain.matrix);
    }
    return chain;
}

double check_reversibility(const LayerKernel& k, const FuzzyChain& chain)
{
    require(chain.q == k.period(), "chain and kernel periods differ");
    int q = k.period();
    long M = k.cutoff();
    double worst = 0.0;
    for (int i = 0; i < q; ++i) {
        for (long z = -M; z <= M; ++z) {
            int j = mod_q(i + z, q);
            double lhs = chain.alpha[static_cast<std::size_t>(i)] * k(i, z);
            double rhs = chain.alpha[static_cast<std::size_t>(j)] * k(j, -z);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

std::vector<double> stationary_distribution(const Matrix& P)
{
    Eigen::MatrixXd m = to_eigen(P);
    Eigen::EigenSolver<Eigen::MatrixXd> es(m.transpose());
    Eigen::Index best = 0;
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double g = std::abs(es.eigenvalues()[i] - std::complex<double>(1.0, 0.0));
        if (g < gap) {
            gap = g;
            best = i;
        }
    }
    Eigen::VectorXd v = es.eigenvectors().col(best).real();
    double total = v.sum();
    std::vector<double> out(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out[static_cast<std::size_t>(i)] = v(i) / total;
    }
    return out;
}

bool is_irreducible(const Matrix& P)
{
    std::size_t n = P.size();
    // every state reaches every other in the directed support graph
    for (std::size_t start = 0; start < n; ++start) {
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{start};
        seen[start] = true;
        while (!stack.empty()) {
            std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                if (P[i][j] > 0.0 && !seen[j]) {
                    seen[j] = true;
                    stack.push_back(j);
                }
            }
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
            return false;
        }
    }
    return true;
}

double second_eigen_modulus(const Matrix& P)
{
    if (P.size() < 2) {
        return 0.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(P), false);
    std::vector<double> mods;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        mods.push_back(std::abs(es.eigenvalues()[i]));
    }
    std::sort(mods.rbegin(), mods.rend());
    return mods[1];
}

Matrix multiply(const Matrix& A, const Matrix& B)
{
    std::size_t n = A.size();
    Matrix out(n, std::vector<double>(B.empty() ? 0 : B[0].size(), 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < B.size(); ++k) {
            for (std::size_t j = 0; j < out[i].size(); ++j) {
                out[i][j] += A[i][k] * B[k][j];
            }
        }
    }
    return out;
}

Matrix matrix_power(const Matrix& P, int n)
{
    require(n >= 0, "matrix power must be non-negative");
    std::size_t q = P.size();
    Matrix out(q, std::vector<double>(q, 0.0));
    for (std::size_t i = 0; i < q; ++i) {
        out[i][i] = 1.0;
    }
    for (int step = 0; step < n; ++step) {
        out = multiply(out, P);
    }
    return out;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& r)
{
    require(p.size() == r.size(), "distributions differ in size");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += std::abs(p[i] - r[i]);
    }
    return 0.5 * s;
}

std::vector<double> tv_sequence(const FuzzyChain& chain, int nmax)
{
    require(nmax >= 0, "nmax must be non-negative");
    std::vector<double> out;
    Matrix Pn = matrix_power(chain.matrix, 0);
    for (int n = 0; n <= nmax; ++n) {
        double worst = 0.0;
        for (const auto& row : Pn) {
            worst = std::max(worst, total_variation(row, chain.alpha));
        }
        out.push_back(worst);
        Pn = multiply(Pn, chain.matrix);
    }
    return out;
}

} // namespace ggm
