#include <gtest/gtest.h>

#include <cmath>

#include "ggm/bl_solver.hpp"
#include "ggm/chains.hpp"
#include "ggm/diagnostics.hpp"
#include "ggm/transfer.hpp"
#include "test_support.hpp"

using namespace ggm;

namespace {

const PeriodicBoundaryLaw kUpper({1.0, 5.4461076594444954});

} // namespace

TEST(LayerKernel, TrivialLawGivesLayerFreeRows)
{
    auto op = TransferOperator::sos(1.0);
    auto k = build_layer_kernel(op, PeriodicBoundaryLaw::trivial(3), IncrementWindow{4, 1e-1});
    double z = 0.0;
    for (long c = -4; c <= 4; ++c) {
        z += op(c);
    }
    for (int s = 0; s < 3; ++s) {
        for (long c = -4; c <= 4; ++c) {
            EXPECT_NEAR(k(s, c), op(c) / z, 1e-15);
        }
    }
}

TEST(LayerKernel, SosRowMatchesBruteNormalizer)
{
    auto op = TransferOperator::sos(2.0);
    auto k = build_layer_kernel(op, kUpper);
    auto ref = oracle::kernel([](long m) { return oracle::sos(2.0, m); }, {1.0, 5.4461076594444954}, 60);
    EXPECT_NEAR(ref(0, 1), 0.29030096613282778, 1e-14);
    EXPECT_NEAR(ref.N[0], 2.5389186003975187, 1e-13);
    EXPECT_NEAR(ref.N[1], 5.9250482105806105, 1e-13);
    EXPECT_NEAR(k(0, 1), ref(0, 1), 1e-12);
    for (int s = 0; s < 2; ++s) {
        double sum = 0.0;
        for (double p : k.row(s)) {
            EXPECT_GE(p, 0.0);
            sum += p;
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
        EXPECT_LE(k.deficit()[static_cast<std::size_t>(s)], 1e-12);
        for (long z = -k.cutoff(); z <= k.cutoff(); ++z) {
            EXPECT_NEAR(k(s, z), ref(s, z), 1e-12);
        }
    }
}

TEST(LayerKernel, LiftedPottsRowsHaveShortSupport)
{
    auto laws = potts_boundary_laws(3, 2.0, 2);
    ASSERT_GE(laws.size(), 2u);
    auto op = lift_potts(3, 2.0);
    for (const auto& l : laws) {
        auto k = build_layer_kernel(op, l, IncrementWindow{3, 1e-12});
        for (int s = 0; s < 3; ++s) {
            EXPECT_EQ(k(s, 2), 0.0);
            EXPECT_EQ(k(s, -3), 0.0);
            EXPECT_GT(k(s, 1), 0.0);
        }
    }
}

TEST(LayerKernel, TruncationBeyondTheBoundIsRejected)
{
    try {
        build_layer_kernel(TransferOperator::sos(0.1), PeriodicBoundaryLaw::trivial(2), IncrementWindow{2, 1e-12});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::non_summable);
    }
}

TEST(LayerKernel, RowsFromMatrix)
{
    EXPECT_THROW(LayerKernel::from_rows(2, 1, {{0.2, 0.2, 0.2}, {0.3, 0.4, 0.3}}), Error);
    auto k = LayerKernel::from_rows(2, 0, {{1.0}, {1.0}});
    try {
        fuzzy_transform(k);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::reducible);
    }
}

TEST(FuzzyChain, TrivialLawPeriodTwo)
{
    auto op = TransferOperator::sos(0.8);
    auto k = build_layer_kernel(op, PeriodicBoundaryLaw::trivial(2));
    auto c = fuzzy_transform(k);
    auto Q = [](long m) { return oracle::sos(0.8, m); };
    double t0 = oracle::wrapped(Q, 2, 0);
    double t1 = oracle::wrapped(Q, 2, 1);
    double p = t0 / (t0 + t1);
    EXPECT_NEAR(c.matrix[0][0], p, 1e-12);
    EXPECT_NEAR(c.matrix[0][1], 1 - p, 1e-12);
    EXPECT_NEAR(c.matrix[1][1], p, 1e-12);
    EXPECT_NEAR(c.alpha[0], 0.5, 1e-15);
    EXPECT_NEAR(c.alpha[1], 0.5, 1e-15);
}

TEST(FuzzyChain, AlphaIsTheStationaryVector)
{
    auto op = TransferOperator::sos(2.0);
    auto k = build_layer_kernel(op, kUpper);
    auto c = fuzzy_transform(k);
    auto ref = oracle::stationary(oracle::fuzzy(oracle::kernel([](long m) { return oracle::sos(2.0, m); },
                                                               {1.0, 5.4461076594444954}, k.cutoff())));
    for (int s = 0; s < 2; ++s) {
        EXPECT_NEAR(c.alpha[static_cast<std::size_t>(s)], ref[static_cast<std::size_t>(s)], 1e-10);
        double row = 0.0;
        double back = 0.0;
        for (int t = 0; t < 2; ++t) {
            row += c.matrix[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
            back += c.alpha[static_cast<std::size_t>(t)] * c.matrix[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)];
        }
        EXPECT_NEAR(row, 1.0, 1e-12);
        EXPECT_NEAR(back, c.alpha[static_cast<std::size_t>(s)], 1e-10);
    }
    auto eig = stationary_distribution(c.matrix);
    EXPECT_NEAR(eig[0], c.alpha[0], 1e-10);
}

TEST(FuzzyChain, CounterexampleAlphaRatio)
{
    CounterexampleChain ce(0.1, 0.05);
    auto c = fuzzy_transform(ce.kernel());
    EXPECT_NEAR(c.alpha[1] / c.alpha[0], 0.1 / 0.05, 1e-12);
}

TEST(Reversibility, TrivialAndSolvedLaws)
{
    auto op = TransferOperator::sos(2.0);
    auto trivial = build_layer_kernel(op, PeriodicBoundaryLaw::trivial(2));
    EXPECT_LT(check_reversibility(trivial, fuzzy_transform(trivial)), 1e-12);
    for (const auto& s : multi_start_solve(op, 2, 2)) {
        auto k = build_layer_kernel(op, s.solution);
        EXPECT_LT(check_reversibility(k, fuzzy_transform(k)), 1e-9);
    }
}

// alpha(i) Pbar(i, z) = l(i) Q(z) l(i + z) / Z is symmetric for every positive
// l, so a perturbed law stays reversible.
TEST(Reversibility, HoldsForAnyPositiveLaw)
{
    auto op = TransferOperator::sos(2.0);
    auto k = build_layer_kernel(op, kUpper.perturbed(0.1));
    EXPECT_LT(check_reversibility(k, fuzzy_transform(k)), 1e-12);
    auto k3 = build_layer_kernel(op, PeriodicBoundaryLaw({1.0, 3.0, 0.2}));
    EXPECT_LT(check_reversibility(k3, fuzzy_transform(k3)), 1e-12);
}

TEST(Spectrum, TwoStateChain)
{
    Matrix P{{0.7, 0.3}, {0.1, 0.9}};
    EXPECT_NEAR(second_eigen_modulus(P), 0.6, 1e-13);
    EXPECT_TRUE(is_irreducible(P));
    EXPECT_FALSE(is_irreducible(Matrix{{1.0, 0.0}, {0.5, 0.5}}));
    auto P3 = matrix_power(P, 3);
    auto PPP = multiply(multiply(P, P), P);
    EXPECT_NEAR(P3[0][1], PPP[0][1], 1e-15);
}

TEST(Spectrum, MixingSequenceContracts)
{
    auto op = TransferOperator::sos(1.0);
    auto k = build_layer_kernel(op, PeriodicBoundaryLaw({1.0, 3.0, 0.5, 2.0}));
    auto chain = fuzzy_transform(k);
    auto tv = tv_sequence(chain, 12);
    // dbar(n) = max_{s,s'} TV(P^n(s, .), P^n(s', .)) is submultiplicative and
    // sandwiches tv(n) <= dbar(n) <= 2 tv(n)
    auto dbar = [&](int n) {
        auto Pn = matrix_power(chain.matrix, n);
        double m = 0.0;
        for (const auto& a : Pn) {
            for (const auto& b : Pn) {
                m = std::max(m, total_variation(a, b));
            }
        }
        return m;
    };
    for (int n = 1; n <= 6; ++n) {
        EXPECT_LE(tv[static_cast<std::size_t>(n + 1)], tv[static_cast<std::size_t>(n)] + 1e-15);
        EXPECT_LE(tv[static_cast<std::size_t>(n)], dbar(n) + 1e-15);
        EXPECT_LE(dbar(n), 2 * tv[static_cast<std::size_t>(n)] + 1e-15);
        for (int m = 1; m <= 6; ++m) {
            EXPECT_LE(dbar(n + m), dbar(n) * dbar(m) + 1e-15);
        }
    }
    EXPECT_NEAR(total_variation({0.2, 0.8}, {0.5, 0.5}), 0.3, 1e-15);
}
