#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "ccrweyl/diagnostics.hpp"
#include "ccrweyl/gaussian.hpp"
#include "ccrweyl/grid.hpp"
#include "ccrweyl/matrix_units.hpp"
#include "support.hpp"

using namespace ccrweyl;
using ccrweyl::testing::gaussian_value;
using ccrweyl::testing::random_gaussian;
using ccrweyl::testing::rng_for;
using ccrweyl::testing::twisted_product_at;

namespace {

GridFunction sample(const GaussianElement& f, const PhaseGrid& grid) { return evaluate(f, grid); }

}  // namespace

TEST(PhaseGrid, Validation) {
    EXPECT_THROW(PhaseGrid(0, 10, 128), std::invalid_argument);
    EXPECT_THROW(PhaseGrid(3, 10, 16), std::invalid_argument);
    EXPECT_THROW(PhaseGrid(1, -1, 128), std::invalid_argument);
    EXPECT_THROW(PhaseGrid(1, 10, 127), std::invalid_argument);
    EXPECT_THROW(PhaseGrid(1, 10, 6), std::invalid_argument);
}

TEST(PhaseGrid, IndexingRoundTrip) {
    const PhaseGrid grid(2, 5.0, 10);
    EXPECT_EQ(grid.size(), 10000u);
    EXPECT_DOUBLE_EQ(grid.spacing(), 1.0);
    for (std::size_t node : {std::size_t{0}, std::size_t{1234}, std::size_t{9999}})
        EXPECT_EQ(grid.linear(grid.indices(node)), node);
    EXPECT_EQ(grid.point(grid.origin()).norm(), 0.0);
    EXPECT_DOUBLE_EQ(grid.coordinate(0), -5.0);
    EXPECT_DOUBLE_EQ(grid.coordinate(9), 4.0);
    // Axis 0 varies slowest.
    EXPECT_EQ(grid.indices(1000)[0], 1);
    EXPECT_EQ(grid.indices(1)[3], 1);
}

TEST(TwistedConvolution, AcceleratedMatchesDirect) {
    auto rng = rng_for(3);
    for (int samples : {32, 64, 128}) {
        const PhaseGrid grid(1, 9.0, samples);
        for (int trial = 0; trial < 2; ++trial) {
            const GridFunction f = sample(random_gaussian(rng, 1), grid);
            const GridFunction h = sample(random_gaussian(rng, 1), grid);
            const GridFunction fast = twisted_convolve(f, h, ConvolutionMethod::Accelerated);
            const GridFunction slow = twisted_convolve(f, h, ConvolutionMethod::Direct);
            EXPECT_LT(relative_l1_distance(fast, slow), 1e-8) << "N=" << samples;
        }
    }
    const PhaseGrid grid(1, 10.0, 64);
    const GridFunction a = sample_matrix_unit(3, 1, grid), b = sample_matrix_unit(1, 2, grid);
    EXPECT_LT(relative_l1_distance(twisted_convolve(a, b, ConvolutionMethod::Accelerated),
                                   twisted_convolve(a, b, ConvolutionMethod::Direct)),
              1e-8);
}

TEST(TwistedConvolution, PointEvaluationMatchesFullSum) {
    auto rng = rng_for(8);
    const PhaseGrid grid(1, 8.0, 48);
    const GridFunction f = sample(random_gaussian(rng, 1), grid);
    const GridFunction h = sample(random_gaussian(rng, 1), grid);
    const GridFunction full = twisted_convolve(f, h, ConvolutionMethod::Direct);
    for (std::size_t node : {std::size_t{0}, grid.origin(), std::size_t{777}, grid.size() - 1})
        EXPECT_NEAR(std::abs(twisted_convolve_at(f, h, node) - full[node]), 0.0, 1e-13);
}

TEST(TwistedConvolution, AgreesWithFineQuadratureOracle) {
    auto rng = rng_for(19);
    const PhaseGrid grid(1, 10.0, 128);
    const GaussianElement f = random_gaussian(rng, 1), h = random_gaussian(rng, 1);
    const GridFunction prod = twisted_convolve(sample(f, grid), sample(h, grid));
    auto ff = [&](double x, double y) { return gaussian_value(f, RealVector{{x, y}}); };
    auto hh = [&](double x, double y) { return gaussian_value(h, RealVector{{x, y}}); };
    for (auto [i, j] : {std::pair{64, 64}, {70, 60}, {50, 75}, {80, 80}}) {
        const double x = grid.coordinate(i), y = grid.coordinate(j);
        const Complex expected = twisted_product_at(ff, hh, x, y);
        const Complex got = prod[static_cast<std::size_t>(i) * 128 + j];
        EXPECT_LT(std::abs(got - expected), 1e-8 * std::max(1.0, std::abs(expected))) << x << "," << y;
    }
}

TEST(TwistedConvolution, TwoFreedoms) {
    const PhaseGrid grid(2, 6.0, 12);
    const GridFunction g = sample(vn_projection(2), grid);
    EXPECT_LT(relative_l1_distance(twisted_convolve(g, g), g), 1e-3);
    EXPECT_THROW(twisted_convolve(g, g, ConvolutionMethod::Accelerated), std::invalid_argument);
    const PhaseGrid big(2, 6.0, 34);
    const GridFunction gb = GridFunction::zeros(big);
    EXPECT_THROW(twisted_convolve(gb, gb), std::invalid_argument);
}

TEST(TwistedConvolution, RejectsMismatchedGrids) {
    const GridFunction a = GridFunction::zeros(PhaseGrid(1, 10, 32));
    const GridFunction b = GridFunction::zeros(PhaseGrid(1, 10, 64));
    EXPECT_THROW(twisted_convolve(a, b), std::invalid_argument);
}

TEST(TwistedConvolution, WarnsAboutBoundaryMass) {
    std::vector<std::string> messages;
    ScopedWarningHandler capture([&](const std::string& m) { messages.push_back(m); });
    const PhaseGrid grid(1, 3.0, 32);
    const GridFunction wide = sample(g_gamma(4.0), grid);
    twisted_convolve(wide, wide);
    EXPECT_FALSE(messages.empty());
}

TEST(Involution, IsExactlyInvolutiveAndMatchesClosedForm) {
    auto rng = rng_for(2);
    const PhaseGrid grid(1, 10.0, 64);
    const GaussianElement f = random_gaussian(rng, 1);
    const GridFunction fs = sample(f, grid);
    const GridFunction twice = involution(involution(fs));
    for (std::size_t i = 0; i < grid.size(); ++i) ASSERT_EQ(twice[i], fs[i]);
    // Away from the edge row the reflection agrees with the closed-form involution.
    const GridFunction closed = sample(involution(f), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto idx = grid.indices(i);
        if (idx[0] == 0 || idx[1] == 0) continue;
        ASSERT_LT(std::abs(involution(fs)[i] - closed[i]), 1e-12);
    }
}

TEST(Involution, ReversesProducts) {
    auto rng = rng_for(4);
    const PhaseGrid grid(1, 10.0, 128);
    const GridFunction f = sample(random_gaussian(rng, 1), grid), h = sample(random_gaussian(rng, 1), grid);
    EXPECT_LT(relative_l1_distance(involution(twisted_convolve(f, h)), twisted_convolve(involution(h), involution(f))),
              1e-9);
}

TEST(WeylMultiplier, SatisfiesTheWeylRelationOnTheGrid) {
    const PhaseGrid grid(1, 10.0, 64);
    const double h = grid.spacing();
    const GridFunction g = sample(vn_projection(1), grid);
    RealVector v{{3 * h, -2 * h}}, w{{-h, 4 * h}};
    const SymplecticSpace space(1);
    const GridFunction twice = weyl_multiplier(Side::Left, v, weyl_multiplier(Side::Left, w, g));
    const GridFunction once =
        weyl_multiplier(Side::Left, v + w, g).scaled(std::polar(1.0, -0.5 * symplectic_form(v, w, space)));
    EXPECT_LT(relative_l1_distance(twice, once), 1e-8);
}

TEST(WeylMultiplier, MatchesClosedFormOnAlignedShifts) {
    auto rng = rng_for(6);
    const PhaseGrid grid(1, 10.0, 128);
    const double h = grid.spacing();
    const GaussianElement f = random_gaussian(rng, 1);
    const RealVector v{{5 * h, 7 * h}};
    for (Side side : {Side::Left, Side::Right}) {
        const GridFunction sampled = weyl_multiplier(side, v, sample(f, grid));
        const GridFunction closed = sample(multiplier(side, WeylShift::unitary(v), f), grid);
        EXPECT_LT(relative_l1_distance(sampled, closed), 1e-10);
    }
    EXPECT_THROW(weyl_multiplier(Side::Left, RealVector{{0.3 * h, 0.0}}, sample(f, grid)), std::invalid_argument);
}

TEST(ShiftAutomorphism, RespectsProducts) {
    auto rng = rng_for(9);
    const PhaseGrid grid(1, 10.0, 128);
    const GridFunction f = sample(random_gaussian(rng, 1), grid), h = sample(random_gaussian(rng, 1), grid);
    const RealVector lambda{{0.7, -0.4}};
    EXPECT_LT(relative_l1_distance(
                  twisted_convolve(shift_automorphism(lambda, f), shift_automorphism(lambda, h)),
                  shift_automorphism(lambda, twisted_convolve(f, h))),
              1e-10);
}

TEST(Norms, InnerProductAndTrace) {
    const PhaseGrid grid = PhaseGrid::standard();
    const GridFunction g = sample(vn_projection(1), grid);
    // ||g||_1 = (2 pi)^{-1} 4 pi = 2, <g, g> = (2 pi)^{-2} 2 pi.
    EXPECT_NEAR(l1_norm(g), 2.0, 1e-10);
    EXPECT_NEAR(l2_inner(g, g).real(), 1.0 / kTwoPi, 1e-12);
    EXPECT_NEAR(std::abs(trace(g) - 1.0), 0.0, 1e-15);
    EXPECT_LT(g.boundary_ratio(), 1e-10);
    EXPECT_THROW(relative_l1_distance(g, GridFunction::zeros(grid)), std::domain_error);
}
