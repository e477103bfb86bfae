#include <gtest/gtest.h>

#include <cmath>

#include "ccrweyl/gaussian.hpp"
#include "ccrweyl/matrix_units.hpp"
#include "support.hpp"

using namespace ccrweyl;
using ccrweyl::testing::complex_in_disc;
using ccrweyl::testing::laguerre_sum;
using ccrweyl::testing::rng_for;
using ccrweyl::testing::uniform;

namespace {

// e^{z a*} g e^{w a} through the ladder multipliers.
GaussianElement kernel_by_multipliers(Complex z, Complex w) {
    ComplexVector zv(1), wv(1);
    zv[0] = z;
    wv[0] = w;
    return multiplier(Side::Left, WeylShift::creation(zv),
                      multiplier(Side::Right, WeylShift::annihilation(wv), vn_projection(1)));
}

// g_{k,l}(s, t) = sqrt(k! l!) [z^k w^l] g_{z,w}(s, t), coefficients by Cauchy's formula on
// circles of the given radius with `phases` equally spaced nodes.
Complex unit_by_contour(int k, int l, double s, double t, int phases = 32, double radius = 1.0) {
    const RealVector v{{s, t}};
    Complex sum = 0.0;
    for (int a = 0; a < phases; ++a) {
        const double ta = kTwoPi * a / phases;
        for (int b = 0; b < phases; ++b) {
            const double tb = kTwoPi * b / phases;
            const Complex value = kernel_by_multipliers(std::polar(radius, ta), std::polar(radius, tb))(v);
            sum += value * std::polar(1.0, -(k * ta + l * tb));
        }
    }
    const double scale =
        std::exp(0.5 * (std::lgamma(k + 1.0) + std::lgamma(l + 1.0)) - (k + l) * std::log(radius));
    return sum * scale / static_cast<double>(phases * phases);
}

}  // namespace

TEST(CoherentKernel, MatchesLadderMultipliers) {
    auto rng = rng_for(2);
    for (int trial = 0; trial < 10; ++trial) {
        const Complex z = complex_in_disc(rng, 1.5), w = complex_in_disc(rng, 1.5);
        EXPECT_TRUE(approx_equal(coherent_kernel(z, w).element, kernel_by_multipliers(z, w), 1e-12));
    }
}

TEST(CoherentKernel, MultipliesAndConjugates) {
    auto rng = rng_for(4);
    for (int trial = 0; trial < 10; ++trial) {
        const Complex z = complex_in_disc(rng, 1.0), w = complex_in_disc(rng, 1.0);
        const Complex z2 = complex_in_disc(rng, 1.0), w2 = complex_in_disc(rng, 1.0);
        const GaussianElement lhs = product(coherent_kernel(z, w).element, coherent_kernel(z2, w2).element);
        EXPECT_TRUE(approx_equal(lhs, coherent_kernel(z, w2).element.scaled(std::exp(w * z2)), 1e-11));
        EXPECT_TRUE(approx_equal(involution(coherent_kernel(z, w).element),
                                 coherent_kernel(std::conj(w), std::conj(z)).element, 1e-12));
    }
    ComplexVector z2(2), w1(1);
    EXPECT_THROW(coherent_kernel(z2, w1), std::invalid_argument);
}

TEST(MatrixUnit, ClosedFormMatchesContourOracle) {
    auto rng = rng_for(8);
    for (int k = 0; k <= kDefaultUnitCutoff; ++k)
        for (int l = 0; l <= kDefaultUnitCutoff; ++l) {
            const PolyGaussian unit = matrix_unit(k, l);
            for (int trial = 0; trial < 2; ++trial) {
                const double s = uniform(rng, -3, 3), t = uniform(rng, -3, 3);
                const Complex expected = unit_by_contour(k, l, s, t);
                EXPECT_LT(std::abs(unit(s, t) - expected), 1e-11) << k << "," << l;
            }
        }
}

TEST(MatrixUnit, LaguerreFormMatchesClosedForm) {
    auto rng = rng_for(10);
    for (int k = 0; k <= kDefaultUnitCutoff; ++k)
        for (int l = 0; l <= kDefaultUnitCutoff; ++l) {
            const PolyGaussian unit = matrix_unit(k, l);
            for (int trial = 0; trial < 3; ++trial) {
                const double s = uniform(rng, -4, 4), t = uniform(rng, -4, 4);
                EXPECT_LT(std::abs(matrix_unit_value(k, l, s, t) - unit(s, t)), 1e-13) << k << "," << l;
            }
        }
}

TEST(MatrixUnit, LaguerreFormHoldsAtHigherIndices) {
    auto rng = rng_for(12);
    for (auto [k, l] : {std::pair{12, 12}, {16, 10}, {9, 15}}) {
        const double radius = std::sqrt(static_cast<double>(std::max(k, l)));
        for (int trial = 0; trial < 2; ++trial) {
            const double s = uniform(rng, -3, 3), t = uniform(rng, -3, 3);
            const Complex expected = unit_by_contour(k, l, s, t, 64, radius);
            EXPECT_LT(std::abs(matrix_unit_value(k, l, s, t) - expected), 1e-9) << k << "," << l;
        }
    }
}

TEST(MatrixUnit, DiagonalUnitsAreLaguerreFunctions) {
    // g_{k,k} = (2 pi)^{-1} L_k(r^2/2) e^{-r^2/4}.
    for (int k = 0; k <= 10; ++k)
        for (double r : {0.0, 0.7, 1.9, 3.2}) {
            const double expected =
                laguerre_sum(k, 0, 0.5 * r * r) * std::exp(-0.25 * r * r) / kTwoPi;
            EXPECT_NEAR(matrix_unit_value(k, k, r, 0.0).real(), expected, 1e-13) << k;
            EXPECT_NEAR(matrix_unit_value(k, k, 0.0, r).imag(), 0.0, 1e-15);
        }
}

TEST(MatrixUnit, InvolutionSwapsIndices) {
    for (int k = 0; k <= 4; ++k)
        for (int l = 0; l <= 4; ++l) {
            const PolyGaussian lhs = involution(matrix_unit(k, l));
            const PolyGaussian rhs = matrix_unit(l, k);
            for (double s : {-1.3, 0.4})
                for (double t : {-0.2, 2.1}) EXPECT_LT(std::abs(lhs(s, t) - rhs(s, t)), 1e-14);
        }
}

TEST(MatrixUnit, RejectsBadIndices) {
    EXPECT_THROW(matrix_unit(-1, 0), std::invalid_argument);
    EXPECT_THROW(matrix_unit(0, kDefaultUnitCutoff + 1), std::invalid_argument);
    EXPECT_NO_THROW(matrix_unit(10, 3, 10));
    EXPECT_THROW(matrix_unit_value(2, -1, 0.0, 0.0), std::invalid_argument);
    EXPECT_THROW(PolyGaussian({{{-1, 0}, 1.0}}), std::invalid_argument);
}

TEST(MatrixUnit, SampledUnitsHaveUnitTrace) {
    const PhaseGrid grid = PhaseGrid::standard();
    for (int k = 0; k <= 5; ++k)
        for (int l = 0; l <= 5; ++l)
            EXPECT_NEAR(std::abs(trace(sample_matrix_unit(k, l, grid)) - (k == l ? 1.0 : 0.0)), 0.0, 1e-12);
    EXPECT_THROW(sample_matrix_unit(0, 0, PhaseGrid(2, 6.0, 12)), std::invalid_argument);
}

TEST(MatrixUnitRelations, SmallReportPasses) {
    const UnitRelationReport report = verify_matrix_unit_relations(2, PhaseGrid::standard());
    EXPECT_EQ(report.relations.size(), 81u);
    EXPECT_TRUE(report.passed());
    EXPECT_LT(report.max_deviation(), 1e-8);
    EXPECT_LT(report.adjoint_deviation, 1e-8);
}

TEST(MatrixUnitRelations, RejectsGridThatCannotHoldTheUnits) {
    EXPECT_THROW(verify_matrix_unit_relations(8, PhaseGrid(1, 4.0, 32)), std::invalid_argument);
    EXPECT_THROW(verify_matrix_unit_relations(-1, PhaseGrid::standard()), std::invalid_argument);
}
