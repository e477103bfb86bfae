#include <gtest/gtest.h>

#include "ccrweyl/diagnostics.hpp"
#include "ccrweyl/gaussian.hpp"
#include "ccrweyl/symplectic.hpp"
#include "support.hpp"

using namespace ccrweyl;
using ccrweyl::testing::complex_in_disc;
using ccrweyl::testing::gaussian_value;
using ccrweyl::testing::random_gaussian;
using ccrweyl::testing::rng_for;
using ccrweyl::testing::twisted_product_at;
using ccrweyl::testing::uniform;

namespace {

RealVector random_point(std::mt19937_64& rng, int dim, double r) {
    RealVector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = uniform(rng, -r, r);
    return v;
}

// Coefficient of g_gamma1 g_gamma2 = scale * g_gamma3 from multiplying the diagonal
// eigenvalues 2 pi (2 gamma/(1 + gamma)) rho^k level by level.
std::pair<double, double> diagonal_product(double g1, double g2) {
    const double r1 = (1 - g1) / (1 + g1), r2 = (1 - g2) / (1 + g2);
    const double r3 = r1 * r2, g3 = (1 - r3) / (1 + r3);
    auto lead = [](double g) { return kTwoPi * 2 * g / (1 + g); };
    return {lead(g1) * lead(g2) / lead(g3), g3};
}

}  // namespace

TEST(GaussianElement, Validation) {
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    EXPECT_THROW(GaussianElement(1.0, id, ComplexVector::Zero(3)), std::invalid_argument);
    EXPECT_THROW(GaussianElement(1.0, ComplexMatrix::Identity(4, 4), ComplexVector::Zero(2)), std::invalid_argument);
    ComplexMatrix asym = id;
    asym(0, 1) = 0.3;
    EXPECT_THROW(GaussianElement(1.0, asym, ComplexVector::Zero(2)), std::invalid_argument);
    EXPECT_THROW(GaussianElement(1.0, -id, ComplexVector::Zero(2)), std::invalid_argument);
    EXPECT_THROW(GaussianElement(1.0, kI * id, ComplexVector::Zero(2)), std::invalid_argument);
    EXPECT_THROW(g_gamma(Complex(-1.0, 0.0)), std::domain_error);
}

TEST(GaussianElement, EvaluatesItsFormula) {
    auto rng = rng_for(1);
    for (int n = 1; n <= 2; ++n) {
        const GaussianElement f = random_gaussian(rng, n);
        for (int trial = 0; trial < 5; ++trial) {
            const RealVector v = random_point(rng, 2 * n, 2.0);
            EXPECT_LT(std::abs(f(v) - gaussian_value(f, v)), 1e-13 * std::abs(gaussian_value(f, v)) + 1e-300);
            EXPECT_LT(std::abs(f(ComplexVector(v.cast<Complex>())) - f(v)), 1e-13 * std::abs(f(v)));
        }
    }
    EXPECT_TRUE(g_gamma(2.0).is_hermitian());
    EXPECT_FALSE(g_gamma(Complex(2.0, 1.0)).is_hermitian());
}

TEST(GaussianProduct, MatchesQuadratureOracle) {
    auto rng = rng_for(7);
    for (int trial = 0; trial < 4; ++trial) {
        const GaussianElement f = random_gaussian(rng, 1), h = random_gaussian(rng, 1);
        const GaussianElement fh = product(f, h);
        auto ff = [&](double x, double y) { return gaussian_value(f, RealVector{{x, y}}); };
        auto hh = [&](double x, double y) { return gaussian_value(h, RealVector{{x, y}}); };
        for (int point = 0; point < 3; ++point) {
            const RealVector v = random_point(rng, 2, 1.5);
            const Complex expected = twisted_product_at(ff, hh, v[0], v[1]);
            EXPECT_LT(std::abs(fh(v) - expected), 1e-9 * std::max(1.0, std::abs(expected)));
        }
    }
}

TEST(GaussianProduct, DiagonalElementsMultiplyLevelByLevel) {
    for (auto [g1, g2] : {std::pair{0.5, 0.5}, {0.3, 2.0}, {3.0, 5.0}, {1.0, 0.7}}) {
        const auto [scale, g3] = diagonal_product(g1, g2);
        EXPECT_TRUE(approx_equal(product(g_gamma(g1), g_gamma(g2)), g_gamma(g3).scaled(scale), 1e-12))
            << g1 << " " << g2;
    }
}

TEST(GaussianProduct, VacuumIsAMinimalProjection) {
    auto rng = rng_for(13);
    for (int n = 1; n <= 3; ++n) {
        const GaussianElement g = vn_projection(n);
        EXPECT_TRUE(approx_equal(product(g, g), g, 1e-13));
        EXPECT_TRUE(approx_equal(involution(g), g, 1e-15));
        for (int trial = 0; trial < 5; ++trial) {
            const RealVector v = random_point(rng, 2 * n, 2.0);
            // <0|U(v)|0> = exp(-|v|^2/4).
            const GaussianElement sandwich = product(g, multiplier(Side::Left, WeylShift::unitary(v), g));
            EXPECT_TRUE(approx_equal(sandwich, g.scaled(std::exp(-0.25 * v.squaredNorm())), 1e-12));
        }
    }
}

TEST(GaussianProduct, IsAssociative) {
    auto rng = rng_for(17);
    for (int n = 1; n <= 2; ++n)
        for (int trial = 0; trial < 10; ++trial) {
            const GaussianElement a = random_gaussian(rng, n), b = random_gaussian(rng, n), c = random_gaussian(rng, n);
            EXPECT_TRUE(approx_equal(product(product(a, b), c), product(a, product(b, c)), 1e-10));
        }
}

TEST(GaussianProduct, InvolutionIsAnAntiHomomorphism) {
    auto rng = rng_for(21);
    for (int n = 1; n <= 2; ++n)
        for (int trial = 0; trial < 10; ++trial) {
            const GaussianElement a = random_gaussian(rng, n), b = random_gaussian(rng, n);
            EXPECT_TRUE(approx_equal(involution(product(a, b)), product(involution(b), involution(a)), 1e-10));
            EXPECT_TRUE(approx_equal(involution(involution(a)), a, 1e-15));
            const RealVector v = random_point(rng, 2 * n, 2.0);
            const RealVector minus_v = -v;
            EXPECT_LT(std::abs(involution(a)(v) - std::conj(gaussian_value(a, minus_v))),
                      1e-13 * std::abs(a(minus_v)) + 1e-300);
        }
}

TEST(GaussianProduct, RaisesPrecisionLossWhenIllConditioned) {
    ComplexMatrix q = ComplexMatrix::Identity(2, 2);
    q(1, 1) = 1e-14;
    const GaussianElement thin(1.0, q, ComplexVector::Zero(2));
    EXPECT_THROW(product(thin, thin), PrecisionLoss);
    EXPECT_THROW(product(g_gamma(1.0), g_gamma(1.0, 2)), std::invalid_argument);
}

TEST(WeylShift, MultipliersSatisfyTheWeylRelation) {
    auto rng = rng_for(29);
    for (int n = 1; n <= 2; ++n) {
        const SymplecticSpace space(n);
        const GaussianElement f = random_gaussian(rng, n);
        for (int trial = 0; trial < 10; ++trial) {
            const RealVector v = random_point(rng, 2 * n, 2.0), w = random_point(rng, 2 * n, 2.0);
            const GaussianElement lhs =
                multiplier(Side::Left, WeylShift::unitary(v), multiplier(Side::Left, WeylShift::unitary(w), f));
            const GaussianElement rhs = multiplier(Side::Left, WeylShift::unitary(v + w), f)
                                            .scaled(std::polar(1.0, -0.5 * symplectic_form(v, w, space)));
            EXPECT_TRUE(approx_equal(lhs, rhs, 1e-12));
            // Left and right actions commute, and act as U on the left of a product.
            const GaussianElement h = random_gaussian(rng, n);
            EXPECT_TRUE(approx_equal(product(multiplier(Side::Left, WeylShift::unitary(v), f), h),
                                     multiplier(Side::Left, WeylShift::unitary(v), product(f, h)), 1e-10));
            EXPECT_TRUE(approx_equal(
                multiplier(Side::Right, WeylShift::unitary(w), multiplier(Side::Left, WeylShift::unitary(v), f)),
                multiplier(Side::Left, WeylShift::unitary(v), multiplier(Side::Right, WeylShift::unitary(w), f)),
                1e-12));
        }
    }
}

TEST(WeylShift, LadderOperatorsFixTheVacuum) {
    auto rng = rng_for(31);
    const GaussianElement g = vn_projection(1);
    for (int trial = 0; trial < 10; ++trial) {
        ComplexVector z(1);
        z[0] = complex_in_disc(rng, 1.5);
        // a g = 0 and g a* = 0.
        EXPECT_TRUE(approx_equal(multiplier(Side::Left, WeylShift::annihilation(z), g), g, 1e-12));
        EXPECT_TRUE(approx_equal(multiplier(Side::Right, WeylShift::creation(z), g), g, 1e-12));
        // (e^{z a*} g)* = g e^{conj(z) a}.
        EXPECT_TRUE(approx_equal(involution(multiplier(Side::Left, WeylShift::creation(z), g)),
                                 multiplier(Side::Right, WeylShift::annihilation(z.conjugate()), g), 1e-12));
    }
}

TEST(ShiftAutomorphism, IsAnAlgebraAutomorphism) {
    auto rng = rng_for(37);
    const GaussianElement a = random_gaussian(rng, 1), b = random_gaussian(rng, 1);
    const RealVector lambda = random_point(rng, 2, 1.0);
    EXPECT_TRUE(approx_equal(product(shift_automorphism(lambda, a), shift_automorphism(lambda, b)),
                             shift_automorphism(lambda, product(a, b)), 1e-10));
    EXPECT_THROW(shift_automorphism(RealVector::Zero(4), a), std::invalid_argument);
}

TEST(Power, AgreesWithRepeatedProducts) {
    for (double gamma : {0.2, 0.6, 1.0}) {
        const GaussianElement f = g_gamma(gamma).scaled(0.7);
        EXPECT_TRUE(approx_equal(power(f, 2.0), product(f, f), 1e-11));
        EXPECT_TRUE(approx_equal(power(f, 3.0), product(f, product(f, f)), 1e-11));
        const GaussianElement root = power(f, 0.5);
        EXPECT_TRUE(approx_equal(product(root, root), f, 1e-11));
        EXPECT_TRUE(approx_equal(power(f, 1.0), f, 1e-12));
    }
    EXPECT_TRUE(approx_equal(power(vn_projection(1), 2.5), vn_projection(1), 1e-12));
}

TEST(Power, RejectsOutsideTheDomain) {
    EXPECT_THROW(power(g_gamma(2.0), 2.0), std::domain_error);
    EXPECT_THROW(power(g_gamma(0.5).scaled(-1.0), 2.0), std::domain_error);
    EXPECT_THROW(power(g_gamma(0.5), 0.0), std::domain_error);
    auto rng = rng_for(3);
    EXPECT_THROW(power(random_gaussian(rng, 1), 2.0), std::domain_error);
}
