#pragma once

// Closed-form calculus for Gaussian elements
//
//     f(v) = c exp(-v^T Q v + l^T v),   Q complex symmetric, Re Q positive definite,
//
// under the twisted convolution, the involution, the Weyl multipliers and the shift
// automorphisms. Every operation returns a new element; products raise PrecisionLoss
// when the combined form Q_f + Q_h is too ill-conditioned to trust.

#include "ccrweyl/grid.hpp"
#include "ccrweyl/types.hpp"

namespace ccrweyl {

class GaussianElement {
  public:
    /// Throws std::invalid_argument on inconsistent sizes, a non-symmetric Q or a Q
    /// whose real part is not positive definite.
    GaussianElement(Complex c, ComplexMatrix q, ComplexVector l);

    int freedoms() const { return static_cast<int>(l_.size() / 2); }
    Complex coefficient() const { return c_; }
    const ComplexMatrix& quadratic() const { return q_; }
    const ComplexVector& linear() const { return l_; }

    Complex operator()(const RealVector& v) const;
    /// Analytic continuation to complex arguments.
    Complex operator()(const ComplexVector& v) const;

    /// c real, Q real and l purely imaginary, i.e. f* = f.
    bool is_hermitian(double tol = 1e-12) const;

    GaussianElement scaled(Complex factor) const;

  private:
    Complex c_;
    ComplexMatrix q_;
    ComplexVector l_;
};

/// The multiplier exp(i v - w) with complex displacement d = v + i w. Real d are the
/// Weyl unitaries; complex d arise as exponentials of creation/annihilation operators.
struct WeylShift {
    ComplexVector displacement;

    static WeylShift unitary(const RealVector& v);
    /// exp(sum_j z_j a_j).
    static WeylShift annihilation(const ComplexVector& z);
    /// exp(sum_j z_j a*_j).
    static WeylShift creation(const ComplexVector& z);
};

GaussianElement product(const GaussianElement& f, const GaussianElement& h);
GaussianElement involution(const GaussianElement& f);
/// Left: exp(d) f, right: f exp(d).
GaussianElement multiplier(Side side, const WeylShift& shift, const GaussianElement& f);
/// f(v) -> exp(i lambda(v)) f(v).
GaussianElement shift_automorphism(const RealVector& lambda, const GaussianElement& f);

/// (2 pi)^{-n} exp(-|v|^2/4), the vacuum projection.
GaussianElement vn_projection(int freedoms);
/// exp(-|v|^2/(4 gamma)), Re(1/gamma) > 0.
GaussianElement g_gamma(Complex gamma, int freedoms = 1);

/// Real powers of a * g_gamma with a > 0 and 0 < gamma <= 1. Throws
/// std::domain_error for any other input.
GaussianElement power(const GaussianElement& f, double r);

/// Componentwise comparison: c relative to max |c|, Q and l relative to max(1, norms).
bool approx_equal(const GaussianElement& f, const GaussianElement& h, double rtol = 1e-10);

/// Samples f on every node of the grid.
GridFunction evaluate(const GaussianElement& f, const PhaseGrid& grid);

}  // namespace ccrweyl
