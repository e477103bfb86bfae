#include "ccrweyl/gaussian.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "ccrweyl/diagnostics.hpp"
#include "ccrweyl/parallel.hpp"
#include "ccrweyl/symplectic.hpp"

namespace ccrweyl {

namespace {

constexpr double kConditionLimit = 1e12;
constexpr double kHalfSqrt2 = 0.70710678118654752440;

ComplexMatrix complex_j(int freedoms) { return symplectic_matrix(freedoms).cast<Complex>(); }

ComplexMatrix symmetrized(const ComplexMatrix& m) { return 0.5 * (m + m.transpose()); }

// sqrt(det M) for M = R + iS with R positive definite: with R = L L^T, M = L (I + iH) L^T
// where H = L^{-1} S L^{-T} is real symmetric, so sqrt(det M) = det L * prod sqrt(1 + i s_k),
// each factor on the principal branch. This is the branch continuous from the real case.
Complex sqrt_det(const ComplexMatrix& m) {
    const RealMatrix r = m.real();
    const RealMatrix s = m.imag();
    Eigen::LLT<RealMatrix> llt(r);
    if (llt.info() != Eigen::Success)
        throw std::domain_error("real part of the combined quadratic form is not positive definite");
    const RealMatrix lower = llt.matrixL();
    const RealMatrix half = lower.triangularView<Eigen::Lower>().solve(s);
    const RealMatrix h = lower.triangularView<Eigen::Lower>().solve(half.transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(0.5 * (h + h.transpose()), Eigen::EigenvaluesOnly);
    Complex out = 1.0;
    for (Eigen::Index k = 0; k < lower.rows(); ++k)
        out *= lower(k, k) * std::sqrt(Complex(1.0, eig.eigenvalues()[k]));
    return out;
}

double condition_number(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const auto& sv = svd.singularValues();
    const double smallest = sv[sv.size() - 1];
    return smallest > 0.0 ? sv[0] / smallest : std::numeric_limits<double>::infinity();
}

void require_freedoms(const GaussianElement& f, const GaussianElement& h) {
    if (f.freedoms() != h.freedoms())
        throw std::invalid_argument(fmt::format("Gaussian elements have {} and {} freedoms",
                                                f.freedoms(), h.freedoms()));
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

GaussianElement::GaussianElement(Complex c, ComplexMatrix q, ComplexVector l)
    : c_(c), q_(std::move(q)), l_(std::move(l)) {
    if (l_.size() == 0 || l_.size() % 2 != 0)
        throw std::invalid_argument("linear part must have even, nonzero dimension");
    if (q_.rows() != l_.size() || q_.cols() != l_.size())
        throw std::invalid_argument(
            fmt::format("quadratic part is {}x{}, expected {}x{}", q_.rows(), q_.cols(), l_.size(),
                        l_.size()));
    if (!std::isfinite(c_.real()) || !std::isfinite(c_.imag()) || !q_.allFinite() || !l_.allFinite())
        throw std::invalid_argument("Gaussian parameters must be finite");
    const double scale = std::max(1.0, max_abs(q_));
    if (max_abs(q_ - q_.transpose()) > 1e-12 * scale)
        throw std::invalid_argument("quadratic part must be symmetric");
    q_ = symmetrized(q_);
    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(q_.real(), Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("real part of the quadratic part must be positive definite");
}

Complex GaussianElement::operator()(const RealVector& v) const {
    return (*this)(ComplexVector(v.cast<Complex>()));
}

Complex GaussianElement::operator()(const ComplexVector& v) const {
    if (v.size() != l_.size()) throw std::invalid_argument("evaluation point has wrong dimension");
    const Complex exponent = -(v.transpose() * q_ * v)(0, 0) + (l_.transpose() * v)(0, 0);
    return c_ * std::exp(exponent);
}

bool GaussianElement::is_hermitian(double tol) const {
    const double cs = std::max(1e-300, std::abs(c_));
    return std::abs(c_.imag()) <= tol * cs && max_abs(q_.imag()) <= tol * std::max(1.0, max_abs(q_)) &&
           (l_.size() == 0 || l_.real().cwiseAbs().maxCoeff() <= tol * std::max(1.0, l_.cwiseAbs().maxCoeff()));
}

GaussianElement GaussianElement::scaled(Complex factor) const {
    return GaussianElement(c_ * factor, q_, l_);
}

WeylShift WeylShift::unitary(const RealVector& v) { return WeylShift{v.cast<Complex>()}; }

WeylShift WeylShift::annihilation(const ComplexVector& z) {
    const auto n = z.size();
    ComplexVector d(2 * n);
    d.head(n) = kHalfSqrt2 * z;
    d.tail(n) = -kI * kHalfSqrt2 * z;
    return WeylShift{d};
}

WeylShift WeylShift::creation(const ComplexVector& z) {
    const auto n = z.size();
    ComplexVector d(2 * n);
    d.head(n) = -kHalfSqrt2 * z;
    d.tail(n) = -kI * kHalfSqrt2 * z;
    return WeylShift{d};
}

GaussianElement product(const GaussianElement& f, const GaussianElement& h) {
    require_freedoms(f, h);
    const int n = f.freedoms();
    const ComplexMatrix& a = f.quadratic();
    const ComplexMatrix& b = h.quadratic();
    const ComplexMatrix m = a + b;
    if (condition_number(m) > kConditionLimit)
        throw PrecisionLoss("combined quadratic form of the product is ill-conditioned");

    const ComplexMatrix p = 2.0 * b - 0.5 * kI * complex_j(n);
    const Eigen::PartialPivLU<ComplexMatrix> lu(m);
    const ComplexVector diff = f.linear() - h.linear();
    const ComplexVector m_diff = lu.solve(diff);
    const ComplexMatrix m_p = lu.solve(p);

    const Complex exponent = 0.25 * (diff.transpose() * m_diff)(0, 0);
    const Complex c = f.coefficient() * h.coefficient() * std::pow(kPi, n) / sqrt_det(m) *
                      std::exp(exponent);
    const ComplexMatrix q = symmetrized(b - 0.25 * p.transpose() * m_p);
    const ComplexVector l = h.linear() + 0.5 * p.transpose() * m_diff;
    return GaussianElement(c, q, l);
}

GaussianElement involution(const GaussianElement& f) {
    return GaussianElement(std::conj(f.coefficient()), f.quadratic().conjugate(), -f.linear().conjugate());
}

GaussianElement multiplier(Side side, const WeylShift& shift, const GaussianElement& f) {
    const ComplexVector& d = shift.displacement;
    if (d.size() != f.linear().size())
        throw std::invalid_argument("shift dimension does not match the Gaussian element");
    const ComplexMatrix& q = f.quadratic();
    const ComplexVector jd = complex_j(f.freedoms()) * d;
    const Complex twist = side == Side::Left ? 0.5 * kI : -0.5 * kI;
    const ComplexVector l = f.linear() + 2.0 * q * d + twist * jd;
    const Complex c = f.coefficient() *
                      std::exp(-(d.transpose() * q * d)(0, 0) - (f.linear().transpose() * d)(0, 0));
    return GaussianElement(c, q, l);
}

GaussianElement shift_automorphism(const RealVector& lambda, const GaussianElement& f) {
    if (lambda.size() != f.linear().size())
        throw std::invalid_argument("functional dimension does not match the Gaussian element");
    return GaussianElement(f.coefficient(), f.quadratic(), f.linear() + kI * lambda.cast<Complex>());
}

GaussianElement vn_projection(int freedoms) {
    return g_gamma(1.0, freedoms).scaled(std::pow(kTwoPi, -freedoms));
}

GaussianElement g_gamma(Complex gamma, int freedoms) {
    if (freedoms < 1) throw std::invalid_argument("at least one freedom is required");
    if (gamma == 0.0 || !((1.0 / gamma).real() > 0.0))
        throw std::domain_error("g_gamma requires Re(1/gamma) > 0");
    const int dim = 2 * freedoms;
    return GaussianElement(1.0, ComplexMatrix::Identity(dim, dim) / (4.0 * gamma),
                           ComplexVector::Zero(dim));
}

GaussianElement power(const GaussianElement& f, double r) {
    const int n = f.freedoms();
    const int dim = 2 * n;
    const ComplexMatrix& q = f.quadratic();
    const Complex q0 = q(0, 0);
    const double scale = std::max(1.0, std::abs(q0));
    if (max_abs(q - q0 * ComplexMatrix::Identity(dim, dim)) > 1e-12 * scale || std::abs(q0.imag()) > 1e-12 * scale ||
        f.linear().cwiseAbs().maxCoeff() > 1e-12)
        throw std::domain_error("power is defined for a * g_gamma only");
    const Complex a = f.coefficient();
    if (std::abs(a.imag()) > 1e-12 * std::abs(a) || !(a.real() > 0.0))
        throw std::domain_error("power requires a positive multiple of g_gamma");
    if (!(r > 0.0) || !std::isfinite(r)) throw std::domain_error("power exponent must be positive");
    const double gamma = 1.0 / (4.0 * q0.real());
    if (gamma > 1.0 + 1e-12) throw std::domain_error("power requires gamma <= 1");

    const double ar = std::pow(a.real(), r);
    if (gamma >= 1.0 - 1e-12) return g_gamma(1.0, n).scaled(ar * std::pow(kTwoPi, n * (r - 1.0)));
    const double theta = std::atanh(gamma);
    const double per_freedom = std::pow(4.0 * kPi, r - 1.0) * std::pow(std::sinh(theta), r) / std::sinh(r * theta);
    return g_gamma(std::tanh(r * theta), n).scaled(ar * std::pow(per_freedom, n));
}

bool approx_equal(const GaussianElement& f, const GaussianElement& h, double rtol) {
    if (f.freedoms() != h.freedoms()) return false;
    const double cs = std::max(std::abs(f.coefficient()), std::abs(h.coefficient()));
    if (std::abs(f.coefficient() - h.coefficient()) > rtol * cs) return false;
    const double qs = std::max({1.0, max_abs(f.quadratic()), max_abs(h.quadratic())});
    if (max_abs(f.quadratic() - h.quadratic()) > rtol * qs) return false;
    const double ls = std::max({1.0, f.linear().cwiseAbs().maxCoeff(), h.linear().cwiseAbs().maxCoeff()});
    return (f.linear() - h.linear()).cwiseAbs().maxCoeff() <= rtol * ls;
}

GridFunction evaluate(const GaussianElement& f, const PhaseGrid& grid) {
    if (f.freedoms() != grid.freedoms())
        throw std::invalid_argument("Gaussian element and grid have different freedom counts");
    const int axes = grid.axes();
    const int samples = grid.samples();
    const ComplexMatrix& q = f.quadratic();
    const ComplexVector& l = f.linear();
    std::vector<Complex> out(grid.size());

    // Separate the slowest axis: exponent(v) = e0(x0) + cross(x0, rest) + erest(rest).
    const std::size_t block = grid.size() / samples;
    std::vector<double> coords(samples);
    for (int i = 0; i < samples; ++i) coords[i] = grid.coordinate(i);
    parallel_for(0, static_cast<std::size_t>(samples), [&](std::size_t i0) {
        const double x0 = coords[i0];
        std::vector<int> idx(axes, 0);
        for (std::size_t r = 0; r < block; ++r) {
            Complex e = -q(0, 0) * x0 * x0 + l[0] * x0;
            for (int a = 1; a < axes; ++a) {
                const double xa = coords[idx[a]];
                e += -2.0 * q(0, a) * x0 * xa + l[a] * xa;
                e += -q(a, a) * xa * xa;
                for (int b = a + 1; b < axes; ++b) e += -2.0 * q(a, b) * xa * coords[idx[b]];
            }
            out[i0 * block + r] = f.coefficient() * std::exp(e);
            for (int a = axes - 1; a >= 1; --a) {
                if (++idx[a] < samples) break;
                idx[a] = 0;
            }
        }
    });
    return GridFunction(grid, std::move(out));
}

}  // namespace ccrweyl
