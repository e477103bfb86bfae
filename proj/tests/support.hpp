#pragma once

// Generators and independent reference computations shared by the tests. Nothing here
// calls the closed forms it is used to check.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "ccrweyl/gaussian.hpp"
#include "ccrweyl/symplectic.hpp"
#include "ccrweyl/types.hpp"

namespace ccrweyl::testing {

inline std::mt19937_64 rng_for(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Complex complex_in_disc(std::mt19937_64& rng, double radius) {
    while (true) {
        const Complex z(uniform(rng, -radius, radius), uniform(rng, -radius, radius));
        if (std::abs(z) <= radius) return z;
    }
}

/// Symplectic matrix built from block generators diag(A, A^{-T}), [[I, B], [0, I]],
/// [[I, 0], [C, I]] with B, C symmetric; `strength` bounds the entries.
inline RealMatrix random_symplectic(std::mt19937_64& rng, int n, double strength) {
    const int dim = 2 * n;
    RealMatrix s = RealMatrix::Identity(dim, dim);
    for (int round = 0; round < 3; ++round) {
        RealMatrix a = RealMatrix::Identity(n, n);
        RealMatrix b(n, n), c(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                a(i, j) += strength * uniform(rng, -1.0, 1.0);
                b(i, j) = strength * uniform(rng, -1.0, 1.0);
                c(i, j) = strength * uniform(rng, -1.0, 1.0);
            }
        b = 0.5 * (b + b.transpose()).eval();
        c = 0.5 * (c + c.transpose()).eval();
        RealMatrix m1 = RealMatrix::Zero(dim, dim);
        m1.topLeftCorner(n, n) = a;
        m1.bottomRightCorner(n, n) = a.inverse().transpose();
        RealMatrix m2 = RealMatrix::Identity(dim, dim);
        m2.topRightCorner(n, n) = b;
        RealMatrix m3 = RealMatrix::Identity(dim, dim);
        m3.bottomLeftCorner(n, n) = c;
        s = s * m1 * m2 * m3;
    }
    return s;
}

/// K = S^T diag(1/(4 gamma), 1/(4 gamma)) S for a random symplectic S.
inline RealMatrix form_with_gammas(std::mt19937_64& rng, const std::vector<double>& gammas, double strength) {
    const int n = static_cast<int>(gammas.size());
    RealMatrix d = RealMatrix::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) d(j, j) = d(n + j, n + j) = 1.0 / (4.0 * gammas[j]);
    const RealMatrix s = random_symplectic(rng, n, strength);
    RealMatrix k = s.transpose() * d * s;
    return 0.5 * (k + k.transpose());
}

inline RealMatrix random_positive_definite(std::mt19937_64& rng, int dim) {
    RealMatrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = uniform(rng, -1.0, 1.0);
    return a * a.transpose() + 0.2 * RealMatrix::Identity(dim, dim);
}

/// General Gaussian with Re Q >= 0.25 I, mildly complex Q, arbitrary small linear part.
inline GaussianElement random_gaussian(std::mt19937_64& rng, int n) {
    const int dim = 2 * n;
    RealMatrix a(dim, dim), b(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            a(i, j) = 0.3 * uniform(rng, -1.0, 1.0);
            b(i, j) = 0.1 * uniform(rng, -1.0, 1.0);
        }
    const RealMatrix re = 0.25 * RealMatrix::Identity(dim, dim) + a * a.transpose();
    const RealMatrix im = 0.5 * (b + b.transpose());
    ComplexVector l(dim);
    for (int i = 0; i < dim; ++i) l[i] = Complex(0.3 * uniform(rng, -1.0, 1.0), 0.5 * uniform(rng, -1.0, 1.0));
    return GaussianElement(Complex(uniform(rng, 0.5, 1.5), uniform(rng, -0.5, 0.5)),
                           re.cast<Complex>() + kI * im.cast<Complex>(), l);
}

/// Hermitian Gaussian c exp(-v^T K v + i lambda.v) with prescribed Williamson gammas.
inline GaussianElement hermitian_gaussian(std::mt19937_64& rng, const std::vector<double>& gammas,
                                          double squeeze, double shift) {
    const int n = static_cast<int>(gammas.size());
    const RealMatrix k = form_with_gammas(rng, gammas, squeeze);
    ComplexVector l(2 * n);
    for (int i = 0; i < 2 * n; ++i) l[i] = kI * uniform(rng, -shift, shift);
    return GaussianElement(uniform(rng, 0.2, 2.0), k.cast<Complex>(), l);
}

/// c exp(-v^T Q v + l.v) evaluated directly from the parameters.
inline Complex gaussian_value(const GaussianElement& f, const RealVector& v) {
    Complex e = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        e += f.linear()[i] * v[i];
        for (int j = 0; j < v.size(); ++j) e -= f.quadratic()(i, j) * v[i] * v[j];
    }
    return f.coefficient() * std::exp(e);
}

/// One-freedom twisted convolution at a single point by a fine trapezoid rule on
/// [-extent, extent]^2, with sigma(v, v') = x' y - x y'.
inline Complex twisted_product_at(const std::function<Complex(double, double)>& f,
                                  const std::function<Complex(double, double)>& h, double x, double y,
                                  double extent = 12.0, int points = 601) {
    const double step = 2.0 * extent / (points - 1);
    Complex sum = 0.0;
    for (int i = 0; i < points; ++i) {
        const double xp = -extent + i * step;
        for (int j = 0; j < points; ++j) {
            const double yp = -extent + j * step;
            sum += std::polar(1.0, 0.5 * (xp * y - x * yp)) * f(xp, yp) * h(x - xp, y - yp);
        }
    }
    return sum * step * step;
}

/// L_n^{(alpha)}(x) from the explicit finite sum.
inline double laguerre_sum(int n, int alpha, double x) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j) {
        const double binom = std::tgamma(n + alpha + 1.0) / (std::tgamma(n - j + 1.0) * std::tgamma(alpha + j + 1.0));
        s += (j % 2 == 0 ? 1.0 : -1.0) * binom * std::pow(x, j) / std::tgamma(j + 1.0);
    }
    return s;
}

/// Normalised Hermite function from the physicists' polynomial recurrence.
inline double hermite_function(int n, double x) {
    double h_prev = 1.0, h = 2.0 * x;
    if (n == 0) h = 1.0;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * h - 2.0 * k * h_prev;
        h_prev = h;
        h = next;
    }
    const double norm = std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0) * std::sqrt(kPi));
    return h * std::exp(-0.5 * x * x) / norm;
}

/// <m| U(x, y) |n> in the Schrodinger picture, (U psi)(xi) = e^{i y (xi + x/2)} psi(xi + x).
inline Complex schrodinger_matrix_element(int m, int n, double x, double y, double extent = 14.0, int points = 4001) {
    const double step = 2.0 * extent / (points - 1);
    Complex s = 0.0;
    for (int i = 0; i < points; ++i) {
        const double xi = -extent + i * step;
        s += hermite_function(m, xi) * std::polar(1.0, y * (xi + 0.5 * x)) * hermite_function(n, xi + x);
    }
    return s * step;
}

}  // namespace ccrweyl::testing
