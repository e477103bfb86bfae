#pragma once

// Spectra, traces and positivity of Gaussian elements.
//
// g_gamma = exp(-|v|^2/(4 gamma)) on one freedom acts diagonally on the matrix units:
//
//     g_gamma = sum_k lambda_k g_{k,k},  lambda_k = 2 pi (2 gamma/(1 + gamma)) rho^k,
//     rho = (1 - gamma)/(1 + gamma).
//
// A Hermitian Gaussian c exp(-kappa(v) + i lambda(v)) is symplectically equivalent to a
// tensor product of such factors, one per Williamson gamma of kappa.

#include <vector>

#include "ccrweyl/gaussian.hpp"
#include "ccrweyl/grid.hpp"

namespace ccrweyl {

struct SpectralEntry {
    std::vector<int> levels;
    Complex eigenvalue;
};

struct SpectralData {
    std::vector<SpectralEntry> entries;
    /// c (2 pi)^n prod_j 2 gamma_j/(1 + gamma_j).
    Complex prefactor;
    /// rho_j per freedom.
    std::vector<Complex> ratios;
    /// Largest level per freedom that was enumerated.
    int cutoff;
};

/// (1 - gamma)/(1 + gamma).
Complex cayley_ratio(Complex gamma);

/// Smallest K with |rho|^{K+1}/(1 - |rho|) <= tol relative to the leading eigenvalue;
/// 0 when rho = 0. Throws std::domain_error for |rho| >= 1.
int spectral_cutoff(double ratio_abs, double tol = 1e-10);

/// lambda_0..lambda_cutoff of g_gamma. Requires Re gamma > 0.
SpectralData spectrum_single(Complex gamma, int cutoff);

/// Spectrum of a Hermitian Gaussian element (c real, Q real, l imaginary) on all
/// multi-indices with levels <= cutoff. Throws std::domain_error otherwise.
SpectralData spectrum_gaussian(const GaussianElement& f, int cutoff);

/// Positive-semidefinite test: c > 0 and all gamma_j <= 1. False for non-Hermitian input.
bool is_positive(const GaussianElement& f);

/// (2 pi)^n c.
Complex trace_gaussian(const GaussianElement& f);

/// sum_{k <= cutoff} lambda_k g_{k,k} sampled on a one-freedom grid.
GridFunction partial_sum(const SpectralData& single, int cutoff, const PhaseGrid& grid);

struct IntegralRepresentationResult {
    /// ||integral - g_gamma||_1 / ||g_gamma||_1 on the grid.
    double residual;
    /// Estimated relative L1 mass of the integrand outside the disc.
    double tail_estimate;
};

/// Checks g_gamma = (2 gamma/(gamma - 1)) int exp(-mu |z|^2) e^{-conj(z) a*} g e^{z a} d^2z,
/// mu = (gamma + 1)/(gamma - 1), by a samples x samples midpoint rule over the disc of the
/// given radius in the (x, y) plane. Requires Re mu > 1; throws std::domain_error when the
/// tail estimate exceeds tol.
IntegralRepresentationResult integral_representation_check(Complex gamma, const PhaseGrid& grid,
                                                           double radius = 8.0, int samples = 64,
                                                           double tol = 1e-3);

struct FreeStateMatrix {
    ComplexMatrix s;
    double smallest_eigenvalue;
    bool positive_semidefinite;
};

/// S = (1/2) [[1/gamma, -i], [i, 1/gamma]] with eigenvalues (1/gamma +- 1)/2.
FreeStateMatrix free_state_matrix(double gamma);

}  // namespace ccrweyl
