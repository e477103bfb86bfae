#include "ccrweyl/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "ccrweyl/matrix_units.hpp"
#include "ccrweyl/symplectic.hpp"

namespace ccrweyl {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kPositivitySlack = 1e-12;

void require_hermitian(const GaussianElement& f) {
    if (!f.is_hermitian(1e-10))
        throw std::domain_error("spectral data requires a Hermitian Gaussian element");
}

}  // namespace

Complex cayley_ratio(Complex gamma) { return (1.0 - gamma) / (1.0 + gamma); }

int spectral_cutoff(double ratio_abs, double tol) {
    if (!(ratio_abs >= 0.0) || ratio_abs >= 1.0)
        throw std::domain_error(fmt::format("spectral ratio {} does not decay", ratio_abs));
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (ratio_abs == 0.0) return 0;
    const double k = std::ceil(std::log(tol * (1.0 - ratio_abs)) / std::log(ratio_abs)) - 1.0;
    return std::max(0, static_cast<int>(k));
}

SpectralData spectrum_single(Complex gamma, int cutoff) {
    if (!(gamma.real() > 0.0)) throw std::domain_error("spectrum requires Re gamma > 0");
    if (cutoff < 0) throw std::invalid_argument("cutoff must be non-negative");
    const Complex rho = cayley_ratio(gamma);
    const Complex prefactor = kTwoPi * 2.0 * gamma / (1.0 + gamma);
    SpectralData out{{}, prefactor, {rho}, cutoff};
    Complex lambda = prefactor;
    for (int k = 0; k <= cutoff; ++k) {
        out.entries.push_back({{k}, lambda});
        lambda *= rho;
    }
    return out;
}

SpectralData spectrum_gaussian(const GaussianElement& f, int cutoff) {
    require_hermitian(f);
    if (cutoff < 0) throw std::invalid_argument("cutoff must be non-negative");
    const int n = f.freedoms();
    const auto gammas = symplectic_gammas(QuadraticPart(f.quadratic().real()));
    SpectralData out{{}, f.coefficient().real() * std::pow(kTwoPi, n), {}, cutoff};
    for (double g : gammas) {
        out.prefactor *= 2.0 * g / (1.0 + g);
        out.ratios.emplace_back(cayley_ratio(g));
    }
    std::vector<int> levels(n, 0);
    while (true) {
        Complex lambda = out.prefactor;
        for (int j = 0; j < n; ++j) lambda *= std::pow(out.ratios[j], levels[j]);
        out.entries.push_back({levels, lambda});
        int j = n - 1;
        while (j >= 0 && levels[j] == cutoff) levels[j--] = 0;
        if (j < 0) break;
        ++levels[j];
    }
    return out;
}

bool is_positive(const GaussianElement& f) {
    if (!f.is_hermitian(1e-10) || !(f.coefficient().real() > 0.0)) return false;
    const auto gammas = symplectic_gammas(QuadraticPart(f.quadratic().real()));
    for (double g : gammas)
        if (g > 1.0 + kPositivitySlack) return false;
    return true;
}

Complex trace_gaussian(const GaussianElement& f) { return std::pow(kTwoPi, f.freedoms()) * f.coefficient(); }

GridFunction partial_sum(const SpectralData& single, int cutoff, const PhaseGrid& grid) {
    if (single.ratios.size() != 1) throw std::invalid_argument("partial sums need one-freedom spectral data");
    if (grid.freedoms() != 1) throw std::invalid_argument("partial sums live on one freedom");
    if (cutoff < 0) throw std::invalid_argument("cutoff must be non-negative");
    std::vector<Complex> values(grid.size());
    const int n = grid.samples();
    for (int k = 0; k <= cutoff; ++k) {
        const Complex lambda = single.prefactor * std::pow(single.ratios[0], k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                values[static_cast<std::size_t>(i) * n + j] +=
                    lambda * matrix_unit_value(k, k, grid.coordinate(i), grid.coordinate(j));
    }
    return GridFunction(grid, std::move(values));
}

IntegralRepresentationResult integral_representation_check(Complex gamma, const PhaseGrid& grid,
                                                           double radius, int samples, double tol) {
    if (grid.freedoms() != 1) throw std::invalid_argument("the integral representation is checked on one freedom");
    if (gamma == 1.0) throw std::domain_error("the integral representation needs gamma != 1");
    const Complex mu = (gamma + 1.0) / (gamma - 1.0);
    if (!(mu.real() > 1.0)) throw std::domain_error("the integral representation needs Re mu > 1");
    if (!(radius > 0.0) || samples < 2) throw std::invalid_argument("invalid integration lattice");

    const GridFunction target = evaluate(g_gamma(gamma), grid);
    const double target_norm = l1_norm(target);
    const Complex scale = 2.0 * gamma / (gamma - 1.0);
    const double a = mu.real() - 1.0;
    const double tail = std::abs(scale) * 2.0 * kTwoPi * std::exp(-0.5 * a * radius * radius) / a / target_norm;
    if (tail > tol)
        throw std::domain_error(fmt::format(
            "integration radius {} leaves relative tail {:.3g} above tolerance {:.3g}", radius, tail, tol));

    // Each integrand is a coherent kernel c exp(-|v|^2/4 + l_s s + l_t t), which factors
    // over the two grid axes.
    const int n = grid.samples();
    const double cell = 2.0 * radius / samples;
    const GaussianElement vacuum = vn_projection(1);
    std::vector<Complex> weights;
    std::vector<Complex> ls;
    std::vector<Complex> lt;
    for (int i = 0; i < samples; ++i)
        for (int j = 0; j < samples; ++j) {
            const double x = -radius + (i + 0.5) * cell;
            const double y = -radius + (j + 0.5) * cell;
            if (x * x + y * y > radius * radius) continue;
            const Complex z = Complex(x, y) * kInvSqrt2;
            const GaussianElement kernel = multiplier(
                Side::Left, WeylShift::creation(ComplexVector::Constant(1, -std::conj(z))),
                multiplier(Side::Right, WeylShift::annihilation(ComplexVector::Constant(1, z)), vacuum));
            weights.push_back(scale * std::exp(-mu * std::norm(z)) * kernel.coefficient() * cell * cell);
            ls.push_back(kernel.linear()[0]);
            lt.push_back(kernel.linear()[1]);
        }

    const auto count = static_cast<Eigen::Index>(weights.size());
    ComplexMatrix left(n, count);
    ComplexMatrix right(count, n);
    for (int i = 0; i < n; ++i) {
        const double s = grid.coordinate(i);
        for (Eigen::Index q = 0; q < count; ++q) {
            left(i, q) = weights[q] * std::exp(-0.25 * s * s + ls[q] * s);
            right(q, i) = std::exp(-0.25 * s * s + lt[q] * s);
        }
    }
    const ComplexMatrix integral = left * right;
    std::vector<Complex> values(grid.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) values[static_cast<std::size_t>(i) * n + j] = integral(i, j);
    const GridFunction approx(grid, std::move(values));
    return {relative_l1_distance(approx, target), tail};
}

FreeStateMatrix free_state_matrix(double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("free state matrix requires gamma > 0");
    ComplexMatrix s(2, 2);
    s << 0.5 / gamma, -0.5 * kI, 0.5 * kI, 0.5 / gamma;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(s, Eigen::EigenvaluesOnly);
    const double smallest = eig.eigenvalues().minCoeff();
    return {s, smallest, smallest >= -kPositivitySlack};
}

}  // namespace ccrweyl
