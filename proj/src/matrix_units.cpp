#include "ccrweyl/matrix_units.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "ccrweyl/diagnostics.hpp"
#include "laguerre.hpp"

namespace ccrweyl {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Complex unit_coordinate(double s, double t) { return Complex(s, t) * kInvSqrt2; }

double vacuum(double s, double t) { return std::exp(-0.25 * (s * s + t * t)) / kTwoPi; }

// sqrt(small! / large!)
double factorial_ratio_sqrt(int small, int large) {
    double r = 1.0;
    for (int i = small + 1; i <= large; ++i) r /= std::sqrt(static_cast<double>(i));
    return r;
}

}  // namespace

CoherentKernel coherent_kernel(const ComplexVector& z, const ComplexVector& w) {
    if (z.size() == 0 || z.size() != w.size())
        throw std::invalid_argument("coherent kernel labels must have equal, nonzero length");
    const auto n = z.size();
    ComplexVector l(2 * n);
    l.head(n) = (w - z) * kInvSqrt2;
    l.tail(n) = -kI * (z + w) * kInvSqrt2;
    const Complex c = std::pow(kTwoPi, -static_cast<double>(n)) * std::exp((z.transpose() * w)(0, 0));
    GaussianElement element(c, ComplexMatrix::Identity(2 * n, 2 * n) * 0.25, l);
    return CoherentKernel{z, w, std::move(element)};
}

CoherentKernel coherent_kernel(Complex z, Complex w) {
    return coherent_kernel(ComplexVector::Constant(1, z), ComplexVector::Constant(1, w));
}

PolyGaussian::PolyGaussian(Terms terms) : terms_(std::move(terms)) {
    for (const auto& [powers, coef] : terms_)
        if (powers.first < 0 || powers.second < 0)
            throw std::invalid_argument("polynomial powers must be non-negative");
}

Complex PolyGaussian::operator()(double s, double t) const {
    const Complex u = unit_coordinate(s, t);
    Complex poly = 0.0;
    for (const auto& [powers, coef] : terms_)
        poly += coef * std::pow(u, powers.first) * std::pow(std::conj(u), powers.second);
    return poly * vacuum(s, t);
}

PolyGaussian PolyGaussian::operator+(const PolyGaussian& other) const {
    Terms out = terms_;
    for (const auto& [powers, coef] : other.terms_) out[powers] += coef;
    return PolyGaussian(std::move(out));
}

PolyGaussian PolyGaussian::scaled(Complex factor) const {
    Terms out = terms_;
    for (auto& [powers, coef] : out) coef *= factor;
    return PolyGaussian(std::move(out));
}

PolyGaussian involution(const PolyGaussian& p) {
    PolyGaussian::Terms out;
    for (const auto& [powers, coef] : p.terms()) {
        const double sign = (powers.first + powers.second) % 2 == 0 ? 1.0 : -1.0;
        out[{powers.second, powers.first}] += std::conj(coef) * sign;
    }
    return PolyGaussian(std::move(out));
}

PolyGaussian matrix_unit(int k, int l, int cutoff) {
    if (k < 0 || l < 0) throw std::invalid_argument("matrix unit indices must be non-negative");
    if (k > cutoff || l > cutoff)
        throw std::invalid_argument(
            fmt::format("matrix unit ({}, {}) exceeds the cutoff {}", k, l, cutoff));
    const double root = std::sqrt(std::tgamma(k + 1.0) * std::tgamma(l + 1.0));
    PolyGaussian::Terms terms;
    for (int j = 0; j <= std::min(k, l); ++j) {
        const double sign = (k - j) % 2 == 0 ? 1.0 : -1.0;
        terms[{k - j, l - j}] =
            sign * root / (std::tgamma(j + 1.0) * std::tgamma(k - j + 1.0) * std::tgamma(l - j + 1.0));
    }
    return PolyGaussian(std::move(terms));
}

Complex matrix_unit_value(int k, int l, double s, double t) {
    if (k < 0 || l < 0) throw std::invalid_argument("matrix unit indices must be non-negative");
    const Complex u = unit_coordinate(s, t);
    const double x = std::norm(u);
    const double g = vacuum(s, t);
    if (k >= l) {
        const int d = k - l;
        return factorial_ratio_sqrt(l, k) * std::pow(-u, d) * detail::laguerre(l, d, x) * g;
    }
    const int d = l - k;
    return factorial_ratio_sqrt(k, l) * std::pow(std::conj(u), d) * detail::laguerre(k, d, x) * g;
}

GridFunction sample(const PolyGaussian& p, const PhaseGrid& grid) {
    if (grid.freedoms() != 1) throw std::invalid_argument("polynomial Gaussians live on one freedom");
    const int n = grid.samples();
    std::vector<Complex> values(grid.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            values[static_cast<std::size_t>(i) * n + j] = p(grid.coordinate(i), grid.coordinate(j));
    return GridFunction(grid, std::move(values));
}

GridFunction sample_matrix_unit(int k, int l, const PhaseGrid& grid) {
    if (grid.freedoms() != 1) throw std::invalid_argument("matrix units live on one freedom");
    const int n = grid.samples();
    std::vector<Complex> values(grid.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            values[static_cast<std::size_t>(i) * n + j] =
                matrix_unit_value(k, l, grid.coordinate(i), grid.coordinate(j));
    return GridFunction(grid, std::move(values));
}

double UnitRelationReport::max_deviation() const {
    double m = adjoint_deviation;
    for (const auto& r : relations) m = std::max(m, r.deviation);
    return m;
}

bool UnitRelationReport::passed() const {
    return adjoint_deviation <= tolerance &&
           std::all_of(relations.begin(), relations.end(), [](const UnitRelation& r) { return r.passed; });
}

UnitRelationReport verify_matrix_unit_relations(int max_index, const PhaseGrid& grid, double tolerance) {
    if (max_index < 0) throw std::invalid_argument("max_index must be non-negative");
    if (grid.freedoms() != 1) throw std::invalid_argument("matrix units live on one freedom");
    const int count = max_index + 1;
    std::vector<GridFunction> units;
    units.reserve(static_cast<std::size_t>(count) * count);
    for (int k = 0; k < count; ++k)
        for (int l = 0; l < count; ++l) units.push_back(sample_matrix_unit(k, l, grid));
    auto unit = [&](int k, int l) -> const GridFunction& { return units[static_cast<std::size_t>(k) * count + l]; };

    double worst_tail = 0.0;
    for (const auto& u : units) worst_tail = std::max(worst_tail, u.boundary_ratio());
    if (worst_tail > tolerance)
        throw std::invalid_argument(fmt::format(
            "grid too small for units up to index {}: boundary mass ratio {:.3g}", max_index, worst_tail));

    UnitRelationReport report{max_index, tolerance, {}, 0.0};
    for (int k = 0; k < count; ++k)
        for (int l = 0; l < count; ++l)
            report.adjoint_deviation =
                std::max(report.adjoint_deviation, relative_l1_distance(involution(unit(k, l)), unit(l, k)));

    std::vector<double> norms(units.size());
    for (std::size_t i = 0; i < units.size(); ++i) norms[i] = l1_norm(units[i]);

    // Tail warnings for every product would repeat the check above.
    ScopedWarningHandler quiet([](const std::string&) {});
    for (int j = 0; j < count; ++j)
        for (int k = 0; k < count; ++k)
            for (int l = 0; l < count; ++l)
                for (int m = 0; m < count; ++m) {
                    const GridFunction prod = twisted_convolve(unit(j, k), unit(l, m));
                    double deviation = 0.0;
                    if (k == l) {
                        deviation = relative_l1_distance(prod, unit(j, m));
                    } else {
                        deviation = l1_norm(prod) / norms[static_cast<std::size_t>(j) * count + m];
                    }
                    report.relations.push_back({j, k, l, m, deviation, deviation <= tolerance});
                }
    return report;
}

}  // namespace ccrweyl
