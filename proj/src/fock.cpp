#include "ccrweyl/fock.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "ccrweyl/diagnostics.hpp"
#include "ccrweyl/parallel.hpp"
#include "ccrweyl/spectral.hpp"
#include "laguerre.hpp"

namespace ccrweyl {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kTruncationWarning = 1e-8;
// Nodes whose weight is below this fraction of the largest weight are skipped.
constexpr double kNegligibleWeight = 1e-18;

// ratio[n * levels + k] = sqrt(n! / (n + k)!)
std::vector<double> factorial_ratios(int levels) {
    std::vector<double> out(static_cast<std::size_t>(levels) * levels, 0.0);
    for (int n = 0; n < levels; ++n) {
        double r = 1.0;
        for (int k = 0; n + k < levels; ++k) {
            if (k > 0) r /= std::sqrt(static_cast<double>(n + k));
            out[static_cast<std::size_t>(n) * levels + k] = r;
        }
    }
    return out;
}

// Column-major levels x levels block of U(x, y).
void displacement_block(double x, double y, int levels, const std::vector<double>& ratios,
                        std::vector<double>& scratch, std::vector<Complex>& powers,
                        std::vector<Complex>& conj_powers, Complex* out) {
    const Complex alpha = -Complex(x, -y) * kInvSqrt2;
    const double r2 = std::norm(alpha);
    const double damp = std::exp(-0.5 * r2);
    powers[0] = conj_powers[0] = 1.0;
    for (int k = 1; k < levels; ++k) {
        powers[k] = powers[k - 1] * alpha;
        conj_powers[k] = conj_powers[k - 1] * -std::conj(alpha);
    }
    for (int k = 0; k < levels; ++k) {
        detail::laguerre_sequence(levels - k, k, r2, scratch.data());
        for (int n = 0; n + k < levels; ++n) {
            const double radial = damp * ratios[static_cast<std::size_t>(n) * levels + k] * scratch[n];
            const int m = n + k;
            out[static_cast<std::size_t>(n) * levels + m] = radial * powers[k];
            if (k > 0) out[static_cast<std::size_t>(m) * levels + n] = radial * conj_powers[k];
        }
    }
}

class DisplacementTables {
  public:
    explicit DisplacementTables(int levels)
        : levels_(levels), ratios_(factorial_ratios(levels)), scratch_(levels), powers_(levels), conj_(levels) {}

    void fill(double x, double y, Complex* out) {
        displacement_block(x, y, levels_, ratios_, scratch_, powers_, conj_, out);
    }

  private:
    int levels_;
    std::vector<double> ratios_;
    std::vector<double> scratch_;
    std::vector<Complex> powers_;
    std::vector<Complex> conj_;
};

double edge_norm(const ComplexMatrix& m, int modes, int levels) {
    const double total = m.norm();
    if (total == 0.0) return 0.0;
    double edge = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            bool outer = false;
            Eigen::Index rr = r, cc = c;
            for (int mode = 0; mode < modes; ++mode) {
                if (rr % levels == levels - 1 || cc % levels == levels - 1) outer = true;
                rr /= levels;
                cc /= levels;
            }
            if (outer) edge += std::norm(m(r, c));
        }
    return std::sqrt(edge) / total;
}

OperatorMatrix finish(ComplexMatrix entries, int modes, int levels) {
    OperatorMatrix out;
    out.edge_norm = edge_norm(entries, modes, levels);
    out.entries = std::move(entries);
    out.modes = modes;
    out.levels_per_mode = levels;
    return out;
}

// weights[node] already includes the cell volume.
ComplexMatrix represent_one(const PhaseGrid& grid, const std::vector<Complex>& weights, int levels) {
    const int n = grid.samples();
    double peak = 0.0;
    for (const auto& w : weights) peak = std::max(peak, std::abs(w));
    const double cut = kNegligibleWeight * peak;
    const std::size_t block = static_cast<std::size_t>(levels) * levels;

    const std::size_t workers = std::min<std::size_t>(worker_count(), static_cast<std::size_t>(n));
    std::vector<std::vector<Complex>> partial(workers, std::vector<Complex>(block, 0.0));
    parallel_for(0, workers, [&](std::size_t t) {
        DisplacementTables tables(levels);
        std::vector<Complex> u(block);
        auto& acc = partial[t];
        for (int i = static_cast<int>(t); i < n; i += static_cast<int>(workers))
            for (int j = 0; j < n; ++j) {
                const Complex w = weights[static_cast<std::size_t>(i) * n + j];
                if (std::abs(w) <= cut) continue;
                tables.fill(grid.coordinate(i), grid.coordinate(j), u.data());
                for (std::size_t e = 0; e < block; ++e) acc[e] += w * u[e];
            }
    });
    ComplexMatrix out = ComplexMatrix::Zero(levels, levels);
    for (const auto& acc : partial) out += Eigen::Map<const ComplexMatrix>(acc.data(), levels, levels);
    return out;
}

// Two freedoms. fill_chunk(x1, W) writes W(y1, x2 * N + y2) = weight of node (x1, x2, y1, y2).
ComplexMatrix represent_two(const PhaseGrid& grid, int levels,
                            const std::function<void(int, ComplexMatrix&)>& fill_chunk) {
    const int n = grid.samples();
    const Eigen::Index plane = static_cast<Eigen::Index>(n) * n;
    const Eigen::Index block = static_cast<Eigen::Index>(levels) * levels;

    ComplexMatrix stack(plane, block);
    {
        DisplacementTables tables(levels);
        std::vector<Complex> u(block);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                tables.fill(grid.coordinate(i), grid.coordinate(j), u.data());
                stack.row(static_cast<Eigen::Index>(i) * n + j) = Eigen::Map<const Eigen::RowVectorXcd>(u.data(), block);
            }
    }

    ComplexMatrix z = ComplexMatrix::Zero(block, block);
    ComplexMatrix chunk(n, plane);
    for (int x1 = 0; x1 < n; ++x1) {
        fill_chunk(x1, chunk);
        const ComplexMatrix inner = chunk * stack;
        z.noalias() += stack.middleRows(static_cast<Eigen::Index>(x1) * n, n).transpose() * inner;
    }

    // z(m1 + n1 D, m2 + n2 D) -> pi(m1 D + m2, n1 D + n2)
    const int d = levels;
    ComplexMatrix out(block, block);
    for (int m1 = 0; m1 < d; ++m1)
        for (int n1 = 0; n1 < d; ++n1)
            for (int m2 = 0; m2 < d; ++m2)
                for (int n2 = 0; n2 < d; ++n2)
                    out(m1 * d + m2, n1 * d + n2) = z(m1 + n1 * d, m2 + n2 * d);
    return out;
}

std::vector<double> real_coordinates(const PhaseGrid& grid) {
    std::vector<double> c(grid.samples());
    for (int i = 0; i < grid.samples(); ++i) c[i] = grid.coordinate(i);
    return c;
}

}  // namespace

FockTruncation::FockTruncation(int levels) : levels_(levels) {
    if (levels < 2) throw std::invalid_argument(fmt::format("Fock truncation needs at least 2 levels, got {}", levels));
}

OperatorMatrix displacement_matrix(const RealVector& v, const FockTruncation& truncation) {
    if (v.size() != 2) throw std::invalid_argument("displacement matrices are built per freedom (v = (x, y))");
    const int d = truncation.levels();
    // Built at twice the size: the lower half of the basis should stay inside the kept levels.
    ComplexMatrix wide(2 * d, 2 * d);
    DisplacementTables tables(2 * d);
    tables.fill(v[0], v[1], wide.data());
    double leak = 0.0;
    for (int c = 0; c < d / 2; ++c) leak = std::max(leak, wide.col(c).tail(d).norm());
    OperatorMatrix out = finish(wide.topLeftCorner(d, d), 1, d);
    out.edge_norm = leak;
    if (out.edge_norm > kTruncationWarning)
        warn(fmt::format("displacement by ({}, {}) at {} levels: truncation estimate {:.3g}", v[0], v[1], d,
                         out.edge_norm));
    return out;
}

OperatorMatrix represent(const GridFunction& f, const FockTruncation& truncation) {
    const PhaseGrid& grid = f.grid();
    const int d = truncation.levels();
    const double volume = grid.cell_volume();
    if (grid.freedoms() == 1) {
        std::vector<Complex> weights(f.values());
        for (auto& w : weights) w *= volume;
        return finish(represent_one(grid, weights, d), 1, d);
    }
    const int n = grid.samples();
    const auto& values = f.values();
    auto fill = [&](int x1, ComplexMatrix& w) {
        for (int x2 = 0; x2 < n; ++x2)
            for (int y1 = 0; y1 < n; ++y1)
                for (int y2 = 0; y2 < n; ++y2)
                    w(y1, static_cast<Eigen::Index>(x2) * n + y2) =
                        volume * values[((static_cast<std::size_t>(x1) * n + x2) * n + y1) * n + y2];
    };
    return finish(represent_two(grid, d, fill), 2, d);
}

OperatorMatrix represent(const GaussianElement& f, const FockTruncation& truncation, const PhaseGrid& grid) {
    if (f.freedoms() != grid.freedoms())
        throw std::invalid_argument("Gaussian element and grid have different freedom counts");
    if (grid.freedoms() == 1) return represent(evaluate(f, grid), truncation);

    const int n = grid.samples();
    const int d = truncation.levels();
    const double volume = grid.cell_volume();
    const auto coords = real_coordinates(grid);
    const ComplexMatrix& q = f.quadratic();
    const ComplexVector& l = f.linear();
    auto fill = [&](int x1, ComplexMatrix& w) {
        parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t x2) {
            Eigen::Vector4cd v;
            for (int y1 = 0; y1 < n; ++y1)
                for (int y2 = 0; y2 < n; ++y2) {
                    v << coords[x1], coords[x2], coords[y1], coords[y2];
                    const Complex e = -(v.transpose() * q * v)(0, 0) + (l.transpose() * v)(0, 0);
                    w(y1, static_cast<Eigen::Index>(x2) * n + y2) = volume * f.coefficient() * std::exp(e);
                }
        });
    };
    return finish(represent_two(grid, d, fill), 2, d);
}

OperatorMatrix represent(const PolyGaussian& f, const FockTruncation& truncation, const PhaseGrid& grid) {
    return represent(sample(f, grid), truncation);
}

std::vector<double> fock_spectrum(const GaussianElement& f, const FockTruncation& truncation, const PhaseGrid& grid) {
    const OperatorMatrix m = represent(f, truncation, grid);
    const ComplexMatrix h = 0.5 * (m.entries + m.entries.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
    std::vector<double> out(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
    std::sort(out.rbegin(), out.rend());
    return out;
}

std::vector<Complex> fock_eigenvalues(const OperatorMatrix& m) {
    Eigen::ComplexEigenSolver<ComplexMatrix> eig(m.entries, false);
    if (eig.info() != Eigen::Success) throw std::runtime_error("complex eigensolver failed");
    std::vector<Complex> out(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });
    return out;
}

RealMatrix hermite_functions(int count, const std::vector<double>& xs) {
    if (count < 1) throw std::invalid_argument("need at least one Hermite function");
    RealMatrix h(count, static_cast<Eigen::Index>(xs.size()));
    const double norm0 = std::pow(kPi, -0.25);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        const auto c = static_cast<Eigen::Index>(i);
        h(0, c) = norm0 * std::exp(-0.5 * x * x);
        if (count > 1) h(1, c) = std::sqrt(2.0) * x * h(0, c);
        for (int k = 1; k + 1 < count; ++k)
            h(k + 1, c) = std::sqrt(2.0 / (k + 1)) * x * h(k, c) - std::sqrt(static_cast<double>(k) / (k + 1)) * h(k - 1, c);
    }
    return h;
}

double mehler_check(double gamma, const FockTruncation& truncation, const HermiteGrid& grid) {
    if (!(gamma > 0.0)) throw std::domain_error("Mehler check requires gamma > 0");
    if (grid.points < 2 || !(grid.half_extent > 0.0)) throw std::invalid_argument("invalid Hermite grid");
    const int d = truncation.levels();
    const double step = 2.0 * grid.half_extent / (grid.points - 1);
    std::vector<double> xs(grid.points);
    for (int i = 0; i < grid.points; ++i) xs[i] = -grid.half_extent + i * step;

    const SpectralData spectrum = spectrum_single(gamma, d - 1);
    const RealMatrix h = hermite_functions(d, xs);
    RealMatrix weighted = h;
    for (int k = 0; k < d; ++k) weighted.row(k) *= spectrum.entries[k].eigenvalue.real();
    const RealMatrix expansion = h.transpose() * weighted;

    // y-quadrature over the full decay range of exp(-y^2/(4 gamma)).
    const double y_extent = std::sqrt(4.0 * gamma * 40.0);
    const int y_points = 2 * static_cast<int>(std::ceil(y_extent / step)) + 1;
    std::vector<double> ys(y_points), gy(y_points);
    for (int k = 0; k < y_points; ++k) {
        ys[k] = -y_extent + k * (2.0 * y_extent / (y_points - 1));
        gy[k] = std::exp(-ys[k] * ys[k] / (4.0 * gamma));
    }
    const double dy = 2.0 * y_extent / (y_points - 1);

    // The integrand is even in y up to the phase, so only the cosine survives. It depends on
    // xi + xi' = 2 xs[0] + (i + j) step only.
    std::vector<double> transform(2 * grid.points - 1);
    for (std::size_t p = 0; p < transform.size(); ++p) {
        const double mid = xs[0] + 0.5 * static_cast<double>(p) * step;
        double s = 0.0;
        for (int k = 0; k < y_points; ++k) s += gy[k] * std::cos(ys[k] * mid);
        transform[p] = s * dy;
    }

    double worst = 0.0;
    double peak = 0.0;
    for (int i = 0; i < grid.points; ++i)
        for (int j = 0; j < grid.points; ++j) {
            const double dx = xs[j] - xs[i];
            const double kernel = std::exp(-dx * dx / (4.0 * gamma)) * transform[i + j];
            peak = std::max(peak, std::abs(kernel));
            worst = std::max(worst, std::abs(kernel - expansion(i, j)));
        }
    return worst / peak;
}

}  // namespace ccrweyl
