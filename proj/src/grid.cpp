#include "ccrweyl/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include <fmt/format.h>

#include "ccrweyl/diagnostics.hpp"
#include "ccrweyl/parallel.hpp"

namespace ccrweyl {

namespace {

constexpr double kTailWarning = 1e-8;
constexpr int kMaxSamplesTwoFreedoms = 32;

std::size_t ipow(std::size_t base, int exponent) {
    std::size_t out = 1;
    for (int i = 0; i < exponent; ++i) out *= base;
    return out;
}

void require_same_grid(const GridFunction& f, const GridFunction& h) {
    if (f.grid() != h.grid()) throw std::invalid_argument("grid functions live on different grids");
}

void warn_on_tail(const GridFunction& f, const char* role) {
    const double ratio = f.boundary_ratio();
    if (ratio > kTailWarning)
        warn(fmt::format("{} operand has boundary mass ratio {:.3g}; the grid may be too small", role,
                         ratio));
}

// phase[a][b] = exp(i theta (a - N/2)(b - N/2)), theta = h^2/2.
std::vector<Complex> phase_table(const PhaseGrid& grid) {
    const int n = grid.samples();
    const double theta = 0.5 * grid.spacing() * grid.spacing();
    std::vector<Complex> table(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double p = theta * static_cast<double>(a - n / 2) * static_cast<double>(b - n / 2);
            table[static_cast<std::size_t>(a) * n + b] = std::polar(1.0, p);
        }
    return table;
}

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class BatchedFft {
  public:
    BatchedFft(fftw_complex* data, int length, int batch, int sign) {
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_many_dft(1, &length, batch, data, nullptr, 1, length, data, nullptr, 1,
                                   length, sign, FFTW_ESTIMATE);
        if (plan_ == nullptr) throw std::runtime_error("FFT planning failed");
    }
    ~BatchedFft() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    BatchedFft(const BatchedFft&) = delete;
    BatchedFft& operator=(const BatchedFft&) = delete;

    void run() { fftw_execute(plan_); }

  private:
    fftw_plan plan_;
};

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

// n = 1 direct sum, row by row.
GridFunction direct_one(const GridFunction& f, const GridFunction& g) {
    const PhaseGrid& grid = f.grid();
    const int n = grid.samples();
    const int half = n / 2;
    const auto phase = phase_table(grid);
    const auto& fv = f.values();
    const auto& gv = g.values();
    const double weight = grid.cell_volume();
    std::vector<Complex> out(grid.size());

    parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t row) {
        const int out_x = static_cast<int>(row);
        std::vector<Complex> a(n);
        Complex* target = out.data() + row * n;
        for (int src_x = 0; src_x < n; ++src_x) {
            const int k = out_x - src_x + half;
            if (k < 0 || k >= n) continue;
            const Complex* frow = fv.data() + static_cast<std::size_t>(src_x) * n;
            const Complex* grow = gv.data() + static_cast<std::size_t>(k) * n;
            const Complex* out_phase = phase.data() + static_cast<std::size_t>(out_x) * n;
            const Complex* src_phase = phase.data() + static_cast<std::size_t>(src_x) * n;
            for (int y = 0; y < n; ++y) a[y] = frow[y] * std::conj(out_phase[y]);
            for (int out_y = 0; out_y < n; ++out_y) {
                const int lo = std::max(0, out_y + half - (n - 1));
                const int hi = std::min(n - 1, out_y + half);
                Complex s = 0.0;
                for (int y = lo; y <= hi; ++y) s += a[y] * grow[out_y - y + half];
                target[out_y] += src_phase[out_y] * s;
            }
        }
        for (int y = 0; y < n; ++y) target[y] *= weight;
    });
    return GridFunction(grid, std::move(out));
}

// n = 1 via FFT tables. With k = j - j', m = n - n' the twist is
// theta (j' m - k n'), so for fixed (j', k) the n'-sum is a linear convolution of
// f(j', .) exp(-i theta k .) with g(k, .) exp(i theta j' .).
GridFunction accelerated_one(const GridFunction& f, const GridFunction& g) {
    const PhaseGrid& grid = f.grid();
    const int n = grid.samples();
    const int half = n / 2;
    const int padded = 3 * n / 2;
    const auto phase = phase_table(grid);
    const auto& fv = f.values();
    const auto& gv = g.values();
    const std::size_t rows = static_cast<std::size_t>(n) * n;

    // a_table[(src_x * n + k) * padded + p], b_table[(k * n + src_x) * padded + p]
    std::vector<Complex> a_table(rows * padded);
    std::vector<Complex> b_table(rows * padded);
    parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t sx) {
        for (int k = 0; k < n; ++k) {
            Complex* a = a_table.data() + (sx * n + k) * padded;
            Complex* b = b_table.data() + (static_cast<std::size_t>(k) * n + sx) * padded;
            const Complex* frow = fv.data() + sx * n;
            const Complex* grow = gv.data() + static_cast<std::size_t>(k) * n;
            const Complex* k_phase = phase.data() + static_cast<std::size_t>(k) * n;
            const Complex* s_phase = phase.data() + sx * n;
            for (int y = 0; y < n; ++y) {
                a[y] = frow[y] * std::conj(k_phase[y]);
                b[y] = grow[y] * s_phase[y];
            }
        }
    });
    {
        BatchedFft fa(as_fftw(a_table.data()), padded, static_cast<int>(rows), FFTW_FORWARD);
        BatchedFft fb(as_fftw(b_table.data()), padded, static_cast<int>(rows), FFTW_FORWARD);
        fa.run();
        fb.run();
    }

    std::vector<Complex> spectrum(static_cast<std::size_t>(n) * padded);
    parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t ox) {
        Complex* target = spectrum.data() + ox * padded;
        for (int sx = 0; sx < n; ++sx) {
            const int k = static_cast<int>(ox) - sx + half;
            if (k < 0 || k >= n) continue;
            const Complex* a = a_table.data() + (static_cast<std::size_t>(sx) * n + k) * padded;
            const Complex* b = b_table.data() + (static_cast<std::size_t>(k) * n + sx) * padded;
            for (int p = 0; p < padded; ++p) target[p] += a[p] * b[p];
        }
    });
    a_table = {};
    b_table = {};
    {
        BatchedFft inverse(as_fftw(spectrum.data()), padded, n, FFTW_BACKWARD);
        inverse.run();
    }

    const double weight = grid.cell_volume() / padded;
    std::vector<Complex> out(grid.size());
    for (int ox = 0; ox < n; ++ox)
        for (int oy = 0; oy < n; ++oy)
            out[static_cast<std::size_t>(ox) * n + oy] =
                weight * spectrum[static_cast<std::size_t>(ox) * padded + oy + half];
    return GridFunction(grid, std::move(out));
}

}  // namespace

PhaseGrid::PhaseGrid(int freedoms, double half_extent, int samples)
    : n_(freedoms), l_(half_extent), samples_(samples) {
    if (freedoms < 1 || freedoms > 2)
        throw std::invalid_argument(fmt::format("grids support 1 or 2 freedoms, got {}", freedoms));
    if (!(half_extent > 0.0) || !std::isfinite(half_extent))
        throw std::invalid_argument("grid half-extent must be positive");
    if (samples < 8 || samples % 2 != 0)
        throw std::invalid_argument(
            fmt::format("samples per axis must be even and at least 8, got {}", samples));
    size_ = ipow(static_cast<std::size_t>(samples), 2 * freedoms);
}

PhaseGrid PhaseGrid::standard(int freedoms) { return PhaseGrid(freedoms, 10.0, 128); }

std::size_t PhaseGrid::origin() const {
    return linear(std::vector<int>(axes(), origin_index()));
}

std::vector<int> PhaseGrid::indices(std::size_t node) const {
    std::vector<int> out(axes());
    for (int a = axes() - 1; a >= 0; --a) {
        out[a] = static_cast<int>(node % samples_);
        node /= samples_;
    }
    return out;
}

std::size_t PhaseGrid::linear(const std::vector<int>& indices) const {
    std::size_t out = 0;
    for (int i : indices) out = out * samples_ + static_cast<std::size_t>(i);
    return out;
}

RealVector PhaseGrid::point(std::size_t node) const {
    const auto idx = indices(node);
    RealVector v(axes());
    for (int a = 0; a < axes(); ++a) v[a] = coordinate(idx[a]);
    return v;
}

double PhaseGrid::cell_volume() const { return std::pow(spacing(), 2 * n_); }

bool PhaseGrid::operator==(const PhaseGrid& other) const {
    return n_ == other.n_ && l_ == other.l_ && samples_ == other.samples_;
}

GridFunction::GridFunction(PhaseGrid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument(fmt::format("expected {} grid values, got {}", grid_.size(),
                                                values_.size()));
}

GridFunction GridFunction::zeros(const PhaseGrid& grid) {
    return GridFunction(grid, std::vector<Complex>(grid.size()));
}

double GridFunction::boundary_ratio() const {
    const int n = grid_.samples();
    double peak = 0.0;
    double edge = 0.0;
    for (std::size_t node = 0; node < values_.size(); ++node) {
        const double a = std::abs(values_[node]);
        peak = std::max(peak, a);
        if (a <= edge) continue;
        std::size_t rest = node;
        for (int axis = 0; axis < grid_.axes(); ++axis) {
            const auto i = static_cast<int>(rest % n);
            rest /= n;
            if (i == 0 || i == n - 1) {
                edge = a;
                break;
            }
        }
    }
    return peak > 0.0 ? edge / peak : 0.0;
}

GridFunction GridFunction::operator+(const GridFunction& other) const {
    require_same_grid(*this, other);
    std::vector<Complex> out(values_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.values_[i];
    return GridFunction(grid_, std::move(out));
}

GridFunction GridFunction::operator-(const GridFunction& other) const {
    require_same_grid(*this, other);
    std::vector<Complex> out(values_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= other.values_[i];
    return GridFunction(grid_, std::move(out));
}

GridFunction GridFunction::scaled(Complex factor) const {
    std::vector<Complex> out(values_);
    for (auto& v : out) v *= factor;
    return GridFunction(grid_, std::move(out));
}

Complex twisted_convolve_at(const GridFunction& f, const GridFunction& h, std::size_t node) {
    require_same_grid(f, h);
    const PhaseGrid& grid = f.grid();
    if (node >= grid.size()) throw std::out_of_range("grid node out of range");
    const int n = grid.samples();
    const int half = n / 2;
    const int freedoms = grid.freedoms();
    const int axes = grid.axes();
    const double theta = 0.5 * grid.spacing() * grid.spacing();
    const auto out_idx = grid.indices(node);
    const auto& fv = f.values();
    const auto& hv = h.values();

    std::vector<int> src(axes, 0);
    Complex sum = 0.0;
    for (std::size_t s = 0; s < grid.size(); ++s) {
        const Complex fs = fv[s];
        if (fs != 0.0) {
            std::size_t diff = 0;
            bool inside = true;
            for (int a = 0; a < axes; ++a) {
                const int d = out_idx[a] - src[a] + half;
                if (d < 0 || d >= n) {
                    inside = false;
                    break;
                }
                diff = diff * n + static_cast<std::size_t>(d);
            }
            if (inside) {
                double p = 0.0;
                for (int j = 0; j < freedoms; ++j) {
                    const double xs = src[j] - half, ys = src[freedoms + j] - half;
                    const double xo = out_idx[j] - half, yo = out_idx[freedoms + j] - half;
                    p += xs * yo - xo * ys;
                }
                sum += std::polar(1.0, theta * p) * fs * hv[diff];
            }
        }
        for (int a = axes - 1; a >= 0; --a) {
            if (++src[a] < n) break;
            src[a] = 0;
        }
    }
    return sum * grid.cell_volume();
}

GridFunction twisted_convolve(const GridFunction& f, const GridFunction& h,
                              ConvolutionMethod method) {
    require_same_grid(f, h);
    const PhaseGrid& grid = f.grid();
    if (grid.freedoms() == 2 && grid.samples() > kMaxSamplesTwoFreedoms)
        throw std::invalid_argument(fmt::format(
            "two-freedom convolution is limited to {} samples per axis, got {}",
            kMaxSamplesTwoFreedoms, grid.samples()));
    if (method == ConvolutionMethod::Accelerated && grid.freedoms() != 1)
        throw std::invalid_argument("the accelerated convolution supports one freedom only");
    warn_on_tail(f, "left");
    warn_on_tail(h, "right");

    if (grid.freedoms() == 1) {
        if (method == ConvolutionMethod::Direct) return direct_one(f, h);
        return accelerated_one(f, h);
    }
    std::vector<Complex> out(grid.size());
    parallel_for(0, grid.size(), [&](std::size_t node) { out[node] = twisted_convolve_at(f, h, node); });
    return GridFunction(grid, std::move(out));
}

GridFunction involution(const GridFunction& f) {
    const PhaseGrid& grid = f.grid();
    const int n = grid.samples();
    std::vector<Complex> out(grid.size());
    for (std::size_t node = 0; node < grid.size(); ++node) {
        auto idx = grid.indices(node);
        for (int& i : idx) i = (n - i) % n;
        out[node] = std::conj(f[grid.linear(idx)]);
    }
    return GridFunction(grid, std::move(out));
}

GridFunction weyl_multiplier(Side side, const RealVector& v, const GridFunction& f) {
    const PhaseGrid& grid = f.grid();
    if (v.size() != grid.axes())
        throw std::invalid_argument(
            fmt::format("shift has dimension {}, grid has {} axes", v.size(), grid.axes()));
    const double h = grid.spacing();
    std::vector<int> steps(grid.axes());
    for (int a = 0; a < grid.axes(); ++a) {
        const double s = v[a] / h;
        const double r = std::round(s);
        if (std::abs(s - r) > 1e-9 * std::max(1.0, std::abs(s)))
            throw std::invalid_argument(
                fmt::format("shift component {} is not a multiple of the grid spacing {}", v[a], h));
        steps[a] = static_cast<int>(r);
    }
    const int n = grid.samples();
    const int freedoms = grid.freedoms();
    const double sign = side == Side::Left ? -0.5 : 0.5;
    std::vector<Complex> out(grid.size());
    for (std::size_t node = 0; node < grid.size(); ++node) {
        const auto idx = grid.indices(node);
        auto src = idx;
        bool inside = true;
        for (int a = 0; a < grid.axes(); ++a) {
            src[a] -= steps[a];
            if (src[a] < 0 || src[a] >= n) inside = false;
        }
        if (!inside) continue;
        double sigma = 0.0;
        for (int j = 0; j < freedoms; ++j)
            sigma += grid.coordinate(idx[j]) * v[freedoms + j] -
                     v[j] * grid.coordinate(idx[freedoms + j]);
        out[node] = std::polar(1.0, sign * sigma) * f[grid.linear(src)];
    }
    return GridFunction(grid, std::move(out));
}

GridFunction shift_automorphism(const RealVector& lambda, const GridFunction& f) {
    const PhaseGrid& grid = f.grid();
    if (lambda.size() != grid.axes())
        throw std::invalid_argument("functional dimension does not match the grid");
    std::vector<Complex> out(grid.size());
    for (std::size_t node = 0; node < grid.size(); ++node)
        out[node] = std::polar(1.0, lambda.dot(grid.point(node))) * f[node];
    return GridFunction(grid, std::move(out));
}

double l1_norm(const GridFunction& f) {
    double s = 0.0;
    for (const auto& v : f.values()) s += std::abs(v);
    return s * f.grid().cell_volume();
}

Complex l2_inner(const GridFunction& f, const GridFunction& h) {
    require_same_grid(f, h);
    Complex s = 0.0;
    for (std::size_t i = 0; i < f.values().size(); ++i) s += std::conj(f[i]) * h[i];
    return s * f.grid().cell_volume();
}

Complex trace(const GridFunction& f) {
    return std::pow(kTwoPi, f.grid().freedoms()) * f.at_origin();
}

double relative_l1_distance(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    const double denom = l1_norm(b);
    if (denom == 0.0) throw std::domain_error("reference function vanishes on the grid");
    double s = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) s += std::abs(a[i] - b[i]);
    return s * a.grid().cell_volume() / denom;
}

}  // namespace ccrweyl
