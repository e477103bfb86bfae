#pragma once

// Sampled phase-space functions and the quadrature form of the convolution algebra.
//
// A PhaseGrid has N nodes per axis at k*h, k in [-N/2, N/2), h = 2L/N, so the origin
// is a node. Axes are ordered (x_1..x_n, y_1..y_n) with axis 0 varying slowest.
// Values off the grid are treated as zero.

#include <cstddef>
#include <vector>

#include "ccrweyl/types.hpp"

namespace ccrweyl {

class PhaseGrid {
  public:
    /// Throws std::invalid_argument unless n in {1, 2}, N >= 8 even and L > 0.
    PhaseGrid(int freedoms, double half_extent, int samples);

    /// L = 10, N = 128.
    static PhaseGrid standard(int freedoms = 1);

    int freedoms() const { return n_; }
    double half_extent() const { return l_; }
    int samples() const { return samples_; }
    double spacing() const { return 2.0 * l_ / samples_; }
    int axes() const { return 2 * n_; }
    std::size_t size() const { return size_; }

    /// Coordinate of per-axis index i in [0, N).
    double coordinate(int i) const { return (i - samples_ / 2) * spacing(); }
    int origin_index() const { return samples_ / 2; }
    std::size_t origin() const;

    /// Per-axis indices of a linear node index.
    std::vector<int> indices(std::size_t node) const;
    std::size_t linear(const std::vector<int>& indices) const;
    RealVector point(std::size_t node) const;

    /// Quadrature weight h^{2n}.
    double cell_volume() const;

    bool operator==(const PhaseGrid& other) const;
    bool operator!=(const PhaseGrid& other) const { return !(*this == other); }

  private:
    int n_;
    double l_;
    int samples_;
    std::size_t size_;
};

class GridFunction {
  public:
    GridFunction(PhaseGrid grid, std::vector<Complex> values);
    static GridFunction zeros(const PhaseGrid& grid);

    const PhaseGrid& grid() const { return grid_; }
    const std::vector<Complex>& values() const { return values_; }
    Complex operator[](std::size_t node) const { return values_[node]; }
    Complex at_origin() const { return values_[grid_.origin()]; }

    /// max |f| over nodes touching the boundary divided by max |f|.
    double boundary_ratio() const;

    GridFunction operator+(const GridFunction& other) const;
    GridFunction operator-(const GridFunction& other) const;
    GridFunction scaled(Complex factor) const;

  private:
    PhaseGrid grid_;
    std::vector<Complex> values_;
};

enum class ConvolutionMethod {
    Direct,       ///< Riemann sum over all node pairs; the reference.
    Accelerated,  ///< Same sum, twist factored through one-axis FFTs (n = 1 only).
    Automatic,    ///< Accelerated for n = 1, direct otherwise.
};

/// (f h)(v) = h^{2n} sum_{v'} exp(i sigma(v, v')/2) f(v') h(v - v').
/// Throws std::invalid_argument on grid mismatch, or for n = 2 grids above 32 samples
/// per axis. Warns when boundary samples exceed 1e-8 of the maximum.
GridFunction twisted_convolve(const GridFunction& f, const GridFunction& h,
                              ConvolutionMethod method = ConvolutionMethod::Automatic);

/// The same Riemann sum evaluated at one output node.
Complex twisted_convolve_at(const GridFunction& f, const GridFunction& h, std::size_t node);

/// f*(v) = conj(f(-v)). The reflection is taken modulo N per axis, so the edge row at
/// index -N/2 maps to itself and involution is exactly involutive.
GridFunction involution(const GridFunction& f);

/// left:  exp(-i sigma(v, v')/2) f(v' - v)
/// right: exp(+i sigma(v, v')/2) f(v' - v)
/// Components of v must be integer multiples of the spacing (std::invalid_argument otherwise).
GridFunction weyl_multiplier(Side side, const RealVector& v, const GridFunction& f);

/// f(v) -> exp(i lambda(v)) f(v).
GridFunction shift_automorphism(const RealVector& lambda, const GridFunction& f);

double l1_norm(const GridFunction& f);
/// sum conj(f) h times the cell volume.
Complex l2_inner(const GridFunction& f, const GridFunction& h);
/// (2 pi)^n f(0).
Complex trace(const GridFunction& f);

/// ||a - b||_1 / ||b||_1.
double relative_l1_distance(const GridFunction& a, const GridFunction& b);

}  // namespace ccrweyl
