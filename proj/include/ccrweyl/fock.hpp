#pragma once

// Truncated Fock-space images of algebra elements.
//
// U(x, y) is the displacement operator D(alpha) with alpha = -(x - i y)/sqrt(2), so
// U(v)U(v') = exp(-i sigma(v, v')/2) U(v + v'). An element f is represented by
// pi(f) = int f(v) U(v) dv, evaluated by quadrature on a phase grid. With more than one
// freedom the basis is the tensor product with the first freedom slowest.

#include <vector>

#include "ccrweyl/gaussian.hpp"
#include "ccrweyl/grid.hpp"
#include "ccrweyl/matrix_units.hpp"
#include "ccrweyl/types.hpp"

namespace ccrweyl {

class FockTruncation {
  public:
    /// Throws std::invalid_argument for fewer than 2 levels.
    explicit FockTruncation(int levels);
    int levels() const { return levels_; }

  private:
    int levels_;
};

struct OperatorMatrix {
    ComplexMatrix entries;
    int modes = 1;
    int levels_per_mode = 0;
    /// Frobenius norm of the outermost levels of each mode, relative to the whole matrix:
    /// a proxy for the error made by truncating.
    double edge_norm = 0.0;
};

/// Truncated U(v) for one freedom, v = (x, y). Here edge_norm is the largest norm that
/// U moves out of the kept levels from the lower half of the basis; warns above 1e-8.
OperatorMatrix displacement_matrix(const RealVector& v, const FockTruncation& truncation);

/// pi(f) for a sampled element with one or two freedoms.
OperatorMatrix represent(const GridFunction& f, const FockTruncation& truncation);
/// pi(f) by quadrature of the closed form on the grid (no full sample is stored).
OperatorMatrix represent(const GaussianElement& f, const FockTruncation& truncation,
                         const PhaseGrid& grid);
OperatorMatrix represent(const PolyGaussian& f, const FockTruncation& truncation,
                         const PhaseGrid& grid);

/// Eigenvalues of the Hermitian part of pi(f), descending.
std::vector<double> fock_spectrum(const GaussianElement& f, const FockTruncation& truncation,
                                  const PhaseGrid& grid);

/// Eigenvalues of a general operator matrix, ordered by descending modulus.
std::vector<Complex> fock_eigenvalues(const OperatorMatrix& m);

/// Hermite functions h_0..h_{count-1} on the given abscissae; row k is h_k.
RealMatrix hermite_functions(int count, const std::vector<double>& xs);

struct HermiteGrid {
    double half_extent = 12.0;
    int points = 512;
};

/// Compares the truncated eigen-expansion sum_k lambda_k h_k(xi) h_k(xi') of g_gamma with
/// its Schrodinger-picture kernel K(xi, xi') = int g_gamma(xi' - xi, y) e^{i y (xi + xi')/2} dy,
/// both on the Hermite grid. Returns max |difference| / max |K|.
double mehler_check(double gamma, const FockTruncation& truncation, const HermiteGrid& grid = {});

}  // namespace ccrweyl
