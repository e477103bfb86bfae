#pragma once

// Real symplectic linear algebra on V = R^{2n}.
//
// Coordinates: v = (x_1..x_n, y_1..y_n) stands for sum_j (x_j p_j + y_j q_j), with the
// canonical basis normalised by sigma(q_j, p_k) = delta_jk. In coordinates
//
//     sigma(v, v') = sum_j (x'_j y_j - x_j y'_j) = v^T J v',   J = [[0, -I], [I, 0]].
//
// This is the sign under which the twisted convolution reads
// exp(i (x'y - xy')/2) and U(v)U(v') = exp(-i sigma(v,v')/2) U(v+v').

#include <vector>

#include "ccrweyl/types.hpp"

namespace ccrweyl {

class SymplecticSpace {
  public:
    explicit SymplecticSpace(int freedoms);

    int freedoms() const { return n_; }
    int dim() const { return 2 * n_; }

  private:
    int n_;
};

/// Matrix of sigma: sigma(v, w) = v^T J w.
RealMatrix symplectic_matrix(int freedoms);

double symplectic_form(const RealVector& v, const RealVector& w, const SymplecticSpace& space);

/// Bilinear (not sesquilinear) extension to V + iV.
Complex symplectic_form(const ComplexVector& v, const ComplexVector& w);

/// True when T^T J T = J within tol (max-abs).
bool is_symplectic(const RealMatrix& t, double tol = 1e-10);

/// Positive-definite quadratic form kappa(v) = v^T K v on R^{2n}.
class QuadraticPart {
  public:
    /// Throws std::invalid_argument if K is not square of even size, not symmetric,
    /// or not positive definite (smallest eigenvalue <= 1e-12 * ||K||).
    explicit QuadraticPart(RealMatrix k);

    const RealMatrix& matrix() const { return k_; }
    int freedoms() const { return static_cast<int>(k_.rows() / 2); }

  private:
    RealMatrix k_;
};

struct WilliamsonResult {
    /// gamma_1 >= ... >= gamma_n > 0.
    std::vector<double> gammas;
    /// Symplectic T with T^T K T = diag(1/(4 gamma), 1/(4 gamma)).
    RealMatrix transform;
};

/// Positive eigenvalues gamma_j of (i/4) K^{-1} J, sorted descending. The full
/// eigenvalue set of (i/4) K^{-1} J is {+-gamma_j}.
std::vector<double> symplectic_gammas(const QuadraticPart& k);

/// Williamson normal form of K relative to sigma. Throws std::runtime_error if the
/// eigen-decomposition fails or produces a degenerate pairing.
WilliamsonResult williamson_normalize(const QuadraticPart& k);

}  // namespace ccrweyl
