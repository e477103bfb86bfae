#include "ccrweyl/symplectic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

namespace ccrweyl {

SymplecticSpace::SymplecticSpace(int freedoms) : n_(freedoms) {
    if (freedoms < 1) throw std::invalid_argument(fmt::format("freedom count must be positive, got {}", freedoms));
}

RealMatrix symplectic_matrix(int freedoms) {
    const int n = freedoms;
    RealMatrix j = RealMatrix::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n) = -RealMatrix::Identity(n, n);
    j.bottomLeftCorner(n, n) = RealMatrix::Identity(n, n);
    return j;
}

double symplectic_form(const RealVector& v, const RealVector& w, const SymplecticSpace& space) {
    const int n = space.freedoms();
    if (v.size() != space.dim() || w.size() != space.dim()) {
        throw std::invalid_argument(
            fmt::format("symplectic_form: expected vectors of length {}, got {} and {}", space.dim(), v.size(), w.size()));
    }
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += w[j] * v[n + j] - v[j] * w[n + j];
    return s;
}

Complex symplectic_form(const ComplexVector& v, const ComplexVector& w) {
    if (v.size() != w.size() || v.size() % 2 != 0) {
        throw std::invalid_argument(fmt::format("symplectic_form: bad lengths {} and {}", v.size(), w.size()));
    }
    const Eigen::Index n = v.size() / 2;
    Complex s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) s += w[j] * v[n + j] - v[j] * w[n + j];
    return s;
}

bool is_symplectic(const RealMatrix& t, double tol) {
    if (t.rows() != t.cols() || t.rows() % 2 != 0) return false;
    const RealMatrix j = symplectic_matrix(static_cast<int>(t.rows() / 2));
    return (t.transpose() * j * t - j).cwiseAbs().maxCoeff() <= tol;
}

QuadraticPart::QuadraticPart(RealMatrix k) : k_(std::move(k)) {
    if (k_.rows() != k_.cols() || k_.rows() == 0 || k_.rows() % 2 != 0) {
        throw std::invalid_argument(fmt::format("quadratic part must be 2n x 2n, got {} x {}", k_.rows(), k_.cols()));
    }
    if (!k_.allFinite()) throw std::invalid_argument("quadratic part has non-finite entries");
    const double scale = k_.cwiseAbs().maxCoeff();
    if ((k_ - k_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0)) {
        throw std::invalid_argument("quadratic part is not symmetric");
    }
    k_ = 0.5 * (k_ + k_.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(k_, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double norm = ev.cwiseAbs().maxCoeff();
    if (!(ev.minCoeff() > 1e-12 * norm)) {
        throw std::invalid_argument(fmt::format("quadratic part is not positive definite (min eigenvalue {:.3e})", ev.minCoeff()));
    }
}

namespace {

struct Reduction {
    RealMatrix inv_sqrt_k;       // K^{-1/2}
    Eigen::VectorXd omegas;      // positive imaginary parts of eig(K^{-1/2} J K^{-1/2}), descending
    ComplexMatrix eigenvectors;  // matching eigenvectors u with (iA) u = omega u
};

// A = K^{-1/2} J K^{-1/2} is real antisymmetric, so iA is hermitian with eigenvalues +-omega.
Reduction reduce(const QuadraticPart& quad) {
    const RealMatrix& k = quad.matrix();
    const int n = quad.freedoms();
    Eigen::SelfAdjointEigenSolver<RealMatrix> ks(k);
    if (ks.info() != Eigen::Success) throw std::runtime_error("williamson: eigen-decomposition of K failed");
    const RealMatrix inv_sqrt_k = ks.operatorInverseSqrt();
    const RealMatrix a = inv_sqrt_k * symplectic_matrix(n) * inv_sqrt_k;
    const ComplexMatrix ia = kI * a.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ia);
    if (es.info() != Eigen::Success) throw std::runtime_error("williamson: hermitian eigensolver did not converge");

    // Eigenvalues come ascending: the upper n are the positive ones.
    Reduction r{inv_sqrt_k, Eigen::VectorXd(n), ComplexMatrix(2 * n, n)};
    for (int j = 0; j < n; ++j) {
        const int src = 2 * n - 1 - j;
        r.omegas[j] = es.eigenvalues()[src];
        r.eigenvectors.col(j) = es.eigenvectors().col(src);
        if (!(r.omegas[j] > 0.0) || es.eigenvalues()[n - 1 - j] > 0.0) {
            throw std::runtime_error("williamson: eigenvalues of iA are not paired as +-omega");
        }
    }
    return r;
}

}  // namespace

std::vector<double> symplectic_gammas(const QuadraticPart& k) {
    const Reduction r = reduce(k);
    std::vector<double> gammas(r.omegas.size());
    for (Eigen::Index j = 0; j < r.omegas.size(); ++j) gammas[j] = r.omegas[j] / 4.0;
    return gammas;
}

WilliamsonResult williamson_normalize(const QuadraticPart& k) {
    const int n = k.freedoms();
    const Reduction r = reduce(k);

    // For (iA)u = omega u write u = (a + ib)/sqrt(2): then A a = omega b, A b = -omega a and the
    // family {a_j, b_j} is orthonormal, so O = [a | b] gives O^T A O = [[0, -W], [W, 0]].
    RealMatrix o(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        const ComplexVector u = r.eigenvectors.col(j);
        o.col(j) = std::sqrt(2.0) * u.real();
        o.col(n + j) = std::sqrt(2.0) * u.imag();
    }
    if ((o.transpose() * o - RealMatrix::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff() > 1e-8) {
        throw std::runtime_error("williamson: real eigenvector pairs are not orthonormal");
    }

    Eigen::VectorXd scale(2 * n);
    for (int j = 0; j < n; ++j) scale[j] = scale[n + j] = 1.0 / std::sqrt(r.omegas[j]);

    WilliamsonResult result;
    result.transform = r.inv_sqrt_k * o * scale.asDiagonal();
    result.gammas.resize(n);
    for (int j = 0; j < n; ++j) result.gammas[j] = r.omegas[j] / 4.0;
    return result;
}

}  // namespace ccrweyl
