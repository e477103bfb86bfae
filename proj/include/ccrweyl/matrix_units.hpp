#pragma once

// Coherent-state kernels and the matrix units g_{k,l} of one freedom.
//
// With u = (s + i t)/sqrt(2) and g the vacuum projection,
//
//     g_{z,w} = e^{z a*} g e^{w a} = e^{zw - zu + w conj(u)} g,
//     g_{k,l} = (k! l!)^{-1/2} d^k/dz^k d^l/dw^l g_{z,w} at z = w = 0,
//
// a polynomial in (u, conj(u)) times g. The units satisfy
// g_{j,k} g_{l,m} = delta_{kl} g_{j,m}, g_{k,l}* = g_{l,k}, tr g_{k,l} = delta_{kl}.

#include <map>
#include <utility>
#include <vector>

#include "ccrweyl/gaussian.hpp"
#include "ccrweyl/grid.hpp"

namespace ccrweyl {

inline constexpr int kDefaultUnitCutoff = 8;

/// g_{z,w} = (2 pi)^{-n} e^{z.w} exp(-|v|^2/4 + (w - z).x/sqrt 2 - i (z + w).y/sqrt 2),
/// satisfying g_{z,w} g_{z',w'} = e^{w.z'} g_{z,w'} and g_{z,w}* = g_{conj w, conj z}.
struct CoherentKernel {
    ComplexVector z;
    ComplexVector w;
    GaussianElement element;
};

CoherentKernel coherent_kernel(const ComplexVector& z, const ComplexVector& w);
CoherentKernel coherent_kernel(Complex z, Complex w);

/// sum_{a,b} coef_{a,b} u^a conj(u)^b times the vacuum projection (one freedom).
class PolyGaussian {
  public:
    using Terms = std::map<std::pair<int, int>, Complex>;

    PolyGaussian() = default;
    explicit PolyGaussian(Terms terms);

    const Terms& terms() const { return terms_; }
    Complex operator()(double s, double t) const;

    PolyGaussian operator+(const PolyGaussian& other) const;
    PolyGaussian scaled(Complex factor) const;

  private:
    Terms terms_;
};

/// (a, b, coef) -> (b, a, conj(coef) (-1)^{a+b}).
PolyGaussian involution(const PolyGaussian& p);

/// Closed-form coefficients of g_{k,l}. Throws std::invalid_argument for negative
/// indices or indices above the cutoff.
PolyGaussian matrix_unit(int k, int l, int cutoff = kDefaultUnitCutoff);

/// g_{k,l}(s, t) through generalized Laguerre polynomials; stable for large k, l.
Complex matrix_unit_value(int k, int l, double s, double t);

GridFunction sample(const PolyGaussian& p, const PhaseGrid& grid);
GridFunction sample_matrix_unit(int k, int l, const PhaseGrid& grid);

struct UnitRelation {
    int j, k, l, m;
    /// ||g_{j,k} g_{l,m} - delta_{kl} g_{j,m}||_1 / ||g_{j,m}||_1.
    double deviation;
    bool passed;
};

struct UnitRelationReport {
    int max_index;
    double tolerance;
    std::vector<UnitRelation> relations;
    /// max_{k,l} ||g_{k,l}* - g_{l,k}||_1 / ||g_{l,k}||_1.
    double adjoint_deviation;
    double max_deviation() const;
    bool passed() const;
};

/// All (max_index + 1)^4 product relations on the grid. Throws std::invalid_argument
/// when the highest unit has boundary mass above the tolerance.
UnitRelationReport verify_matrix_unit_relations(int max_index, const PhaseGrid& grid,
                                                double tolerance = 2e-4);

}  // namespace ccrweyl
