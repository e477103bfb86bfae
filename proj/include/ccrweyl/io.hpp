#pragma once

// File formats. JSON documents carry "schema": 1; complex numbers are [re, im] pairs and
// matrices are row-major lists. Malformed input raises std::runtime_error naming the field.
//
//   Gaussian element   {"schema":1, "n":1, "c":[re,im], "Q":[[re,im],...], "l":[[re,im],...]}
//                      or the shorthand {"gamma": g | [re,im], "n": 1, "scale": a}
//   quadratic part     {"n":1, "matrix":[k11, k12, ...]}
//   Williamson result  {"schema":1, "n":1, "gammas":[...], "T":[...]}
//   grid function      {"schema":1, "grid":{"n":1,"L":10,"N":128}, "values":[re,im,...]}
//   operator matrix    {"schema":1, "modes":1, "levels":16, "entries":[re,im,...], "edge_norm":e}
//
// The binary grid format is "CCRG", uint32 version, int32 n, int32 N, float64 L, then
// interleaved little-endian float64 (re, im) values in node order.

#include <iosfwd>
#include <string>

#include "ccrweyl/fock.hpp"
#include "ccrweyl/gaussian.hpp"
#include "ccrweyl/grid.hpp"
#include "ccrweyl/symplectic.hpp"

namespace ccrweyl {

std::string to_json(const GaussianElement& f);
GaussianElement gaussian_from_json(const std::string& text);

QuadraticPart quadratic_from_json(const std::string& text);
std::string to_json(const WilliamsonResult& w);

std::string to_json(const GridFunction& f);
GridFunction grid_function_from_json(const std::string& text);
void write_binary(const GridFunction& f, std::ostream& out);
GridFunction read_binary(std::istream& in);

std::string to_json(const OperatorMatrix& m);

/// x, re, im, abs along the first axis with every other coordinate at zero.
std::string slice_csv(const GridFunction& f);

/// Side-by-side heat maps of |f| and arg f on the (x_1, y_1) plane through the origin.
std::string heatmap_svg(const GridFunction& f, const std::string& title);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ccrweyl
