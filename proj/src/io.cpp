#include "ccrweyl/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace ccrweyl {

namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'C', 'C', 'R', 'G'};
constexpr std::uint32_t kBinaryVersion = 1;

[[noreturn]] void bad(const std::string& what) { throw std::runtime_error("malformed input: " + what); }

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        bad(e.what());
    }
}

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) bad(fmt::format("missing field \"{}\"", name));
    return j.at(name);
}

void check_schema(const json& j) {
    if (j.contains("schema") && j.at("schema") != 1) bad("unsupported schema version");
}

Complex complex_from(const json& j, const std::string& what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    bad(fmt::format("\"{}\" must be a number or a [re, im] pair", what));
}

json complex_to(Complex z) { return json::array({z.real(), z.imag()}); }

int positive_int(const json& j, const char* name) {
    const json& v = field(j, name);
    if (!v.is_number_integer() || v.get<int>() < 1) bad(fmt::format("\"{}\" must be a positive integer", name));
    return v.get<int>();
}

json interleaved(const Complex* data, std::size_t count) {
    json out = json::array();
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(data[i].real());
        out.push_back(data[i].imag());
    }
    return out;
}

template <typename T>
void put(std::ostream& out, T value) {
    static_assert(std::endian::native == std::endian::little, "binary IO assumes a little-endian host");
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    T value{};
    if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) bad("truncated binary grid file");
    return value;
}

}  // namespace

std::string to_json(const GaussianElement& f) {
    const auto dim = f.linear().size();
    json q = json::array();
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) q.push_back(complex_to(f.quadratic()(r, c)));
    json l = json::array();
    for (Eigen::Index i = 0; i < dim; ++i) l.push_back(complex_to(f.linear()[i]));
    json out = {{"schema", 1}, {"n", f.freedoms()}, {"c", complex_to(f.coefficient())}, {"Q", q}, {"l", l}};
    return out.dump(2);
}

GaussianElement gaussian_from_json(const std::string& text) {
    const json j = parse(text);
    check_schema(j);
    const int n = j.contains("n") ? positive_int(j, "n") : 1;
    if (j.contains("gamma")) {
        const Complex gamma = complex_from(j.at("gamma"), "gamma");
        const Complex scale = j.contains("scale") ? complex_from(j.at("scale"), "scale") : Complex(1.0);
        try {
            return g_gamma(gamma, n).scaled(scale);
        } catch (const std::exception& e) {
            bad(e.what());
        }
    }
    const int dim = 2 * n;
    const json& q = field(j, "Q");
    const json& l = field(j, "l");
    if (!q.is_array() || static_cast<int>(q.size()) != dim * dim) bad(fmt::format("\"Q\" must hold {} entries", dim * dim));
    if (!l.is_array() || static_cast<int>(l.size()) != dim) bad(fmt::format("\"l\" must hold {} entries", dim));
    ComplexMatrix qm(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) qm(r, c) = complex_from(q[static_cast<std::size_t>(r) * dim + c], "Q");
    ComplexVector lv(dim);
    for (int i = 0; i < dim; ++i) lv[i] = complex_from(l[i], "l");
    try {
        return GaussianElement(complex_from(field(j, "c"), "c"), qm, lv);
    } catch (const std::invalid_argument& e) {
        bad(e.what());
    }
}

QuadraticPart quadratic_from_json(const std::string& text) {
    const json j = parse(text);
    check_schema(j);
    const int n = positive_int(j, "n");
    const int dim = 2 * n;
    const json& m = field(j, "matrix");
    if (!m.is_array() || static_cast<int>(m.size()) != dim * dim) bad(fmt::format("\"matrix\" must hold {} entries", dim * dim));
    RealMatrix k(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            const json& v = m[static_cast<std::size_t>(r) * dim + c];
            if (!v.is_number()) bad("\"matrix\" entries must be numbers");
            k(r, c) = v.get<double>();
        }
    try {
        return QuadraticPart(k);
    } catch (const std::invalid_argument& e) {
        bad(e.what());
    }
}

std::string to_json(const WilliamsonResult& w) {
    json t = json::array();
    for (Eigen::Index r = 0; r < w.transform.rows(); ++r)
        for (Eigen::Index c = 0; c < w.transform.cols(); ++c) t.push_back(w.transform(r, c));
    json out = {{"schema", 1}, {"n", w.gammas.size()}, {"gammas", w.gammas}, {"T", t}};
    return out.dump(2);
}

std::string to_json(const GridFunction& f) {
    const PhaseGrid& g = f.grid();
    json out = {{"schema", 1},
                {"grid", {{"n", g.freedoms()}, {"L", g.half_extent()}, {"N", g.samples()}}},
                {"values", interleaved(f.values().data(), f.values().size())}};
    return out.dump();
}

GridFunction grid_function_from_json(const std::string& text) {
    const json j = parse(text);
    check_schema(j);
    const json& g = field(j, "grid");
    const json& extent = field(g, "L");
    if (!extent.is_number()) bad("\"L\" must be a number");
    const PhaseGrid grid = [&] {
        try {
            return PhaseGrid(positive_int(g, "n"), extent.get<double>(), positive_int(g, "N"));
        } catch (const std::invalid_argument& e) {
            bad(e.what());
        }
    }();
    const json& v = field(j, "values");
    if (!v.is_array() || v.size() != 2 * grid.size()) bad(fmt::format("\"values\" must hold {} numbers", 2 * grid.size()));
    std::vector<Complex> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!v[2 * i].is_number() || !v[2 * i + 1].is_number()) bad("\"values\" entries must be numbers");
        values[i] = {v[2 * i].get<double>(), v[2 * i + 1].get<double>()};
    }
    return GridFunction(grid, std::move(values));
}

void write_binary(const GridFunction& f, std::ostream& out) {
    out.write(kMagic, sizeof kMagic);
    put<std::uint32_t>(out, kBinaryVersion);
    put<std::int32_t>(out, f.grid().freedoms());
    put<std::int32_t>(out, f.grid().samples());
    put<double>(out, f.grid().half_extent());
    for (const auto& v : f.values()) {
        put<double>(out, v.real());
        put<double>(out, v.imag());
    }
    if (!out) throw std::runtime_error("failed to write binary grid data");
}

GridFunction read_binary(std::istream& in) {
    char magic[4];
    if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) bad("not a binary grid file");
    if (get<std::uint32_t>(in) != kBinaryVersion) bad("unsupported binary grid version");
    const auto n = get<std::int32_t>(in);
    const auto samples = get<std::int32_t>(in);
    const auto extent = get<double>(in);
    const PhaseGrid grid = [&] {
        try {
            return PhaseGrid(n, extent, samples);
        } catch (const std::invalid_argument& e) {
            bad(e.what());
        }
    }();
    std::vector<Complex> values(grid.size());
    for (auto& v : values) {
        const double re = get<double>(in);
        const double im = get<double>(in);
        v = {re, im};
    }
    return GridFunction(grid, std::move(values));
}

std::string to_json(const OperatorMatrix& m) {
    json out = {{"schema", 1},
                {"modes", m.modes},
                {"levels", m.levels_per_mode},
                {"dim", m.entries.rows()},
                {"edge_norm", m.edge_norm}};
    // Row-major.
    const ComplexMatrix rows = m.entries.transpose();
    out["entries"] = interleaved(rows.data(), static_cast<std::size_t>(rows.size()));
    return out.dump();
}

std::string slice_csv(const GridFunction& f) {
    const PhaseGrid& g = f.grid();
    std::string out = "x,re,im,abs\n";
    std::vector<int> idx(g.axes(), g.origin_index());
    for (int i = 0; i < g.samples(); ++i) {
        idx[0] = i;
        const Complex v = f[g.linear(idx)];
        out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", g.coordinate(i), v.real(), v.imag(), std::abs(v));
    }
    return out;
}

std::string heatmap_svg(const GridFunction& f, const std::string& title) {
    const PhaseGrid& g = f.grid();
    const int n = g.samples();
    const int stride = std::max(1, n / 128);
    const int cells = n / stride;
    const int px = std::max(2, 384 / cells);
    const int panel = cells * px;
    std::vector<int> idx(g.axes(), g.origin_index());
    const int y_axis = g.freedoms();

    double peak = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            idx[0] = i;
            idx[y_axis] = j;
            peak = std::max(peak, std::abs(f[g.linear(idx)]));
        }
    if (peak == 0.0) peak = 1.0;

    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" shape-rendering=\"crispEdges\">\n"
        "<text x=\"4\" y=\"16\" font-family=\"monospace\" font-size=\"13\">{}  |f| (max {:.4g})  and  arg f</text>\n",
        2 * panel + 30, panel + 30, title, peak);
    for (int ci = 0; ci < cells; ++ci)
        for (int cj = 0; cj < cells; ++cj) {
            idx[0] = ci * stride;
            idx[y_axis] = cj * stride;
            const Complex v = f[g.linear(idx)];
            const double mag = std::abs(v) / peak;
            const int shade = static_cast<int>(std::lround(255.0 * std::sqrt(mag)));
            const double hue = std::arg(v) / kTwoPi * 360.0 + 180.0;
            // x to the right, y upwards
            const int sx = 10 + ci * px;
            const int sy = 20 + (cells - 1 - cj) * px;
            out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"rgb({},{},{})\"/>\n", sx, sy, px,
                               px, shade, shade, std::min(255, shade + 40));
            out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"hsl({:.0f},80%,{:.0f}%)\"/>\n",
                               sx + panel + 10, sy, px, px, hue, 10.0 + 50.0 * std::sqrt(mag));
        }
    out += "</svg>\n";
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace ccrweyl
