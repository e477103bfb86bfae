// ccrweyl: verification suites, spectra and sampled output for the Weyl algebra toolkit.
//
// Exit codes: 0 success, 1 a checked identity failed, 2 usage or input error.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "ccrweyl/fock.hpp"
#include "ccrweyl/gaussian.hpp"
#include "ccrweyl/grid.hpp"
#include "ccrweyl/io.hpp"
#include "ccrweyl/matrix_units.hpp"
#include "ccrweyl/spectral.hpp"
#include "ccrweyl/symplectic.hpp"
#include "ccrweyl/verify.hpp"

namespace {

using namespace ccrweyl;

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
    RunConfig run;
    std::string format = "text";
    std::string out_dir;
};

PhaseGrid grid_for(const Options& o, int freedoms) { return PhaseGrid(freedoms, o.run.grid_l, o.run.grid_n); }

// Writes to out_dir/name when an output directory is set, else to stdout.
void emit(const Options& o, const std::string& name, const std::string& text) {
    if (o.out_dir.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::create_directories(o.out_dir);
    write_text_file((std::filesystem::path(o.out_dir) / name).string(), text);
}

void write_binary_file(const Options& o, const std::string& name, const GridFunction& f) {
    std::filesystem::create_directories(o.out_dir.empty() ? "." : o.out_dir);
    const auto path = std::filesystem::path(o.out_dir.empty() ? "." : o.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_binary(f, out);
}

std::string complex_cell(Complex z) { return fmt::format("{:.17g},{:.17g}", z.real() + 0.0, z.imag() + 0.0); }

std::string spectrum_table(const SpectralData& sd, const std::string& format) {
    if (format == "json") {
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& e : sd.entries)
            entries.push_back({{"levels", e.levels}, {"eigenvalue", {e.eigenvalue.real(), e.eigenvalue.imag()}}});
        nlohmann::json ratios = nlohmann::json::array();
        for (const auto& r : sd.ratios) ratios.push_back({r.real(), r.imag()});
        const nlohmann::json out = {{"schema", 1},
                                    {"prefactor", {sd.prefactor.real(), sd.prefactor.imag()}},
                                    {"ratios", ratios},
                                    {"cutoff", sd.cutoff},
                                    {"entries", entries}};
        return out.dump(2) + "\n";
    }
    const std::size_t modes = sd.ratios.size();
    std::string out;
    if (modes == 1) {
        out = "k,re,im\n";
    } else {
        for (std::size_t j = 0; j < modes; ++j) out += fmt::format("k{},", j + 1);
        out += "re,im\n";
    }
    for (const auto& e : sd.entries) {
        for (int l : e.levels) out += fmt::format("{},", l);
        out += complex_cell(e.eigenvalue) + "\n";
    }
    return out;
}

std::string spectrum_svg(const SpectralData& sd) {
    const int bars = static_cast<int>(sd.entries.size());
    const int width = std::max(200, 12 * bars + 60);
    const int height = 240;
    double top = 0.0;
    for (const auto& e : sd.entries) top = std::max(top, std::abs(e.eigenvalue));
    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">\n"
        "<text x=\"4\" y=\"14\" font-family=\"monospace\" font-size=\"12\">|lambda| (log scale, 16 decades)</text>\n",
        width, height);
    for (int i = 0; i < bars; ++i) {
        const double mag = std::abs(sd.entries[i].eigenvalue);
        const double decades = mag > 0.0 ? std::clamp(16.0 + std::log10(mag / top), 0.0, 16.0) : 0.0;
        const int h = static_cast<int>(std::lround(decades / 16.0 * (height - 40)));
        const bool negative = sd.entries[i].eigenvalue.real() < 0.0;
        out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"10\" height=\"{}\" fill=\"{}\"/>\n", 30 + 12 * i,
                           height - 20 - h, h, negative ? "#c0392b" : "#2c7fb8");
    }
    out += "</svg>\n";
    return out;
}

int report_exit(const Report& report, const Options& o) {
    if (o.format == "json") {
        emit(o, "report.json", report.to_json());
    } else if (o.format == "csv") {
        emit(o, "report.csv", report.to_csv());
    } else {
        emit(o, "report.txt", report.to_text());
    }
    return report.passed() ? 0 : kExitFailed;
}

GaussianElement load_element(const std::string& path) { return gaussian_from_json(read_text_file(path)); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weyl algebra toolkit: twisted convolution, Gaussian calculus, spectra"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--grid-L", o.run.grid_l, "Grid half-extent L")->check(CLI::PositiveNumber);
    app.add_option("--grid-N", o.run.grid_n, "Samples per axis (even, >= 8)");
    app.add_option("--dim", o.run.levels, "Fock truncation per mode");
    app.add_option("--tol", o.run.tol, "Quadrature tolerance override")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.run.seed, "Random seed");
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--out-dir", o.out_dir, "Write files here instead of stdout");

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "Run invariant suites");
    verify->add_option("--suite", suite, "units|gaussian|spectral|fock|all");

    int max_index = 4;
    auto* verify_units = app.add_subcommand("verify-units", "Matrix-unit product relations up to an index");
    verify_units->add_option("--max", max_index, "Largest unit index")->check(CLI::NonNegativeNumber);

    double gamma_re = 1.0;
    double gamma_im = 0.0;
    std::string element_path;
    std::optional<int> cutoff;
    bool plot = false;
    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalue table of g_gamma or a Hermitian Gaussian");
    auto* gamma_opt = spectrum->add_option("--gamma", gamma_re, "Real part of gamma");
    spectrum->add_option("--gamma-im", gamma_im, "Imaginary part of gamma");
    auto* element_opt = spectrum->add_option("--element", element_path, "Gaussian element JSON")->check(CLI::ExistingFile);
    gamma_opt->excludes(element_opt);
    spectrum->add_option("--cutoff", cutoff, "Largest level per mode");
    spectrum->add_flag("--plot", plot, "Also write spectrum.svg");

    auto* positivity = app.add_subcommand("positivity", "Positivity of a Hermitian Gaussian");
    positivity->add_option("--element", element_path, "Gaussian element JSON")->required()->check(CLI::ExistingFile);

    std::string k_path;
    auto* williamson = app.add_subcommand("williamson", "Williamson normal form of a quadratic part");
    williamson->add_option("--input", k_path, "Quadratic part JSON")->required()->check(CLI::ExistingFile);

    int unit_k = 0;
    int unit_l = 0;
    bool emit_grid = false;
    bool emit_plot = false;
    auto* unit = app.add_subcommand("matrix-unit", "Coefficients and samples of g_{k,l}");
    unit->add_option("--k", unit_k)->required()->check(CLI::NonNegativeNumber);
    unit->add_option("--l", unit_l)->required()->check(CLI::NonNegativeNumber);
    unit->add_flag("--emit-grid", emit_grid, "Write grid samples (JSON and binary)");
    unit->add_flag("--emit-plot", emit_plot, "Write an SVG heat map");

    auto* emit_cmd = app.add_subcommand("emit", "Sample a Gaussian element: grid files, slice CSV, heat map");
    emit_cmd->add_option("--element", element_path, "Gaussian element JSON")->required()->check(CLI::ExistingFile);

    auto* fock = app.add_subcommand("fock", "Truncated Fock matrix of a Gaussian element");
    fock->add_option("--element", element_path, "Gaussian element JSON")->required()->check(CLI::ExistingFile);

    double gamma = 0.5;
    auto* mehler = app.add_subcommand("mehler", "Hermite expansion of the Schrodinger kernel of g_gamma");
    mehler->add_option("--gamma", gamma)->required()->check(CLI::PositiveNumber);

    auto* integral = app.add_subcommand("check-integral-rep", "Coherent-state integral representation of g_gamma");
    integral->add_option("--gamma", gamma_re)->required();
    integral->add_option("--gamma-im", gamma_im);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (o.run.grid_n < 8 || o.run.grid_n % 2 != 0) throw std::invalid_argument("--grid-N must be even and at least 8");
        if (o.run.levels < 2) throw std::invalid_argument("--dim must be at least 2");

        if (*verify) return report_exit(run_suite(suite, o.run), o);

        if (*verify_units) {
            const UnitRelationReport rel =
                verify_matrix_unit_relations(max_index, grid_for(o, 1), o.run.tol > 0.0 ? o.run.tol : 2e-4);
            Report report;
            for (const auto& r : rel.relations)
                report.checks.push_back({"units", fmt::format("g_{{{},{}}}g_{{{},{}}}", r.j, r.k, r.l, r.m),
                                         "g_{j,k}g_{l,m}=delta_{k,l}g_{j,m}", r.deviation, rel.tolerance, r.passed});
            report.checks.push_back({"units", "adjoint", "g_{k,l}*=g_{l,k}", rel.adjoint_deviation, rel.tolerance,
                                     rel.adjoint_deviation <= rel.tolerance});
            return report_exit(report, o);
        }

        if (*spectrum) {
            const std::string format = o.format == "json" ? "json" : "csv";
            SpectralData sd;
            if (!element_path.empty()) {
                const GaussianElement f = load_element(element_path);
                int k = cutoff.value_or(-1);
                if (k < 0) {
                    k = 0;
                    for (const auto& r : spectrum_gaussian(f, 0).ratios)
                        k = std::max(k, spectral_cutoff(std::abs(r)));
                }
                sd = spectrum_gaussian(f, k);
            } else {
                const Complex g(gamma_re, gamma_im);
                sd = spectrum_single(g, cutoff.value_or(spectral_cutoff(std::abs(cayley_ratio(g)))));
            }
            emit(o, format == "json" ? "spectrum.json" : "spectrum.csv", spectrum_table(sd, format));
            if (plot) {
                Options files = o;
                if (files.out_dir.empty()) files.out_dir = ".";
                emit(files, "spectrum.svg", spectrum_svg(sd));
            }
            return 0;
        }

        if (*positivity) {
            const GaussianElement f = load_element(element_path);
            const bool positive = is_positive(f);
            nlohmann::json out = {{"schema", 1}, {"positive", positive}};
            if (f.is_hermitian(1e-10)) out["gammas"] = symplectic_gammas(QuadraticPart(f.quadratic().real()));
            emit(o, "positivity.json", out.dump(2) + "\n");
            return 0;
        }

        if (*williamson) {
            emit(o, "williamson.json", to_json(williamson_normalize(quadratic_from_json(read_text_file(k_path)))) + "\n");
            return 0;
        }

        if (*unit) {
            const int cut = std::max({kDefaultUnitCutoff, unit_k, unit_l});
            const PolyGaussian p = matrix_unit(unit_k, unit_l, cut);
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& [powers, coef] : p.terms())
                terms.push_back({{"u", powers.first}, {"ubar", powers.second}, {"coef", {coef.real(), coef.imag()}}});
            const nlohmann::json out = {{"schema", 1}, {"k", unit_k}, {"l", unit_l}, {"terms", terms}};
            emit(o, fmt::format("unit_{}_{}.json", unit_k, unit_l), out.dump(2) + "\n");
            if (emit_grid || emit_plot) {
                Options files = o;
                if (files.out_dir.empty()) files.out_dir = ".";
                const GridFunction samples = sample_matrix_unit(unit_k, unit_l, grid_for(o, 1));
                if (emit_grid) {
                    emit(files, fmt::format("unit_{}_{}.grid.json", unit_k, unit_l), to_json(samples) + "\n");
                    write_binary_file(files, fmt::format("unit_{}_{}.grid.bin", unit_k, unit_l), samples);
                }
                if (emit_plot)
                    emit(files, fmt::format("unit_{}_{}.svg", unit_k, unit_l),
                         heatmap_svg(samples, fmt::format("g_{{{},{}}}", unit_k, unit_l)));
            }
            return 0;
        }

        if (*emit_cmd) {
            const GaussianElement f = load_element(element_path);
            const GridFunction samples = evaluate(f, grid_for(o, f.freedoms()));
            Options files = o;
            if (files.out_dir.empty()) files.out_dir = ".";
            emit(files, "element.json", to_json(f) + "\n");
            emit(files, "element.grid.json", to_json(samples) + "\n");
            write_binary_file(files, "element.grid.bin", samples);
            emit(files, "element.slice.csv", slice_csv(samples));
            emit(files, "element.svg", heatmap_svg(samples, "element"));
            return 0;
        }

        if (*fock) {
            const GaussianElement f = load_element(element_path);
            emit(o, "fock.json", to_json(represent(f, FockTruncation(o.run.levels), grid_for(o, f.freedoms()))) + "\n");
            return 0;
        }

        if (*mehler) {
            const double tol = o.run.tol > 0.0 ? o.run.tol : 1e-8;
            Report report;
            const double residual = mehler_check(gamma, FockTruncation(std::max(o.run.levels, 48)));
            report.checks.push_back({"fock", fmt::format("gamma={}", gamma), "K(xi,xi')=sum_k lambda_k h_k(xi) h_k(xi')",
                                     residual, tol, residual <= tol});
            return report_exit(report, o);
        }

        if (*integral) {
            const double tol = o.run.tol > 0.0 ? o.run.tol : 1e-3;
            const auto result = integral_representation_check(Complex(gamma_re, gamma_im), grid_for(o, 1));
            Report report;
            report.checks.push_back({"spectral", fmt::format("gamma=({},{})", gamma_re, gamma_im),
                                     "g_gamma=(2 gamma/(gamma-1)) int e^{-mu|z|^2} e^{-conj(z)a*} g e^{za} d^2z",
                                     result.residual, tol, result.residual <= tol});
            return report_exit(report, o);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
