#include "ccrweyl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "ccrweyl/diagnostics.hpp"
#include "ccrweyl/fock.hpp"
#include "ccrweyl/gaussian.hpp"
#include "ccrweyl/grid.hpp"
#include "ccrweyl/matrix_units.hpp"
#include "ccrweyl/spectral.hpp"
#include "ccrweyl/symplectic.hpp"

namespace ccrweyl {

namespace {

constexpr double kClosedForm = 1e-10;

class SuiteRun {
  public:
    SuiteRun(std::string suite, Report& report) : suite_(std::move(suite)), report_(report) {}

    void check(std::string name, std::string identity, double residual, double tolerance) {
        const bool ok = std::isfinite(residual) && residual <= tolerance;
        report_.checks.push_back({suite_, std::move(name), std::move(identity), residual, tolerance, ok});
    }

  private:
    std::string suite_;
    Report& report_;
};

double relative(Complex a, Complex b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Largest componentwise deviation, scaled as in approx_equal.
double gaussian_distance(const GaussianElement& f, const GaussianElement& h) {
    const double c = relative(f.coefficient(), h.coefficient());
    const double qs = std::max({1.0, f.quadratic().cwiseAbs().maxCoeff(), h.quadratic().cwiseAbs().maxCoeff()});
    const double ls = std::max({1.0, f.linear().cwiseAbs().maxCoeff(), h.linear().cwiseAbs().maxCoeff()});
    const double q = (f.quadratic() - h.quadratic()).cwiseAbs().maxCoeff() / qs;
    const double l = (f.linear() - h.linear()).cwiseAbs().maxCoeff() / ls;
    return std::max({c, q, l});
}

Complex random_disc(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    while (true) {
        const Complex z(u(rng), u(rng));
        if (std::abs(z) <= radius) return z;
    }
}

// Hermitian-or-not Gaussian with Re Q comfortably positive definite.
GaussianElement random_gaussian(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int dim = 2 * n;
    RealMatrix a(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) a(r, c) = 0.3 * u(rng);
    RealMatrix b(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) b(r, c) = 0.1 * u(rng);
    const RealMatrix re = 0.25 * RealMatrix::Identity(dim, dim) + a * a.transpose();
    const RealMatrix im = 0.5 * (b + b.transpose());
    ComplexMatrix q = re.cast<Complex>() + kI * im.cast<Complex>();
    ComplexVector l(dim);
    for (int i = 0; i < dim; ++i) l[i] = Complex(0.3 * u(rng), 0.5 * u(rng));
    return GaussianElement(Complex(1.0 + 0.5 * u(rng), 0.5 * u(rng)), q, l);
}

void units_suite(const RunConfig& cfg, const PhaseGrid& grid, std::mt19937_64& rng, Report& report) {
    SuiteRun run("units", report);
    const double tol = cfg.tol > 0.0 ? cfg.tol : 2e-4;
    const UnitRelationReport rel = verify_matrix_unit_relations(4, grid, tol);
    for (const auto& r : rel.relations)
        run.check(fmt::format("g_{{{},{}}}g_{{{},{}}}", r.j, r.k, r.l, r.m), "g_{j,k}g_{l,m}=delta_{k,l}g_{j,m}",
                  r.deviation, tol);
    run.check("adjoint", "g_{k,l}*=g_{l,k}", rel.adjoint_deviation, tol);

    for (int trial = 0; trial < 20; ++trial) {
        const Complex z = random_disc(rng, 1.0), w = random_disc(rng, 1.0);
        const Complex z2 = random_disc(rng, 1.0), w2 = random_disc(rng, 1.0);
        const GaussianElement lhs = product(coherent_kernel(z, w).element, coherent_kernel(z2, w2).element);
        const GaussianElement rhs = coherent_kernel(z, w2).element.scaled(std::exp(w * z2));
        run.check(fmt::format("generating #{}", trial), "g_{z,w}g_{z',w'}=e^{wz'}g_{z,w'}", gaussian_distance(lhs, rhs),
                  kClosedForm);
    }

    double worst = 0.0;
    double worst_trace = 0.0;
    const double step = 0.37;
    for (int k = 0; k <= kDefaultUnitCutoff; ++k)
        for (int l = 0; l <= kDefaultUnitCutoff; ++l) {
            const PolyGaussian p = matrix_unit(k, l);
            for (double s = -4.0; s <= 4.0; s += step)
                for (double t = -4.0; t <= 4.0; t += step)
                    worst = std::max(worst, std::abs(p(s, t) - matrix_unit_value(k, l, s, t)));
            worst_trace = std::max(worst_trace, std::abs(kTwoPi * p(0.0, 0.0) - (k == l ? 1.0 : 0.0)));
        }
    run.check("closed form vs Laguerre", "g_{k,l}=(k!l!)^{-1/2}d_z^k d_w^l g_{z,w}", worst * kTwoPi, kClosedForm);
    run.check("unit traces", "tr g_{k,l}=delta_{k,l}", worst_trace, kClosedForm);
}

void gaussian_suite(const RunConfig& cfg, const PhaseGrid& grid, std::mt19937_64& rng, Report& report) {
    SuiteRun run("gaussian", report);
    const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-4;
    const GaussianElement g = vn_projection(1);
    run.check("closed form", "g g=g", gaussian_distance(product(g, g), g), 1e-12);
    const GridFunction gs = evaluate(g, grid);
    run.check("quadrature", "g g=g", relative_l1_distance(twisted_convolve(gs, gs), gs), tol);

    std::uniform_real_distribution<double> width(0.2, 5.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double a = width(rng), b = width(rng);
        const GaussianElement expected =
            g_gamma((a + b) / (1.0 + a * b)).scaled(4.0 * kPi * a * b / (a + b));
        run.check(fmt::format("alpha={:.6f} beta={:.6f}", a, b),
                  "g_alpha g_beta=(4 pi alpha beta/(alpha+beta)) g_{(alpha+beta)/(1+alpha beta)}",
                  gaussian_distance(product(g_gamma(a), g_gamma(b)), expected), kClosedForm);
    }
    {
        const double a = 0.7, b = 1.6;
        const GridFunction prod = twisted_convolve(evaluate(g_gamma(a), grid), evaluate(g_gamma(b), grid));
        const GridFunction expected =
            evaluate(g_gamma((a + b) / (1.0 + a * b)).scaled(4.0 * kPi * a * b / (a + b)), grid);
        run.check("quadrature alpha=0.7 beta=1.6",
                  "g_alpha g_beta=(4 pi alpha beta/(alpha+beta)) g_{(alpha+beta)/(1+alpha beta)}",
                  relative_l1_distance(prod, expected), tol);
    }

    std::uniform_real_distribution<double> shift(-3.0, 3.0);
    for (int trial = 0; trial < 10; ++trial) {
        RealVector v(2);
        v << shift(rng), shift(rng);
        const GaussianElement lhs = product(g, multiplier(Side::Left, WeylShift::unitary(v), g));
        const GaussianElement rhs = g.scaled(std::exp(-0.25 * v.squaredNorm()));
        run.check(fmt::format("x={:.6f} y={:.6f}", v[0], v[1]), "g e^{i(xp+yq)} g=e^{-(x^2+y^2)/4} g",
                  gaussian_distance(lhs, rhs), kClosedForm);
    }
    {
        RealVector v(2);
        v << 8 * grid.spacing(), -5 * grid.spacing();
        const GridFunction lhs = twisted_convolve(gs, weyl_multiplier(Side::Left, v, gs));
        run.check("quadrature, grid-aligned shift", "g e^{i(xp+yq)} g=e^{-(x^2+y^2)/4} g",
                  relative_l1_distance(lhs, gs.scaled(std::exp(-0.25 * v.squaredNorm()))), tol);
    }

    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + trial % 2;
        const GaussianElement f = random_gaussian(rng, n), h = random_gaussian(rng, n), k = random_gaussian(rng, n);
        run.check(fmt::format("associativity #{} (n={})", trial, n), "(f h) k=f (h k)",
                  gaussian_distance(product(product(f, h), k), product(f, product(h, k))), kClosedForm);
        run.check(fmt::format("involution #{} (n={})", trial, n), "(f h)*=h* f*",
                  gaussian_distance(involution(product(f, h)), product(involution(h), involution(f))), kClosedForm);

        RealVector v(2 * n), w(2 * n);
        for (int i = 0; i < 2 * n; ++i) {
            v[i] = shift(rng);
            w[i] = shift(rng);
        }
        const SymplecticSpace space(n);
        const GaussianElement twice =
            multiplier(Side::Left, WeylShift::unitary(v), multiplier(Side::Left, WeylShift::unitary(w), f));
        const GaussianElement once = multiplier(Side::Left, WeylShift::unitary(v + w), f)
                                         .scaled(std::polar(1.0, -0.5 * symplectic_form(v, w, space)));
        run.check(fmt::format("Weyl relation #{} (n={})", trial, n), "U(v)U(v')=e^{-i sigma(v,v')/2}U(v+v')",
                  gaussian_distance(twice, once), kClosedForm);
    }
}

void spectral_suite(const RunConfig& cfg, const PhaseGrid& grid, std::mt19937_64& rng, Report& report) {
    SuiteRun run("spectral", report);
    const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-4;
    for (double gamma : {0.5, 1.0, 2.0}) {
        run.check(fmt::format("gamma={} closed form", gamma), "tr(g_gamma)=2 pi",
                  relative(trace_gaussian(g_gamma(gamma)), kTwoPi), kClosedForm);
        const OperatorMatrix m = represent(g_gamma(gamma), FockTruncation(40), grid);
        run.check(fmt::format("gamma={} Fock trace of samples", gamma), "tr(g_gamma)=2 pi",
                  relative(m.entries.trace(), kTwoPi), tol);
    }

    int disagreements = 0;
    for (int k = 1; k <= 30; ++k) {
        const double gamma = k / 10.0;
        if (free_state_matrix(gamma).positive_semidefinite != is_positive(g_gamma(gamma))) ++disagreements;
    }
    run.check("gamma=0.1..3.0", "S(gamma)>=0 <=> gamma<=1", disagreements, 0.0);

    std::uniform_real_distribution<double> theta_dist(0.2, 1.5);
    for (int r = 2; r <= 4; ++r) {
        const double theta = theta_dist(rng);
        const GaussianElement base = g_gamma(std::tanh(theta));
        GaussianElement repeated = base;
        for (int i = 1; i < r; ++i) repeated = product(repeated, base);
        run.check(fmt::format("r={} theta={:.6f}", r, theta), "g_{tanh theta}^r via sinh",
                  gaussian_distance(power(base, r), repeated), kClosedForm);
    }

    {
        const PhaseGrid wide(1, 16.0, 128);
        const auto result = integral_representation_check(3.0, wide);
        run.check("gamma=3", "g_gamma=(2 gamma/(gamma-1)) int e^{-mu|z|^2} e^{-conj(z)a*} g e^{za} d^2z",
                  result.residual, cfg.tol > 0.0 ? cfg.tol : 1e-3);
    }

    for (int trial = 0; trial < 3; ++trial) {
        const GaussianElement f = random_gaussian(rng, 1);
        const Complex lhs = trace_gaussian(product(involution(f), f));
        const GridFunction fs = evaluate(f, grid);
        const double rhs = kTwoPi * l2_inner(fs, fs).real();
        run.check(fmt::format("random #{}", trial), "tr(f* f)=(2 pi)^n int |f|^2", relative(lhs, rhs), tol);
    }

    {
        const SpectralData sd = spectrum_single(0.5, 40);
        const int cutoff = spectral_cutoff(1.0 / 3.0, 1e-8);
        const GridFunction target = evaluate(g_gamma(0.5), grid);
        run.check(fmt::format("gamma=0.5 K={}", cutoff), "g_gamma=sum_k lambda_k g_{k,k}",
                  relative_l1_distance(partial_sum(sd, cutoff, grid), target), tol);
    }
}

void fock_suite(const RunConfig& cfg, const PhaseGrid& grid, std::mt19937_64& rng, Report& report) {
    SuiteRun run("fock", report);
    const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-6;
    const FockTruncation trunc(cfg.levels);
    const int d = cfg.levels;
    {
        const OperatorMatrix m = represent(vn_projection(1), trunc, grid);
        ComplexMatrix expected = ComplexMatrix::Zero(d, d);
        expected(0, 0) = 1.0;
        run.check("vacuum", "pi(g)=|0><0|", (m.entries - expected).cwiseAbs().maxCoeff(), tol);
    }
    {
        const OperatorMatrix m = represent(g_gamma(0.5), trunc, grid);
        const SpectralData sd = spectrum_single(0.5, d - 1);
        double worst = 0.0;
        for (int k = 0; k < std::min(d, 9); ++k)
            worst = std::max(worst, std::abs(m.entries(k, k) - sd.entries[k].eigenvalue));
        run.check("gamma=0.5", "pi(g_gamma)|k>=lambda_k|k>", worst, tol);
    }
    {
        ScopedWarningHandler quiet([](const std::string&) {});
        const FockTruncation wide(2 * d);
        const SymplecticSpace space(1);
        std::uniform_real_distribution<double> u(-0.8, 0.8);
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            RealVector v(2), w(2);
            v << u(rng), u(rng);
            w << u(rng), u(rng);
            const ComplexMatrix lhs = displacement_matrix(v, wide).entries * displacement_matrix(w, wide).entries;
            const ComplexMatrix rhs =
                std::polar(1.0, -0.5 * symplectic_form(v, w, space)) * displacement_matrix(v + w, wide).entries;
            worst = std::max(worst, (lhs - rhs).topLeftCorner(d / 2, d / 2).cwiseAbs().maxCoeff());
        }
        run.check("10 random pairs", "U(v)U(v')=e^{-i sigma(v,v')/2}U(v+v')", worst, 1e-10);
    }
    for (double gamma : {0.5, 3.0})
        run.check(fmt::format("gamma={}", gamma), "K(xi,xi')=sum_k lambda_k h_k(xi) h_k(xi')",
                  mehler_check(gamma, FockTruncation(std::max(d, 48))), 1e-8);
    {
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const Complex z = random_disc(rng, 0.6), w = random_disc(rng, 0.6);
            const Complex z2 = random_disc(rng, 0.6), w2 = random_disc(rng, 0.6);
            const GaussianElement f = coherent_kernel(z, w).element, h = coherent_kernel(z2, w2).element;
            const ComplexMatrix lhs = represent(product(f, h), trunc, grid).entries;
            const ComplexMatrix rhs = represent(f, trunc, grid).entries * represent(h, trunc, grid).entries;
            worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
        }
        run.check("5 coherent kernel pairs", "pi(f h)=pi(f)pi(h)", worst, tol);
    }
}

}  // namespace

bool Report::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string Report::to_text() const {
    std::string out;
    std::size_t failed = 0;
    for (const auto& c : checks) {
        if (!c.passed) ++failed;
        out += fmt::format("{}  {:<9} {:<34} residual={:.3e} tol={:.1e}  [{}]\n", c.passed ? "PASS" : "FAIL", c.suite,
                           c.name, c.residual, c.tolerance, c.identity);
    }
    out += fmt::format("{} checks, {} failed\n", checks.size(), failed);
    return out;
}

std::string Report::to_json() const {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& c : checks)
        items.push_back({{"suite", c.suite},
                         {"name", c.name},
                         {"identity", c.identity},
                         {"residual", c.residual},
                         {"tolerance", c.tolerance},
                         {"passed", c.passed}});
    nlohmann::json out = {{"schema", 1}, {"passed", passed()}, {"checks", items}};
    return out.dump(2) + "\n";
}

std::string Report::to_csv() const {
    std::string out = "suite,name,identity,residual,tolerance,passed\n";
    auto quoted = [](const std::string& s) {
        std::string q = "\"";
        for (char ch : s) {
            if (ch == '"') q += '"';
            q += ch;
        }
        return q + "\"";
    };
    for (const auto& c : checks)
        out += fmt::format("{},{},{},{:.17g},{:.17g},{}\n", c.suite, quoted(c.name), quoted(c.identity), c.residual,
                           c.tolerance, c.passed ? "true" : "false");
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"units", "gaussian", "spectral", "fock"};
    return names;
}

Report run_suite(const std::string& suite, const RunConfig& config) {
    if (config.tol < 0.0) throw std::invalid_argument("tolerance must be positive");
    const PhaseGrid grid(1, config.grid_l, config.grid_n);
    (void)FockTruncation(config.levels);
    Report report;
    std::vector<std::string> selected;
    if (suite == "all") {
        selected = suite_names();
    } else if (std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end()) {
        selected = {suite};
    } else {
        throw std::invalid_argument(fmt::format("unknown suite \"{}\"", suite));
    }
    for (const auto& name : selected) {
        // Each suite draws from its own stream so results do not depend on which suites ran.
        const auto index = std::find(suite_names().begin(), suite_names().end(), name) - suite_names().begin();
        std::mt19937_64 rng(config.seed * 4 + static_cast<std::uint64_t>(index));
        if (name == "units") units_suite(config, grid, rng, report);
        if (name == "gaussian") gaussian_suite(config, grid, rng, report);
        if (name == "spectral") spectral_suite(config, grid, rng, report);
        if (name == "fock") fock_suite(config, grid, rng, report);
    }
    return report;
}

}  // namespace ccrweyl
