// Command-line front end: verification suites, transform-bound computations,
// and seeded Monte Carlo experiments with machine-readable reports.
//
// Exit codes: 0 all contracts passed, 1 contract violation, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "pdti/serialize.hpp"

namespace {

using namespace pdti;

Shape parse_shape(const std::string& text) {
    std::vector<std::size_t> modes;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const long v = std::stol(part);
        if (v < 1) throw ParameterError("shape modes must be positive");
        modes.push_back(static_cast<std::size_t>(v));
    }
    return Shape(modes);
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(std::stod(part));
    return out;
}

ThetaSpec parse_theta_grid(const std::string& text) {
    ThetaSpec spec;
    if (text.empty()) return spec;
    std::stringstream ss(text);
    std::string lo, hi, n;
    if (!std::getline(ss, lo, ':') || !std::getline(ss, hi, ':') || !std::getline(ss, n, ':'))
        throw ParameterError("--theta-grid expects lo:hi:npts");
    spec.lo_factor = std::stod(lo);
    spec.hi_factor = std::stod(hi);
    spec.npoints = std::stoi(n);
    if (spec.lo_factor <= 0.0 || spec.hi_factor <= spec.lo_factor || spec.npoints < 2)
        throw ParameterError("--theta-grid needs 0 < lo < hi and npts >= 2");
    return spec;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ParameterError("cannot open output file " + out_path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

GFunction catalog_g(const std::string& label, const TheoremParams& p) {
    if (label == "heinz") return heinz_g(p.m, p.omega);
    if (label == "heinz-plus") return heinz_plus_g(p.m, p.omega);
    if (label == "commutator") return commutator_g(p.nu, p.r0, p.r1);
    if (label == "bks") return bks_g(p.omega);
    if (label == "interp") return interp_g(p.alpha, p.beta, InterpSign::minus);
    if (label == "interp-plus") return interp_g(p.alpha, p.beta, InterpSign::plus);
    throw ParameterError("unknown profile label: " + label);
}

struct CommonOpts {
    std::string shape_text = "2,2";
    std::uint64_t seed = 0;
    std::string out_path;
    std::string format = "json";
};

nlohmann::json resolved_config(const CommonOpts& c, const Shape& shape) {
    return nlohmann::json{
        {"shape", shape.modes()}, {"seed", c.seed}, {"format", c.format}};
}

// --- verify ------------------------------------------------------------------

struct Check {
    std::string name;
    double value;
    double tolerance;
    bool pass;
};

DenseTensor random_general(std::uint64_t seed, const Shape& shape) {
    // Unsymmetrized complex Gaussian, for checks that need non-Hermitian input.
    SamplerConfig cfg{shape, seed, Ensemble::gaussian_hermitian, 0.5, 2.0};
    const DenseTensor h1 = sample_hermitian(cfg);
    const DenseTensor h2 = sample_hermitian(with_trial_seed(cfg, 7, 1));
    return add(h1, Complex(0.0, 1.0) * h2);
}

int run_verify(const CommonOpts& opts) {
    const Shape shape = parse_shape(opts.shape_text);
    const double n2 = static_cast<double>(shape.total()) * shape.total();
    std::vector<Check> checks;
    SamplerConfig herm{shape, opts.seed, Ensemble::gaussian_hermitian, 0.5, 2.0};
    SamplerConfig posdef{shape, opts.seed, Ensemble::positive_definite, 0.5, 2.0};

    {  // Einstein algebra against the unfolding isomorphism
        double worst = 0.0;
        for (std::uint64_t i = 0; i < 20; ++i) {
            const DenseTensor x = random_general(derive_seed(opts.seed, 10, i), shape);
            const DenseTensor y = random_general(derive_seed(opts.seed, 11, i), shape);
            const DenseTensor z = random_general(derive_seed(opts.seed, 12, i), shape);
            const double sc = spectral_norm(x) * spectral_norm(y) * spectral_norm(z) + 1e-30;
            const DenseTensor assoc = subtract(
                einstein_product(einstein_product(x, y), z),
                einstein_product(x, einstein_product(y, z)));
            worst = std::max(worst, spectral_norm(assoc) / sc);
            const Eigen::MatrixXcd mm = unfold(x) * unfold(y);
            worst = std::max(worst, frobenius_norm(subtract(einstein_product(x, y),
                                                            fold(mm, shape))) /
                                        (frobenius_norm(x) * frobenius_norm(y) + 1e-30));
            worst = std::max(worst,
                             std::abs(trace(einstein_product(x, y)) -
                                      trace(einstein_product(y, x))) /
                                 (frobenius_norm(x) * frobenius_norm(y) + 1e-30));
        }
        checks.push_back({"algebra_isomorphism", worst, 1e-12, worst <= 1e-12});
    }
    {  // eigendecomposition invariants
        double worst = 0.0;
        for (std::uint64_t i = 0; i < 20; ++i) {
            const DenseTensor h = sample(with_trial_seed(herm, 13, i));
            const EigenDecomposition d = eigendecompose(h);
            worst = std::max(worst, frobenius_norm(subtract(d.reconstruct(), h)) /
                                        (frobenius_norm(h) + 1e-30));
            DenseTensor psum(shape);
            for (const auto& p : d.projections) psum = add(psum, p);
            worst = std::max(worst,
                             frobenius_norm(subtract(psum, DenseTensor::identity(shape))));
        }
        checks.push_back({"eigendecomposition", worst, 1e-10, worst <= 1e-10});
    }
    {  // Kernel-zero: polynomial symbol vanishing on Sp(A)
        double worst = 0.0;
        for (std::uint64_t i = 0; i < 10; ++i) {
            const DenseTensor a = sample(with_trial_seed(herm, 14, i));
            const DenseTensor b = sample(with_trial_seed(herm, 15, i));
            const EigenDecomposition da = eigendecompose(a), db = eigendecompose(b);
            const std::vector<double> roots = da.eigenvalues;
            BivariateSymbol vanishing([roots](double x, double) {
                Complex prod = 1.0;
                for (double r : roots) prod *= (x - r);
                return prod;
            });
            const DenseTensor x = random_general(derive_seed(opts.seed, 16, i), shape);
            const DenseTensor y = random_general(derive_seed(opts.seed, 17, i), shape);
            worst = std::max(worst,
                             std::abs(kernel_zero_residual(vanishing, da, db, x, y)));
        }
        checks.push_back({"lemma1_kernel_zero", worst, 1e-9, worst <= 1e-9});
    }
    {  // norm estimate against a representation's own Psi-norm bound
        double worst_ratio = 0.0;
        const GFunction g = heinz_g(1, 0.25);
        const FactorizedRepresentation rep = fourier_representation(g, std::log(5.0), 1e-8);
        for (std::uint64_t i = 0; i < 10; ++i) {
            const DenseTensor a = sample(with_trial_seed(posdef, 18, i));
            const DenseTensor b = sample(with_trial_seed(posdef, 19, i));
            const DenseTensor x = random_general(derive_seed(opts.seed, 20, i), shape);
            const DenseTensor tx =
                pdti_apply_quadrature(rep, eigendecompose(a), eigendecompose(b), x);
            worst_ratio = std::max(worst_ratio,
                                   spectral_norm(tx) / (n2 * rep.norm_estimate() *
                                                        spectral_norm(x) + 1e-30));
        }
        checks.push_back({"lemma2_norm_estimate_ratio", worst_ratio, 1.0, worst_ratio <= 1.0});
    }
    {  // homomorphism
        double worst = 0.0;
        for (std::uint64_t i = 0; i < 20; ++i) {
            const DenseTensor a = sample(with_trial_seed(herm, 21, i));
            const DenseTensor b = sample(with_trial_seed(herm, 22, i));
            const EigenDecomposition da = eigendecompose(a), db = eigendecompose(b);
            const DenseTensor x = random_general(derive_seed(opts.seed, 23, i), shape);
            BivariateSymbol s1([](double p, double q) { return Complex(p + 0.5 * q, 0.0); });
            BivariateSymbol s2([](double p, double q) { return Complex(p * q - 1.0, 0.0); });
            worst = std::max(worst, homomorphism_residual(s1, s2, da, db, x) /
                                        (frobenius_norm(x) + 1e-30));
        }
        checks.push_back({"lemma4_homomorphism", worst, 1e-10, worst <= 1e-10});
    }
    {  // one-sided symbols act by left/right multiplication
        double worst = 0.0;
        for (std::uint64_t i = 0; i < 10; ++i) {
            const DenseTensor a = sample(with_trial_seed(herm, 24, i));
            const DenseTensor b = sample(with_trial_seed(herm, 25, i));
            const EigenDecomposition da = eigendecompose(a), db = eigendecompose(b);
            const DenseTensor x = random_general(derive_seed(opts.seed, 26, i), shape);
            auto f = [](double v) { return std::exp(-v * v / 8.0); };
            BivariateSymbol left_sym([f](double p, double) { return Complex(f(p * p), 0.0); });
            const DenseTensor lhs = pdti_apply_spectral(left_sym, da, db, x);
            const DenseTensor rhs = einstein_product(apply_scalar_function(f, da, 2), x);
            worst = std::max(worst, spectral_norm(subtract(lhs, rhs)) /
                                        (spectral_norm(x) + 1e-30));
        }
        checks.push_back({"lemma5_one_sided", worst, 1e-10, worst <= 1e-10});
    }
    {  // perturbation identity, both signs
        double worst_minus = 0.0, worst_plus = 0.0;
        PerturbationFunctions fns;
        fns.f = [](double v) { return std::exp(v / 4.0); };
        fns.fprime = [](double v) { return 0.25 * std::exp(v / 4.0); };
        fns.g_a = fns.g_b = [](double v) { return 1.0 + v * v; };
        fns.h_a = fns.h_b = [](double v) { return 1.0 / (1.0 + v * v); };
        for (std::uint64_t i = 0; i < 10; ++i) {
            PerturbationExponents exps;
            exps.k_a = 1 + (i % 2);
            exps.k_b = 1 + ((i / 2) % 2);
            exps.m_a = exps.m_b = 1 + ((i / 4) % 2);
            const DenseTensor x = random_general(derive_seed(opts.seed, 27, i), shape);
            const DenseTensor ea_h = sample(with_trial_seed(herm, 28, i));
            const DenseTensor eb_h = sample(with_trial_seed(herm, 29, i));
            worst_minus = std::max(worst_minus, perturbation_residual(
                                                    fns, exps, ea_h, eb_h, x,
                                                    PerturbationSign::minus));
            const DenseTensor ea_p = sample(with_trial_seed(posdef, 30, i));
            const DenseTensor eb_p = sample(with_trial_seed(posdef, 31, i));
            worst_plus = std::max(worst_plus, perturbation_residual(
                                                  fns, exps, ea_p, eb_p, x,
                                                  PerturbationSign::plus));
        }
        checks.push_back({"thm3_perturbation_minus", worst_minus, 1e-8, worst_minus <= 1e-8});
        checks.push_back({"cor3_perturbation_plus", worst_plus, 1e-8, worst_plus <= 1e-8});
    }
    {  // spectral vs quadrature application of the same symbol
        const GFunction g = heinz_g(1, 0.25);
        const FactorizedRepresentation rep = fourier_representation(g, std::log(5.0), 1e-8);
        const BivariateSymbol psi = log_ratio_symbol(g);
        double worst = 0.0;
        for (std::uint64_t i = 0; i < 5; ++i) {
            const DenseTensor a = sample(with_trial_seed(posdef, 32, i));
            const DenseTensor b = sample(with_trial_seed(posdef, 33, i));
            const EigenDecomposition da = eigendecompose(a), db = eigendecompose(b);
            const DenseTensor x = random_general(derive_seed(opts.seed, 34, i), shape);
            const DenseTensor spec_t = pdti_apply_spectral(psi, da, db, x);
            const DenseTensor quad_t = pdti_apply_quadrature(rep, da, db, x);
            worst = std::max(worst, spectral_norm(subtract(spec_t, quad_t)) /
                                        (spectral_norm(x) + 1e-30));
        }
        checks.push_back({"spectral_vs_quadrature", worst, 1e-6, worst <= 1e-6});
    }

    bool all_pass = true;
    nlohmann::json rows = nlohmann::json::array();
    for (const Check& c : checks) {
        all_pass = all_pass && c.pass;
        rows.push_back({{"name", c.name},
                        {"value", c.value},
                        {"tolerance", c.tolerance},
                        {"pass", c.pass}});
    }
    nlohmann::json j{{"schema_version", kReportSchemaVersion},
                     {"command", "verify"},
                     {"config", resolved_config(opts, shape)},
                     {"checks", rows},
                     {"all_pass", all_pass}};
    emit(j.dump(2), opts.out_path);
    return all_pass ? 0 : 1;
}

// --- bound -------------------------------------------------------------------

int run_bound(const CommonOpts& opts, const std::string& label, const TheoremParams& params) {
    const GFunction g = catalog_g(label, params);
    const BoundResult r = fourier_l1_bound(g);
    nlohmann::json j = bound_record_json(g, r);
    j["command"] = "bound";
    emit(j.dump(2), opts.out_path);
    return 0;  // non-integrable profiles report a vacuous bound, not a failure
}

// --- tailbound ---------------------------------------------------------------

int run_tailbound(const CommonOpts& opts, const std::string& theorem,
                  const TheoremParams& params, std::size_t trials, const std::string& theta_text,
                  double lambda_min, double lambda_max, const std::string& x_path) {
    const auto id = theorem_from_name(theorem);
    if (!id) throw ParameterError("unknown theorem: " + theorem);
    const Shape shape = parse_shape(opts.shape_text);
    SamplerConfig cfg_a{shape, derive_seed(opts.seed, 100, 0), Ensemble::positive_definite,
                        lambda_min, lambda_max};
    SamplerConfig cfg_b{shape, derive_seed(opts.seed, 101, 0), Ensemble::positive_definite,
                        lambda_min, lambda_max};
    const DenseTensor x =
        x_path.empty()
            ? sample_hermitian({shape, derive_seed(opts.seed, 102, 0),
                                Ensemble::gaussian_hermitian, lambda_min, lambda_max})
            : load_tensor(x_path);
    const ThetaSpec thetas = parse_theta_grid(theta_text);
    const TailBoundReport rep = tail_bound_experiment(*id, params, cfg_a, cfg_b, x, trials,
                                                      thetas);
    if (opts.format == "csv") {
        emit(tail_report_csv(rep), opts.out_path);
    } else {
        nlohmann::json j = tail_report_json(rep);
        j["command"] = "tailbound";
        j["config"] = resolved_config(opts, shape);
        j["config"]["trials"] = trials;
        j["config"]["lambda_min"] = lambda_min;
        j["config"]["lambda_max"] = lambda_max;
        j["config"]["theta_grid"] = theta_text.empty() ? "0.1:10:12" : theta_text;
        emit(j.dump(2), opts.out_path);
    }
    return (rep.all_dominated && rep.markov_selfcheck_pass) ? 0 : 1;
}

// --- converge ------------------------------------------------------------------

int run_converge(const CommonOpts& opts, std::size_t trials, const std::string& t_grid_text,
                 double threshold, unsigned m, double omega) {
    const Shape shape = parse_shape(opts.shape_text);
    SamplerConfig cfg0{shape, opts.seed, Ensemble::positive_definite, 1.0, 2.0};
    DenseTensor direction = sample_hermitian(
        {shape, derive_seed(opts.seed, 3, 0), Ensemble::gaussian_hermitian, 1.0, 2.0});
    const double dn = spectral_norm(direction);
    if (dn > 0.0) direction = scale(Complex(0.5 / dn, 0.0), direction);

    const BivariateSymbol psi = log_ratio_symbol(heinz_g(m, omega));
    const std::vector<double> t_grid = parse_double_list(t_grid_text);
    const ConvergenceReport rep = convergence_experiment(psi, cfg0, direction, t_grid, trials);

    const bool pass = rep.strictly_decreasing && rep.final_over_initial <= threshold;
    if (opts.format == "csv") {
        emit(convergence_report_csv(rep), opts.out_path);
    } else {
        nlohmann::json j = convergence_report_json(rep);
        j["command"] = "converge";
        j["config"] = resolved_config(opts, shape);
        j["config"]["trials"] = trials;
        j["config"]["threshold"] = threshold;
        j["config"]["g"] = {{"label", "heinz"}, {"m", m}, {"omega", omega}};
        j["contract_pass"] = pass;
        emit(j.dump(2), opts.out_path);
    }
    return pass ? 0 : 1;
}

// --- derivcheck ------------------------------------------------------------------

int run_derivcheck(const CommonOpts& opts, double omega, unsigned m, unsigned n, double t0,
                   const std::string& h_grid_text, double residual_tol) {
    const Shape shape = parse_shape(opts.shape_text);
    SamplerConfig cfg{shape, opts.seed, Ensemble::positive_definite, 0.5, 2.0};
    const DenseTensor a = sample(with_trial_seed(cfg, 0, 0));
    const DenseTensor b = sample(with_trial_seed(cfg, 1, 0));
    std::vector<double> h_grid = parse_double_list(h_grid_text);
    std::sort(h_grid.rbegin(), h_grid.rend());
    const DerivativeCheckReport rep = derivative_check(a, b, omega, m, n, t0, h_grid);

    bool nonincreasing = true;
    for (std::size_t k = 0; k + 1 < rep.residuals.size(); ++k)
        if (rep.residuals[k + 1] > rep.residuals[k]) nonincreasing = false;
    const bool pass = nonincreasing && rep.residuals.back() <= residual_tol;
    if (opts.format == "csv") {
        emit(derivative_report_csv(rep), opts.out_path);
    } else {
        nlohmann::json j = derivative_report_json(rep);
        j["command"] = "derivcheck";
        j["config"] = resolved_config(opts, shape);
        j["config"]["omega"] = omega;
        j["config"]["m"] = m;
        j["config"]["n"] = n;
        j["config"]["t0"] = t0;
        j["config"]["residual_tol"] = residual_tol;
        j["contract_pass"] = pass;
        emit(j.dump(2), opts.out_path);
    }
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
    if (const char* env = std::getenv("PDTI_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
#endif

    CLI::App app{"PDTI toolkit: Einstein-product tensor superoperators, transform-norm "
                 "bounds, and seeded tail-bound experiments"};
    app.require_subcommand(1);

    CommonOpts opts;
    TheoremParams params;
    std::string theorem = "thm5";
    std::string g_label = "heinz";
    std::size_t trials = 2000;
    std::string theta_text;
    std::string t_grid_text = "1,0.1,0.01,0.001";
    std::string h_grid_text = "0.001,0.0001,0.00001";
    std::string x_path;
    double lambda_min = 0.5, lambda_max = 2.0;
    double threshold = 1e-2;
    double t0 = 0.5;
    double residual_tol = 1e-4;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--shape", opts.shape_text, "Tensor modes I1,...,IN")
            ->capture_default_str();
        sub->add_option("--seed", opts.seed, "Base RNG seed")->capture_default_str();
        sub->add_option("--out", opts.out_path, "Report file (stdout if omitted)");
        sub->add_option("--format", opts.format, "Report format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
    };
    auto add_params = [&](CLI::App* sub) {
        sub->add_option("--m", params.m, "Exponent m")->capture_default_str();
        sub->add_option("--n", params.n, "Exponent n")->capture_default_str();
        sub->add_option("--omega", params.omega, "Interpolation parameter omega")
            ->capture_default_str();
        sub->add_option("--nu", params.nu, "Commutator parameter nu")->capture_default_str();
        sub->add_option("--r0", params.r0, "Weight r0 (r0 + r1 = 1)")->capture_default_str();
        sub->add_option("--r1", params.r1, "Weight r1 (r0 + r1 = 1)")->capture_default_str();
        sub->add_option("--alpha", params.alpha, "Interpolation alpha")->capture_default_str();
        sub->add_option("--beta", params.beta, "Interpolation beta")->capture_default_str();
    };

    CLI::App* verify = app.add_subcommand("verify", "Run the residual verification suite");
    add_common(verify);

    CLI::App* bound = app.add_subcommand("bound", "Fourier L1 bound of a catalog profile");
    add_common(bound);
    bound->add_option("--g", g_label,
                      "Profile: heinz, heinz-plus, commutator, bks, interp, interp-plus")
        ->capture_default_str();
    add_params(bound);

    CLI::App* tailbound =
        app.add_subcommand("tailbound", "Monte Carlo tail-bound experiment");
    add_common(tailbound);
    tailbound->add_option("--theorem", theorem, "thm5, cor4, thm6, thm7, thm8 or cor5")
        ->capture_default_str();
    add_params(tailbound);
    tailbound->add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();
    tailbound->add_option("--theta-grid", theta_text,
                          "lo:hi:npts, log-spaced multiples of the sampled LHS median "
                          "(default 0.1:10:12)");
    tailbound->add_option("--lambda-min", lambda_min, "Spectrum lower edge")
        ->capture_default_str();
    tailbound->add_option("--lambda-max", lambda_max, "Spectrum upper edge")
        ->capture_default_str();
    tailbound->add_option("--x-tensor", x_path, "JSON tensor file for the probe X");

    CLI::App* converge = app.add_subcommand("converge", "PDTI continuity experiment");
    add_common(converge);
    converge->add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();
    converge->add_option("--t-grid", t_grid_text, "Decreasing perturbation scales")
        ->capture_default_str();
    converge->add_option("--threshold", threshold,
                         "Required final/initial mean-gap ratio")
        ->capture_default_str();
    converge->add_option("--m", params.m, "Heinz profile m")->capture_default_str();
    converge->add_option("--omega", params.omega, "Heinz profile omega")->capture_default_str();

    CLI::App* derivcheck =
        app.add_subcommand("derivcheck", "Derivative-vs-PDTI residual check");
    add_common(derivcheck);
    derivcheck->add_option("--omega", params.omega, "Power omega in (0, 1]")
        ->capture_default_str();
    derivcheck->add_option("--m", params.m, "Exponent m")->capture_default_str();
    derivcheck->add_option("--n", params.n, "Exponent n")->capture_default_str();
    derivcheck->add_option("--t0", t0, "Base point in (0, 1)")->capture_default_str();
    derivcheck->add_option("--h-grid", h_grid_text, "Step sizes")->capture_default_str();
    derivcheck->add_option("--residual-tol", residual_tol,
                           "Max allowed residual at the smallest step")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return run_verify(opts);
        if (bound->parsed()) return run_bound(opts, g_label, params);
        if (tailbound->parsed())
            return run_tailbound(opts, theorem, params, trials, theta_text, lambda_min,
                                 lambda_max, x_path);
        if (converge->parsed())
            return run_converge(opts, trials, t_grid_text, threshold, params.m, params.omega);
        if (derivcheck->parsed())
            return run_derivcheck(opts, params.omega, params.m, params.n, t0, h_grid_text,
                                  residual_tol);
    } catch (const ParameterError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
