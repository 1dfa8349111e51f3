#include "pdti/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace pdti {

std::string theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::thm5: return "thm5";
        case TheoremId::cor4: return "cor4";
        case TheoremId::thm6: return "thm6";
        case TheoremId::thm7: return "thm7";
        case TheoremId::thm8: return "thm8";
        case TheoremId::cor5: return "cor5";
    }
    return "unknown";
}

std::optional<TheoremId> theorem_from_name(const std::string& name) {
    if (name == "thm5") return TheoremId::thm5;
    if (name == "cor4") return TheoremId::cor4;
    if (name == "thm6") return TheoremId::thm6;
    if (name == "thm7") return TheoremId::thm7;
    if (name == "thm8") return TheoremId::thm8;
    if (name == "cor5") return TheoremId::cor5;
    return std::nullopt;
}

GFunction theorem_g(TheoremId id, const TheoremParams& p) {
    switch (id) {
        case TheoremId::thm5: return heinz_g(p.m, p.omega);
        case TheoremId::cor4: return heinz_plus_g(p.m, p.omega);
        case TheoremId::thm6: return commutator_g(p.nu, p.r0, p.r1);
        case TheoremId::thm7: return bks_g(p.omega);
        case TheoremId::thm8: return interp_g(p.alpha, p.beta, InterpSign::minus);
        case TheoremId::cor5: return interp_g(p.alpha, p.beta, InterpSign::plus);
    }
    throw ParameterError("theorem_g: unknown theorem");
}

namespace {

double kahan_sum(const std::vector<double>& xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double median_of(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

struct MeanStderr {
    double mean = 0.0, stderr_ = 0.0;
};

MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr r;
    if (xs.empty()) return r;
    r.mean = kahan_sum(xs) / xs.size();
    if (xs.size() < 2) return r;
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.stderr_ = std::sqrt(ss / (xs.size() - 1)) / std::sqrt(double(xs.size()));
    return r;
}

DenseTensor sandwich(const DenseTensor& l, const DenseTensor& mid, const DenseTensor& r) {
    return einstein_product(einstein_product(l, mid), r);
}

}  // namespace

WilsonInterval wilson95(double fraction, std::size_t n) {
    if (n == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double z2 = z * z;
    const double nn = static_cast<double>(n);
    const double denom = 1.0 + z2 / nn;
    const double center = (fraction + z2 / (2.0 * nn)) / denom;
    const double half =
        z * std::sqrt(fraction * (1.0 - fraction) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

TailStatistics compute_tail_statistics(TheoremId id, const TheoremParams& p,
                                       const DenseTensor& a, const DenseTensor& b,
                                       const DenseTensor& x) {
    const EigenDecomposition da = eigendecompose(a);
    const EigenDecomposition db = eigendecompose(b);
    TailStatistics out;
    switch (id) {
        case TheoremId::thm5:
        case TheoremId::cor4: {
            const double s = id == TheoremId::cor4 ? 1.0 : -1.0;
            const DenseTensor am = hermitian_power(da, p.m);
            const DenseTensor aw = hermitian_power(da, p.omega);
            const DenseTensor bm = hermitian_power(db, p.m);
            const DenseTensor bw = hermitian_power(db, p.omega);
            out.lhs = spectral_norm(add(einstein_product(am, einstein_product(x, bw)),
                                        s * einstein_product(aw, einstein_product(x, bm))));
            out.factor = spectral_norm(
                add(einstein_product(am, x), s * einstein_product(x, bm)));
            break;
        }
        case TheoremId::thm6: {
            // A positive definite, so A |A|^{-nu} = A^{1-nu}.
            const DenseTensor a1nu = hermitian_power(da, 1.0 - p.nu);
            out.lhs = spectral_norm(commutator(a1nu, b));
            const DenseTensor comm = commutator(a, b);
            out.factor = spectral_norm(sandwich(hermitian_power(da, -p.r0 * p.nu), comm,
                                                hermitian_power(da, -p.r1 * p.nu)));
            break;
        }
        case TheoremId::thm7: {
            const DenseTensor anw = hermitian_power(da, p.n * p.omega);
            const DenseTensor bmw = hermitian_power(db, p.m * p.omega);
            out.lhs = spectral_norm(subtract(anw, bmw));
            const DenseTensor an = hermitian_power(da, p.n);
            const DenseTensor bm = hermitian_power(db, p.m);
            out.factor = std::pow(spectral_norm(subtract(an, bm)), p.omega);
            break;
        }
        case TheoremId::thm8:
        case TheoremId::cor5: {
            const double s = id == TheoremId::cor5 ? 1.0 : -1.0;
            const DenseTensor a_hi = hermitian_power(da, p.m * (1.0 + p.alpha) / 2.0);
            const DenseTensor a_lo = hermitian_power(da, p.m * (1.0 - p.beta) / 2.0);
            const DenseTensor b_hi = hermitian_power(db, p.n * (1.0 + p.beta) / 2.0);
            const DenseTensor b_lo = hermitian_power(db, p.n * (1.0 - p.alpha) / 2.0);
            out.lhs = spectral_norm(add(einstein_product(a_hi, einstein_product(x, b_lo)),
                                        s * einstein_product(a_lo, einstein_product(x, b_hi))));
            const DenseTensor am = hermitian_power(da, p.m);
            const DenseTensor bn = hermitian_power(db, p.n);
            out.factor = spectral_norm(
                add(einstein_product(am, x), s * einstein_product(x, bn)));
            break;
        }
    }
    return out;
}

TailBoundReport tail_bound_experiment(TheoremId id, const TheoremParams& p,
                                      const SamplerConfig& cfg_a, const SamplerConfig& cfg_b,
                                      const DenseTensor& x, std::size_t trials,
                                      const ThetaSpec& thetas) {
    if (cfg_a.ensemble != Ensemble::positive_definite ||
        cfg_b.ensemble != Ensemble::positive_definite)
        throw ParameterError(
            "tail_bound_experiment: fractional powers need positive-definite ensembles");
    if (cfg_a.shape != x.shape() || cfg_b.shape != x.shape())
        throw DimensionError("tail_bound_experiment: shapes disagree");
    if (trials == 0) throw ParameterError("tail_bound_experiment: trials must be positive");

    TailBoundReport rep;
    rep.theorem = theorem_name(id);
    rep.params = p;
    rep.trials = trials;

    const GFunction g = theorem_g(id, p);
    const BoundResult l3 = fourier_l1_bound(g);
    rep.lemma3_bound = l3.value;
    rep.vacuous = !l3.integrable;

    std::vector<double> lhs(trials), factor(trials);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
        const DenseTensor a = sample(with_trial_seed(cfg_a, 0, t));
        const DenseTensor b = sample(with_trial_seed(cfg_b, 1, t));
        const TailStatistics st = compute_tail_statistics(id, p, a, b, x);
        lhs[t] = st.lhs;
        factor[t] = st.factor;
    }

    const MeanStderr lhs_ms = mean_stderr(lhs);
    const MeanStderr fac_ms = mean_stderr(factor);
    rep.lhs_mean = lhs_ms.mean;
    rep.lhs_stderr = lhs_ms.stderr_;
    rep.lhs_median = median_of(lhs);
    rep.expectation_estimate = fac_ms.mean;
    rep.expectation_stderr = fac_ms.stderr_;

    std::vector<double> grid;
    if (thetas.explicit_grid) {
        grid = *thetas.explicit_grid;
    } else {
        const double base = std::max(rep.lhs_median, 1e-12);
        const int npts = std::max(thetas.npoints, 2);
        const double llo = std::log10(thetas.lo_factor), lhi = std::log10(thetas.hi_factor);
        for (int i = 0; i < npts; ++i)
            grid.push_back(base * std::pow(10.0, llo + (lhi - llo) * i / (npts - 1)));
    }
    std::sort(grid.begin(), grid.end());

    const double total = static_cast<double>(x.side());
    const double omega_div = id == TheoremId::thm7 ? p.omega : 1.0;
    const double expect_conservative = std::max(rep.expectation_estimate -
                                                2.0 * rep.expectation_stderr, 0.0);
    rep.all_dominated = true;
    rep.markov_selfcheck_pass = true;
    for (double theta : grid) {
        TailBoundReport::Row row;
        row.theta = theta;
        std::size_t count = 0;
        for (double v : lhs) count += (v >= theta);
        row.empirical_tail = static_cast<double>(count) / trials;
        const WilsonInterval wi = wilson95(row.empirical_tail, trials);
        row.wilson_low = wi.low;
        row.wilson_high = wi.high;
        row.bound_rhs =
            total * total / (omega_div * theta) * rep.lemma3_bound * rep.expectation_estimate;
        const double rhs_conservative =
            total * total / (omega_div * theta) * rep.lemma3_bound * expect_conservative;
        row.dominated = rep.vacuous || row.wilson_high <= rhs_conservative;
        if (!row.dominated) rep.all_dominated = false;
        if (row.empirical_tail > (rep.lhs_mean + 3.0 * rep.lhs_stderr) / theta)
            rep.markov_selfcheck_pass = false;
        rep.rows.push_back(row);
    }
    return rep;
}

ConvergenceReport convergence_experiment(const BivariateSymbol& psi, const SamplerConfig& cfg0,
                                         const DenseTensor& direction,
                                         std::vector<double> t_grid, std::size_t trials) {
    if (direction.shape() != cfg0.shape)
        throw DimensionError("convergence_experiment: direction shape mismatch");
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i + 1]) || t_grid[i + 1] <= 0.0)
            throw ParameterError("convergence_experiment: t_grid must be positive decreasing");
    if (t_grid.empty() || trials == 0)
        throw ParameterError("convergence_experiment: empty grid or zero trials");

    const double dir_norm = spectral_norm(direction);
    // Fixed probe, derived from the base seed.
    const DenseTensor probe =
        sample_hermitian({cfg0.shape, derive_seed(cfg0.seed, 2, 0),
                          Ensemble::gaussian_hermitian, cfg0.lambda_min, cfg0.lambda_max});

    const std::size_t nt = t_grid.size();
    std::vector<double> gaps(trials * nt);
#pragma omp parallel for schedule(static)
    for (std::int64_t tr = 0; tr < static_cast<std::int64_t>(trials); ++tr) {
        const DenseTensor ea0 = sample(with_trial_seed(cfg0, 0, tr));
        const DenseTensor eb0 = sample(with_trial_seed(cfg0, 1, tr));
        const EigenDecomposition da0 = eigendecompose(ea0);
        const EigenDecomposition db0 = eigendecompose(eb0);
        const DenseTensor base = pdti_apply_spectral(psi, da0, db0, probe);
        for (std::size_t k = 0; k < nt; ++k) {
            const double t = t_grid[k];
            const EigenDecomposition dat = eigendecompose(add(ea0, t * direction));
            const EigenDecomposition dbt = eigendecompose(add(eb0, t * direction));
            const DenseTensor moved = pdti_apply_spectral(psi, dat, dbt, probe);
            gaps[tr * nt + k] = spectral_norm(subtract(moved, base));
        }
    }

    ConvergenceReport rep;
    rep.t_grid = t_grid;
    for (std::size_t k = 0; k < nt; ++k) {
        std::vector<double> col(trials);
        for (std::size_t tr = 0; tr < trials; ++tr) col[tr] = gaps[tr * nt + k];
        rep.mean_operator_gap.push_back(kahan_sum(col) / trials);
        rep.mean_input_gap.push_back(t_grid[k] * dir_norm);
    }
    rep.strictly_decreasing = true;
    for (std::size_t k = 0; k + 1 < nt; ++k)
        if (!(rep.mean_operator_gap[k] > rep.mean_operator_gap[k + 1]))
            rep.strictly_decreasing = false;
    rep.final_over_initial = rep.mean_operator_gap.front() > 0.0
                                 ? rep.mean_operator_gap.back() / rep.mean_operator_gap.front()
                                 : 0.0;
    // Least-squares slope of gap against t.
    double tbar = 0.0, gbar = 0.0;
    for (std::size_t k = 0; k < nt; ++k) {
        tbar += t_grid[k];
        gbar += rep.mean_operator_gap[k];
    }
    tbar /= nt;
    gbar /= nt;
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < nt; ++k) {
        num += (t_grid[k] - tbar) * (rep.mean_operator_gap[k] - gbar);
        den += (t_grid[k] - tbar) * (t_grid[k] - tbar);
    }
    const double slope = den > 0.0 ? num / den : 0.0;
    rep.monotone_trend = slope > 0.0 ? 1 : (slope < 0.0 ? -1 : 0);
    return rep;
}

DerivativeCheckReport derivative_check(const DenseTensor& a, const DenseTensor& b, double omega,
                                       unsigned m, unsigned n, double t0,
                                       std::vector<double> h_grid) {
    if (omega <= 0.0 || omega > 1.0)
        throw ParameterError("derivative_check: omega must lie in (0, 1]");
    if (t0 <= 0.0 || t0 >= 1.0)
        throw ParameterError("derivative_check: t0 must lie in (0, 1)");
    if (!is_positive_definite(a) || !is_positive_definite(b))
        throw ParameterError("derivative_check: A and B must be positive definite");

    const DenseTensor an = einstein_power(a, n);
    const DenseTensor bm = einstein_power(b, m);
    const DenseTensor delta = subtract(an, bm);  // H_1 - H_0
    auto h_at = [&](double t) { return add(bm, t * delta); };

    const EigenDecomposition dh0 = eigendecompose(h_at(t0));
    if (dh0.eigenvalues.back() <= 0.0)
        throw ParameterError("derivative_check: H_t lost positive definiteness; resample");

    // psi(x, y) = x^{(1-omega)/2} DD[u -> u^omega](x, y) y^{(1-omega)/2} on
    // Sp(H_t0)^2: the theorem's symbol expressed in the eigenvalues of H_t,
    // i.e. with the n-th / m-th powers of the original spectra substituted.
    PerturbationFunctions fns;
    fns.f = [omega](double u) { return std::pow(u, omega); };
    fns.fprime = [omega](double u) { return omega * std::pow(u, omega - 1.0); };
    fns.h_a = fns.h_b = [omega](double u) { return std::pow(u, (1.0 - omega) / 2.0); };
    const BivariateSymbol psi = make_perturbation_symbol(
        fns, PerturbationExponents{}, dh0.eigenvalues, dh0.eigenvalues,
        PerturbationSign::minus);

    const DenseTensor half = hermitian_power(dh0, (omega - 1.0) / 2.0);
    const DenseTensor pdti_image =
        pdti_apply_spectral(psi, dh0, dh0, sandwich(half, delta, half));
    const DenseTensor h0w = hermitian_power(dh0, omega);

    DerivativeCheckReport rep;
    rep.h_grid = h_grid;
    for (double h : h_grid) {
        if (h <= 0.0 || t0 + h > 1.0)
            throw ParameterError("derivative_check: h_grid must keep t0 + h within (0, 1]");
        const EigenDecomposition dht = eigendecompose(h_at(t0 + h));
        if (dht.eigenvalues.back() <= 0.0)
            throw ParameterError("derivative_check: H_t lost positive definiteness; resample");
        const DenseTensor quotient =
            scale(Complex(1.0 / h, 0.0), subtract(hermitian_power(dht, omega), h0w));
        rep.residuals.push_back(spectral_norm(subtract(quotient, pdti_image)));
    }
    rep.max_residual = rep.residuals.empty()
                           ? 0.0
                           : *std::max_element(rep.residuals.begin(), rep.residuals.end());
    return rep;
}

MeanConvergenceReport mean_convergence_check(const SequenceGenerator& generator,
                                             const SamplerConfig& target_cfg, std::size_t trials,
                                             std::vector<unsigned> n_grid, double threshold) {
    if (n_grid.empty() || trials == 0)
        throw ParameterError("mean_convergence_check: empty grid or zero trials");
    const std::size_t nn = n_grid.size();
    std::vector<double> gaps(trials * nn);
#pragma omp parallel for schedule(static)
    for (std::int64_t tr = 0; tr < static_cast<std::int64_t>(trials); ++tr) {
        const DenseTensor target = sample(with_trial_seed(target_cfg, 0, tr));
        for (std::size_t k = 0; k < nn; ++k) {
            const DenseTensor xn = generator(target, derive_seed(target_cfg.seed, 1 + k, tr),
                                             n_grid[k]);
            gaps[tr * nn + k] = spectral_norm(subtract(xn, target));
        }
    }

    MeanConvergenceReport rep;
    rep.n_grid = n_grid;
    rep.threshold = threshold;
    for (std::size_t k = 0; k < nn; ++k) {
        std::vector<double> col(trials);
        for (std::size_t tr = 0; tr < trials; ++tr) col[tr] = gaps[tr * nn + k];
        rep.mean_gap.push_back(kahan_sum(col) / trials);
    }
    // log-log slope; a 1/n sequence fits exponent -1.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t used = 0;
    for (std::size_t k = 0; k < nn; ++k) {
        if (rep.mean_gap[k] <= 0.0) continue;
        const double lx = std::log(static_cast<double>(n_grid[k]));
        const double ly = std::log(rep.mean_gap[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++used;
    }
    if (used >= 2 && sxx * used - sx * sx > 0.0)
        rep.fitted_decay_exponent = (sxy * used - sx * sy) / (sxx * used - sx * sx);
    rep.final_below_threshold = rep.mean_gap.back() <= threshold;
    return rep;
}

}  // namespace pdti
