#pragma once

#include <optional>
#include <string>

#include "pdti/bounds.hpp"
#include "pdti/pdti_op.hpp"
#include "pdti/sampler.hpp"

namespace pdti {

enum class TheoremId { thm5, cor4, thm6, thm7, thm8, cor5 };

std::string theorem_name(TheoremId id);
std::optional<TheoremId> theorem_from_name(const std::string& name);

/// Parameter bundle for the tail-bound statements; each theorem reads only
/// the fields it uses.
struct TheoremParams {
    unsigned m = 1, n = 1;
    double omega = 0.25;
    double nu = 0.5, r0 = 0.5, r1 = 0.5;
    double alpha = 0.5, beta = 0.5;
};

/// The g(t) profile a theorem's bound is built from.
GFunction theorem_g(TheoremId id, const TheoremParams& p);

/// One sample's norm statistics: `lhs` is the theorem's left-hand statistic,
/// `factor` the expectation factor on the right-hand side.
struct TailStatistics {
    double lhs = 0.0;
    double factor = 0.0;
};

TailStatistics compute_tail_statistics(TheoremId id, const TheoremParams& p,
                                       const DenseTensor& a, const DenseTensor& b,
                                       const DenseTensor& x);

/// Theta grid: npoints log-spaced over [lo_factor, hi_factor] x median of the
/// sampled LHS statistic, unless an explicit grid is given.
struct ThetaSpec {
    double lo_factor = 0.1;
    double hi_factor = 10.0;
    int npoints = 12;
    std::optional<std::vector<double>> explicit_grid;
};

struct TailBoundReport {
    std::string theorem;
    TheoremParams params;
    std::size_t trials = 0;
    double lemma3_bound = 0.0;  // min_c sqrt(2c)||g||_2 + sqrt(2/c)||g'||_2
    bool vacuous = false;       // g not square-integrable: bound is +inf
    double expectation_estimate = 0.0;
    double expectation_stderr = 0.0;
    double lhs_mean = 0.0;
    double lhs_stderr = 0.0;
    double lhs_median = 0.0;

    struct Row {
        double theta = 0.0;
        double empirical_tail = 0.0;
        double wilson_low = 0.0;
        double wilson_high = 0.0;
        double bound_rhs = 0.0;
        bool dominated = false;
    };
    std::vector<Row> rows;
    bool all_dominated = false;
    bool markov_selfcheck_pass = false;
};

/// Monte Carlo tail-bound experiment. Trials are keyed by index into
/// independent streams, run in parallel, and merged in index order, so the
/// report does not depend on the worker count.
TailBoundReport tail_bound_experiment(TheoremId id, const TheoremParams& p,
                                      const SamplerConfig& cfg_a, const SamplerConfig& cfg_b,
                                      const DenseTensor& x, std::size_t trials,
                                      const ThetaSpec& thetas = {});

struct ConvergenceReport {
    std::vector<double> t_grid;
    std::vector<double> mean_operator_gap;  // E || T_{psi,t}(X) - T_{psi,0}(X) ||
    std::vector<double> mean_input_gap;     // E || E_t - E_0 || = t ||direction||
    int monotone_trend = 0;                 // sign of the LS slope of gap vs t
    bool strictly_decreasing = false;
    double final_over_initial = 0.0;
};

/// Perturbs two independently sampled Hermitian families along `direction`
/// and tracks the PDTI operator gap on a fixed probe. t_grid must be
/// positive decreasing.
ConvergenceReport convergence_experiment(const BivariateSymbol& psi, const SamplerConfig& cfg0,
                                         const DenseTensor& direction,
                                         std::vector<double> t_grid, std::size_t trials);

struct DerivativeCheckReport {
    std::vector<double> h_grid;
    std::vector<double> residuals;
    double max_residual = 0.0;
};

/// Compares the difference quotient of H_t^omega along
/// H_t = B^m + t (A^n - B^m) against the PDTI image of the sandwiched
/// increment, with the divided-difference symbol of the power function on
/// Sp(H_t0). First-order in h by construction.
DerivativeCheckReport derivative_check(const DenseTensor& a, const DenseTensor& b, double omega,
                                       unsigned m, unsigned n, double t0,
                                       std::vector<double> h_grid);

struct MeanConvergenceReport {
    std::vector<unsigned> n_grid;
    std::vector<double> mean_gap;  // E || X_n - X ||
    double fitted_decay_exponent = 0.0;
    double threshold = 0.0;
    bool final_below_threshold = false;
};

/// Generator of the n-th element of the random sequence, given the trial's
/// target tensor and a derived seed.
using SequenceGenerator =
    std::function<DenseTensor(const DenseTensor& target, std::uint64_t trial_seed, unsigned n)>;

MeanConvergenceReport mean_convergence_check(const SequenceGenerator& generator,
                                             const SamplerConfig& target_cfg, std::size_t trials,
                                             std::vector<unsigned> n_grid,
                                             double threshold = 1e-2);

/// Wilson 95% score interval for a binomial fraction.
struct WilsonInterval {
    double low = 0.0, high = 0.0;
};
WilsonInterval wilson95(double fraction, std::size_t n);

}  // namespace pdti
