#pragma once

#include "pdti/gfunction.hpp"
#include "pdti/symbol.hpp"

namespace pdti {

/// Fourier L1 estimate min_{c>0} sqrt(2c) ||g||_2 + sqrt(2/c) ||g'||_2 with
/// its ingredients. For non-square-integrable profiles `value` is +inf and
/// `integrable` false (the bound is then vacuous, not an error).
struct BoundResult {
    double value = 0.0;
    double c_star = 1.0;
    double l2_g = 0.0;
    double l2_gprime = 0.0;
    double quadrature_error_estimate = 0.0;
    bool integrable = true;
};

BoundResult fourier_l1_bound(const GFunction& g);

/// General integral-kernel bound: c_A * c_B * (integral of
/// max_t |K(s,t)| against the |gtilde(s)| ds weighting) * g_sup.
/// `kernel_max` must return max_t |K(s, t)| for a given s.
double psi_norm_upper_kernel(const ScalarFunction& kernel_max,
                             const std::function<Complex(double)>& gtilde, double c_a,
                             double c_b, double g_sup = 1.0);

/// Fourier-transform specialization: the factors are unimodular, so the
/// bound is exactly the Lemma-3 value.
double psi_norm_upper_fourier(const GFunction& g);

/// Shifted-transform variant: the caller supplies the suprema of the
/// gamma^alpha / kappa^{-alpha} factors.
double psi_norm_upper_shifted(const GFunction& g, double alpha, double gamma_star,
                              double kappa_star);

/// Numeric Fourier coefficient gtilde(s) = (1/2pi) integral g(t) e^{-ist} dt.
Complex fourier_transform_value(const GFunction& g, double s);

/// Trapezoidal discretization of the Fourier representation
///   psi(a, b) = g(log(a/b)) = integral gtilde(s) a^{is} b^{-is} ds
/// valid for |log(a/b)| <= t_max, with pointwise error <= eps there.
/// The gtilde phase is folded into the A-side factor so the measure is
/// nonnegative and both factors stay unimodular.
FactorizedRepresentation fourier_representation(const GFunction& g, double t_max, double eps);

/// psi(a, b) = g(log(a / b)) for positive eigenvalue pairs.
BivariateSymbol log_ratio_symbol(const GFunction& g);

}  // namespace pdti
