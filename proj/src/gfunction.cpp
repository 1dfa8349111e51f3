#include "pdti/gfunction.hpp"

#include <cmath>

namespace pdti {

namespace {

constexpr double kSeriesCutoff = 1e-6;
// Beyond this argument sinh/cosh are switched to the exponential form.
constexpr double kAsymptoticCutoff = 30.0;

double kernel_fn(GFunction::Kernel k, double x) {
    return k == GFunction::Kernel::sinh_ratio ? std::sinh(x) : std::cosh(x);
}

// x * K'(x)/K(x) evaluated as a stable multiplier: coth for sinh, tanh for cosh.
double log_deriv(GFunction::Kernel k, double coeff, double x) {
    if (k == GFunction::Kernel::sinh_ratio) {
        if (std::abs(x) > 20.0) {
            const double s = x > 0 ? 1.0 : -1.0;
            return coeff * s * (1.0 + 2.0 * std::exp(-2.0 * std::abs(x)));
        }
        return coeff / std::tanh(x);
    }
    return coeff * std::tanh(x);
}

}  // namespace

GFunction::GFunction(Kernel kernel, double a, double b, double c, std::string label,
                     std::map<std::string, double> params)
    : kernel_(kernel),
      a_(a),
      b_(b),
      c_(c),
      constant_zero_(kernel == Kernel::sinh_ratio && a == 0.0),
      label_(std::move(label)),
      params_(std::move(params)) {
    if (b_ <= 0.0) throw ParameterError("GFunction: denominator rate b must be positive");
    const double margin = b_ - std::abs(a_) - std::abs(c_);
    decay_rate_ = constant_zero_ ? 1.0 : (margin > 1e-12 ? margin : 0.0);
}

double GFunction::eval(double t) const {
    if (constant_zero_) return 0.0;
    const double u = std::abs(t);
    if (u < kSeriesCutoff) {
        // K(at)/K(bt) = (a/b or 1) * (1 + (a^2-b^2) u^2 / (6 or 2)) + O(u^4)
        const double ratio0 = kernel_ == Kernel::sinh_ratio ? a_ / b_ : 1.0;
        const double curv = kernel_ == Kernel::sinh_ratio ? (a_ * a_ - b_ * b_) / 6.0
                                                          : (a_ * a_ - b_ * b_) / 2.0;
        return std::exp(c_ * t) * ratio0 * (1.0 + curv * u * u);
    }
    if (b_ * u <= kAsymptoticCutoff)
        return std::exp(c_ * t) * kernel_fn(kernel_, a_ * t) / kernel_fn(kernel_, b_ * t);
    // K(at)/K(bt) = sgn * exp((|a| - b) u) * (1 -+ e^{-2|a|u}) / (1 -+ e^{-2bu})
    const double sgn =
        (kernel_ == Kernel::sinh_ratio && a_ * t < 0.0) ? -1.0 : 1.0;
    const double expo = c_ * t + (std::abs(a_) - b_) * u;
    const double pm = kernel_ == Kernel::sinh_ratio ? -1.0 : 1.0;
    const double num = 1.0 + pm * std::exp(-2.0 * std::abs(a_) * u);
    const double den = 1.0 + pm * std::exp(-2.0 * b_ * u);
    return sgn * std::exp(expo) * num / den;
}

double GFunction::deriv(double t) const {
    if (constant_zero_) return 0.0;
    const double u = std::abs(t);
    if (u < kSeriesCutoff) {
        const double g = eval(t);
        double rprime;  // d/dt of K(at)/K(bt) near 0
        if (kernel_ == Kernel::sinh_ratio)
            rprime = (a_ / b_) * (a_ * a_ - b_ * b_) * t / 3.0;
        else
            rprime = (a_ * a_ - b_ * b_) * t;
        return c_ * g + std::exp(c_ * t) * rprime;
    }
    // g'(t) = g(t) * (c + a K'(at)/K(at) - b K'(bt)/K(bt)); g has no zeros
    // away from t = 0, so the multiplicative form is safe here.
    const double mult =
        c_ + log_deriv(kernel_, a_, a_ * t) - log_deriv(kernel_, b_, b_ * t);
    return eval(t) * mult;
}

double GFunction::sup_abs() const {
    if (constant_zero_) return 0.0;
    const double lo = -50.0, hi = 50.0;
    const int npts = 2001;
    double best = 0.0;
    int best_i = 0;
    for (int i = 0; i < npts; ++i) {
        const double t = lo + (hi - lo) * i / (npts - 1);
        const double v = std::abs(eval(t));
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    // Golden-section refinement inside the bracketing cell.
    const double step = (hi - lo) / (npts - 1);
    double a = lo + step * std::max(best_i - 1, 0);
    double b = lo + step * std::min(best_i + 1, npts - 1);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = std::abs(eval(x1)), f2 = std::abs(eval(x2));
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = std::abs(eval(x2));
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = std::abs(eval(x1));
        }
    }
    best = std::max({best, f1, f2});
    // Endpoint limits: 0 for decaying profiles, |a/b|-type constants otherwise.
    if (!square_integrable()) {
        const double tail = std::max(std::abs(eval(200.0 / b_)), std::abs(eval(-200.0 / b_)));
        best = std::max(best, tail);
    }
    return best;
}

// --- catalog ---------------------------------------------------------------

GFunction heinz_g(unsigned m, double omega) {
    if (m < 1) throw ParameterError("heinz_g: m must be a positive integer");
    if (omega < 0.0 || omega > static_cast<double>(m))
        throw ParameterError("heinz_g: omega must lie in [0, m]");
    const double md = static_cast<double>(m);
    return GFunction(GFunction::Kernel::sinh_ratio, (md - 2.0 * omega) / 2.0, md / 2.0, 0.0,
                     "heinz", {{"m", md}, {"omega", omega}});
}

GFunction heinz_plus_g(unsigned m, double omega) {
    if (m < 1) throw ParameterError("heinz_plus_g: m must be a positive integer");
    if (omega < 0.0 || omega > static_cast<double>(m))
        throw ParameterError("heinz_plus_g: omega must lie in [0, m]");
    const double md = static_cast<double>(m);
    return GFunction(GFunction::Kernel::cosh_ratio, (md - 2.0 * omega) / 2.0, md / 2.0, 0.0,
                     "heinz-plus", {{"m", md}, {"omega", omega}});
}

GFunction commutator_g(double nu, double r0, double r1) {
    if (std::abs(r0 + r1 - 1.0) > 1e-12)
        throw ParameterError("commutator_g: r0 + r1 must equal 1");
    if (r0 < 0.0 || r1 < 0.0) throw ParameterError("commutator_g: r0, r1 must be nonnegative");
    if (nu < 0.0 || nu > 1.0) throw ParameterError("commutator_g: nu must lie in [0, 1]");
    // Numerator exp[(1-2 r1 nu)t/2] - exp[(2 r0 nu - 1)t/2]
    //   = 2 exp(nu (r0 - r1) t / 2) sinh((1 - nu) t / 2).
    return GFunction(GFunction::Kernel::sinh_ratio, (1.0 - nu) / 2.0, 0.5,
                     nu * (r0 - r1) / 2.0, "commutator",
                     {{"nu", nu}, {"r0", r0}, {"r1", r1}});
}

GFunction bks_g(double omega) {
    if (omega < 0.0 || omega > 1.0) throw ParameterError("bks_g: omega must lie in [0, 1]");
    return GFunction(GFunction::Kernel::sinh_ratio, omega / 2.0, 0.5, 0.0, "bks",
                     {{"omega", omega}});
}

GFunction interp_g(double alpha, double beta, InterpSign sign) {
    if (alpha < 0.0 || alpha > 1.0 || beta < 0.0 || beta > 1.0)
        throw ParameterError("interp_g: alpha, beta must lie in [0, 1]");
    // exp(alpha t/2) -+ exp(-beta t/2)
    //   = 2 exp((alpha-beta) t/4) * {sinh|cosh}((alpha+beta) t/4),
    // and the denominator is 2 {sinh|cosh}(t/2).
    const auto kernel = sign == InterpSign::minus ? GFunction::Kernel::sinh_ratio
                                                  : GFunction::Kernel::cosh_ratio;
    return GFunction(kernel, (alpha + beta) / 4.0, 0.5, (alpha - beta) / 4.0,
                     sign == InterpSign::minus ? "interp" : "interp-plus",
                     {{"alpha", alpha}, {"beta", beta}});
}

}  // namespace pdti
