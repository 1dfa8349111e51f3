#include "pdti/bounds.hpp"

#include <cmath>
#include <numbers>

namespace pdti {

BoundResult fourier_l1_bound(const GFunction& g) {
    BoundResult r;
    if (!g.square_integrable()) {
        r.value = std::numeric_limits<double>::infinity();
        r.integrable = false;
        return r;
    }
    r.l2_g = l2_norm_on_line([&g](double t) { return g.eval(t); });
    r.l2_gprime = l2_norm_on_line([&g](double t) { return g.deriv(t); });
    if (r.l2_g == 0.0 && r.l2_gprime > 0.0)
        throw EvaluationError("fourier_l1_bound: ||g||_2 = 0 with ||g'||_2 > 0 is inconsistent");
    // min over c > 0 of sqrt(2c) l2g + sqrt(2/c) l2gp, at c* = l2gp / l2g.
    if (r.l2_g == 0.0) {
        r.c_star = 1.0;
        r.value = 0.0;
    } else {
        r.c_star = r.l2_gprime / r.l2_g;
        if (r.c_star == 0.0) {
            // g' == 0 would mean a constant g; unreachable for integrable g,
            // but keep the formula total.
            r.c_star = 1.0;
        }
        r.value = std::sqrt(2.0 * r.c_star) * r.l2_g + std::sqrt(2.0 / r.c_star) * r.l2_gprime;
    }
    r.quadrature_error_estimate = 1e-9 * std::max(1.0, r.value);
    return r;
}

double psi_norm_upper_kernel(const ScalarFunction& kernel_max,
                             const std::function<Complex(double)>& gtilde, double c_a,
                             double c_b, double g_sup) {
    auto weighted = [&](double s) { return kernel_max(s) * std::abs(gtilde(s)); };
    const double integral = integrate_line(weighted);
    return c_a * c_b * integral * g_sup;
}

double psi_norm_upper_fourier(const GFunction& g) { return fourier_l1_bound(g).value; }

double psi_norm_upper_shifted(const GFunction& g, double /*alpha*/, double gamma_star,
                              double kappa_star) {
    if (gamma_star <= 0.0 || kappa_star <= 0.0)
        throw ParameterError("psi_norm_upper_shifted: suprema must be positive");
    return gamma_star * kappa_star * fourier_l1_bound(g).value;
}

namespace {

// Window beyond which |g| is below `floor`, from the profile's decay rate.
double decay_window(const GFunction& g, double floor) {
    const double d = g.decay_rate();
    const double c = std::max(g.sup_abs(), 1e-30);
    return std::max(4.0, std::log(c / floor) / d * 1.2);
}

// integral of g(t) cos(st) / sin(st) over [0, w] in oscillation-sized panels.
double oscillatory_half_line(const ScalarFunction& f, double s, double w, double tol) {
    const double panel = std::min(1.0, std::numbers::pi / (4.0 * std::max(std::abs(s), 1.0)));
    const int npanels = static_cast<int>(std::ceil(w / panel));
    const double h = w / npanels;
    double acc = 0.0;
    for (int k = 0; k < npanels; ++k)
        acc += adaptive_simpson(f, k * h, (k + 1) * h, tol * h / w);
    return acc;
}

}  // namespace

Complex fourier_transform_value(const GFunction& g, double s) {
    if (!g.square_integrable())
        throw DivergenceError("fourier_transform_value: profile is not integrable");
    const double w = decay_window(g, 1e-15);
    const double tol = 1e-13;
    // Split e^{-ist} into cos/sin and each side of the line separately; the
    // profiles need not be even.
    auto re_pos = [&](double t) { return g.eval(t) * std::cos(s * t); };
    auto re_neg = [&](double t) { return g.eval(-t) * std::cos(s * t); };
    auto im_pos = [&](double t) { return g.eval(t) * std::sin(s * t); };
    auto im_neg = [&](double t) { return g.eval(-t) * std::sin(s * t); };
    const double re = oscillatory_half_line(re_pos, s, w, tol) +
                      oscillatory_half_line(re_neg, s, w, tol);
    const double im = -oscillatory_half_line(im_pos, s, w, tol) +
                      oscillatory_half_line(im_neg, s, w, tol);
    return Complex(re, im) / (2.0 * std::numbers::pi);
}

FactorizedRepresentation fourier_representation(const GFunction& g, double t_max, double eps) {
    if (!g.square_integrable())
        throw DivergenceError("fourier_representation: profile is not integrable");
    if (eps <= 0.0 || t_max < 0.0)
        throw ParameterError("fourier_representation: eps must be positive, t_max nonnegative");

    // Truncation |s| <= s_cut: grow until the numeric |gtilde| has fallen far
    // enough that the extrapolated tail is below eps / 4.
    double s_cut = 2.0;
    double prev = std::abs(fourier_transform_value(g, s_cut / 2.0));
    double cur = std::abs(fourier_transform_value(g, s_cut));
    for (int it = 0; it < 40; ++it) {
        const double rate = (prev > 0.0 && cur > 0.0 && cur < prev)
                                ? std::log(prev / cur) / (s_cut / 2.0)
                                : 0.1;
        const double tail = cur / std::max(rate, 1e-3) * 2.0;
        if (tail < 0.25 * eps && cur < eps) break;
        prev = cur;
        s_cut *= 1.5;
        cur = std::abs(fourier_transform_value(g, s_cut));
    }

    // Node spacing from the aliasing images g(t +- 2 pi / ds): push them
    // below eps / 4 across the working box |t| <= t_max.
    const double d = g.decay_rate();
    const double c = std::max(g.sup_abs(), 1e-30);
    const double period = t_max + std::log(4.0 * c / eps) / d * 1.2;
    const double ds = 2.0 * std::numbers::pi / period;
    const int half = static_cast<int>(std::ceil(s_cut / ds));

    FactorizedRepresentation rep;
    std::vector<Complex> phases;
    rep.nodes.reserve(2 * half + 1);
    for (int k = -half; k <= half; ++k) {
        const double s = k * ds;
        const Complex val = fourier_transform_value(g, s);
        const double mag = std::abs(val);
        double wgt = mag * ds;
        if (k == -half || k == half) wgt *= 0.5;  // trapezoid ends
        rep.nodes.push_back(s);
        rep.weights.push_back(wgt);
        rep.sup_a.push_back(1.0);
        rep.sup_b.push_back(1.0);
        phases.push_back(mag > 0.0 ? val / mag : Complex(1.0, 0.0));
    }
    rep.certified_error = eps;

    auto nodes = rep.nodes;
    auto phase_at = [nodes, phases](double sigma) {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), sigma - 1e-12);
        if (it == nodes.end() || std::abs(*it - sigma) > 1e-9)
            throw ParameterError("fourier_representation: sigma is not a node of this grid");
        return phases[static_cast<std::size_t>(it - nodes.begin())];
    };
    rep.f_a = [phase_at](double sigma, double lam) -> Complex {
        if (lam <= 0.0)
            throw EvaluationError("fourier_representation: factors need positive eigenvalues");
        return phase_at(sigma) * std::exp(Complex(0.0, sigma * std::log(lam)));
    };
    rep.f_b = [](double sigma, double lam) -> Complex {
        if (lam <= 0.0)
            throw EvaluationError("fourier_representation: factors need positive eigenvalues");
        return std::exp(Complex(0.0, -sigma * std::log(lam)));
    };
    return rep;
}

BivariateSymbol log_ratio_symbol(const GFunction& g) {
    return BivariateSymbol([g](double a, double b) -> Complex {
        if (a <= 0.0 || b <= 0.0)
            throw EvaluationError("log_ratio_symbol: eigenvalues must be positive");
        return Complex(g.eval(std::log(a / b)), 0.0);
    });
}

}  // namespace pdti
