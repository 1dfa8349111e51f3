#include "pdti/symbol.hpp"

#include <cmath>

namespace pdti {

double divided_difference(const RealFunction& f, const std::optional<RealFunction>& fprime,
                          double a, double b, double tol) {
    const double fa = f(a), fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb))
        throw EvaluationError("divided_difference: f non-finite at an endpoint");
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    if (std::abs(a - b) > tol * scale) return (fa - fb) / (a - b);
    const double mid = 0.5 * (a + b);
    if (fprime) return (*fprime)(mid);
    const double h = std::cbrt(tol) * scale;
    return (f(mid + h) - f(mid - h)) / (2.0 * h);
}

bool SpectrumSupport::contains(double a, double b) const {
    auto near_any = [this](const std::vector<double>& sp, double x) {
        for (double v : sp)
            if (std::abs(x - v) <= tol * std::max(1.0, std::abs(v))) return true;
        return false;
    };
    return near_any(sp_a, a) && near_any(sp_b, b);
}

BivariateSymbol symbol_product(const BivariateSymbol& s1, const BivariateSymbol& s2) {
    return BivariateSymbol([s1, s2](double a, double b) { return s1(a, b) * s2(a, b); });
}

namespace {

double int_pow(double x, unsigned k) {
    double p = 1.0;
    for (unsigned i = 0; i < k; ++i) p *= x;
    return p;
}

void validate_nonvanishing(const RealFunction& g, const std::vector<double>& sp, unsigned m,
                           const char* which) {
    for (double lam : sp) {
        const double v = g(int_pow(lam, m));
        if (!std::isfinite(v) || v == 0.0)
            throw DivisionError(std::string("make_perturbation_symbol: ") + which +
                                " vanishes or is non-finite on the spectrum");
    }
}

}  // namespace

BivariateSymbol make_perturbation_symbol(const PerturbationFunctions& fns,
                                         const PerturbationExponents& exps,
                                         std::vector<double> sp_a, std::vector<double> sp_b,
                                         PerturbationSign sign, double dd_tol) {
    validate_nonvanishing(fns.g_a, sp_a, exps.m_a, "g_A");
    validate_nonvanishing(fns.g_b, sp_b, exps.m_b, "g_B");

    SpectrumSupport support{std::move(sp_a), std::move(sp_b), 1e-8};
    auto eval = [fns, exps, sign, dd_tol](double a, double b) -> Complex {
        const double xa = int_pow(a, exps.k_a);
        const double xb = int_pow(b, exps.k_b);
        double dd;
        if (sign == PerturbationSign::minus) {
            dd = divided_difference(fns.f, fns.fprime, xa, xb, dd_tol);
        } else {
            const double denom = xa + xb;
            if (denom == 0.0)
                throw DivisionError(
                    "make_perturbation_symbol: plus variant with vanishing a^k + b^k");
            dd = (fns.f(xa) + fns.f(xb)) / denom;
        }
        const double left = fns.h_a(int_pow(a, exps.n_a)) / fns.g_a(int_pow(a, exps.m_a));
        const double right = fns.h_b(int_pow(b, exps.n_b)) / fns.g_b(int_pow(b, exps.m_b));
        return Complex(left * dd * right, 0.0);
    };
    return BivariateSymbol(std::move(eval), std::move(support),
                           sign == PerturbationSign::minus ? SingularityPolicy::divided_difference
                                                           : SingularityPolicy::none);
}

}  // namespace pdti
