#include "pdti/quadrature.hpp"

#include <cmath>

namespace pdti {

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const ScalarFunction& f, double a, double m, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const ScalarFunction& f, double a, double b, double tol, int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(fa, fm, fb, b - a);
    return simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

double integrate_line(const ScalarFunction& f, double rel_tol) {
    // Seed with [-1, 1], then add shells [W, 2W] on both sides.
    const double seed_tol = 1e-14;
    double total = adaptive_simpson(f, -1.0, 1.0, seed_tol);
    double w = 1.0;
    int stagnant = 0;
    double prev_shell = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 60; ++iter) {
        const double shell_tol = std::max(seed_tol, 0.1 * rel_tol * std::abs(total));
        const double shell = adaptive_simpson(f, w, 2.0 * w, shell_tol) +
                             adaptive_simpson(f, -2.0 * w, -w, shell_tol);
        if (!std::isfinite(shell) || !std::isfinite(total))
            throw DivergenceError("integrate_line: integrand is not integrable (non-finite)");
        total += shell;
        w *= 2.0;
        const double mag = std::abs(shell);
        if (mag <= rel_tol * std::max(std::abs(total), 1e-300) || mag == 0.0) return total;
        // Divergence heuristic: the shell contributions must shrink.
        if (mag >= 0.5 * prev_shell) {
            if (++stagnant >= 3)
                throw DivergenceError("integrate_line: tail not shrinking over 3 doublings");
        } else {
            stagnant = 0;
        }
        prev_shell = mag;
    }
    throw DivergenceError("integrate_line: window doubling did not converge");
}

double l2_norm_on_line(const ScalarFunction& f) {
    auto sq = [&f](double t) {
        const double v = f(t);
        return v * v;
    };
    return std::sqrt(integrate_line(sq));
}

}  // namespace pdti
