#pragma once

#include <complex>
#include <functional>

#include "pdti/errors.hpp"

namespace pdti {

using ScalarFunction = std::function<double(double)>;

/// Adaptive Simpson on [a, b] with deterministic node placement.
double adaptive_simpson(const ScalarFunction& f, double a, double b, double tol,
                        int max_depth = 40);

/// Integral of f over the whole line by symmetric window doubling:
/// integrate [-W, W], keep doubling W until the added shell is below
/// rel_tol of the accumulated value. Throws DivergenceError if the shell
/// contributions fail to shrink over three successive doublings.
double integrate_line(const ScalarFunction& f, double rel_tol = 1e-10);

/// sqrt of the line integral of f^2.
double l2_norm_on_line(const ScalarFunction& f);

}  // namespace pdti
