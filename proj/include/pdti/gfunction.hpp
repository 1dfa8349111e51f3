#pragma once

#include <map>
#include <string>

#include "pdti/quadrature.hpp"

namespace pdti {

/// One-variable profile g(t) with its derivative, as consumed by the
/// transform-bound engine. Every catalog entry has the form
///   g(t) = exp(c t) * K(a t) / K(b t),   K = sinh or cosh, b > 0,
/// which covers the Heinz, commutator, power-comparison and interpolation
/// profiles. Removable singularities at t = 0 are filled by series limits
/// below |t| = 1e-6.
class GFunction {
  public:
    enum class Kernel { sinh_ratio, cosh_ratio };

    GFunction(Kernel kernel, double a, double b, double c, std::string label,
              std::map<std::string, double> params);

    double operator()(double t) const { return eval(t); }
    double eval(double t) const;
    double deriv(double t) const;

    const std::string& label() const { return label_; }
    const std::map<std::string, double>& params() const { return params_; }

    /// True when g and g' are square-integrable on the line
    /// (decay margin b - |a| - |c| > 0).
    bool square_integrable() const { return decay_rate_ > 0.0; }
    /// Exponential decay rate d with |g(t)| = O(exp(-d |t|)); 0 if none.
    double decay_rate() const { return decay_rate_; }

    /// sup_t |g(t)|, by grid bracketing + golden-section refinement,
    /// compared against the endpoint limits.
    double sup_abs() const;

  private:
    Kernel kernel_;
    double a_, b_, c_;
    bool constant_zero_;
    double decay_rate_;
    std::string label_;
    std::map<std::string, double> params_;
};

// --- catalog ---------------------------------------------------------------

/// sinh((m - 2 omega) t / 2) / sinh(m t / 2); requires 0 <= omega <= m.
GFunction heinz_g(unsigned m, double omega);

/// cosh((m - 2 omega) t / 2) / cosh(m t / 2); requires 0 <= omega <= m.
GFunction heinz_plus_g(unsigned m, double omega);

/// [exp((1 - 2 r1 nu) t / 2) - exp((2 r0 nu - 1) t / 2)] / [2 sinh(t / 2)];
/// requires r0 + r1 = 1, r0, r1 >= 0, 0 <= nu <= 1.
GFunction commutator_g(double nu, double r0, double r1);

/// sinh(omega t / 2) / sinh(t / 2); requires 0 <= omega <= 1.
GFunction bks_g(double omega);

enum class InterpSign { minus, plus };

/// [exp(alpha t / 2) -+ exp(-beta t / 2)] / [exp(t / 2) -+ exp(-t / 2)];
/// requires 0 <= alpha, beta <= 1.
GFunction interp_g(double alpha, double beta, InterpSign sign);

}  // namespace pdti
