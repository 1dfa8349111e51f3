#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "pdti/spectral.hpp"

namespace pdti {

/// Divided difference (f(a) - f(b)) / (a - b), extended across the diagonal:
/// when |a - b| <= tol * max(1, |a|, |b|) the derivative at the midpoint is
/// used instead (fprime if supplied, else a central difference with step
/// tol^(1/3)).
inline constexpr double kDividedDifferenceTol = 1e-9;
double divided_difference(const RealFunction& f, const std::optional<RealFunction>& fprime,
                          double a, double b, double tol = kDividedDifferenceTol);

/// How a symbol treats vanishing divided-difference denominators.
enum class SingularityPolicy { none, divided_difference };

/// Eigenvalue supports Sp(E_A) x Sp(E_B) outside which a symbol is zero.
struct SpectrumSupport {
    std::vector<double> sp_a;
    std::vector<double> sp_b;
    double tol = 1e-8;

    bool contains(double a, double b) const;
};

/// Scalar function psi(lambda_A, lambda_B) of eigenvalue pairs. When a
/// support is declared, evaluation outside it returns exactly 0.
class BivariateSymbol {
  public:
    using Eval = std::function<Complex(double, double)>;

    BivariateSymbol(Eval eval, std::optional<SpectrumSupport> support = std::nullopt,
                    SingularityPolicy policy = SingularityPolicy::none)
        : eval_(std::move(eval)), support_(std::move(support)), policy_(policy) {}

    Complex operator()(double a, double b) const {
        if (support_ && !support_->contains(a, b)) return 0.0;
        return eval_(a, b);
    }

    const std::optional<SpectrumSupport>& support() const { return support_; }
    SingularityPolicy policy() const { return policy_; }

    static BivariateSymbol constant(Complex c) {
        return BivariateSymbol([c](double, double) { return c; });
    }

  private:
    Eval eval_;
    std::optional<SpectrumSupport> support_;
    SingularityPolicy policy_;
};

/// Pointwise product; the PDTI map sends it to operator composition.
BivariateSymbol symbol_product(const BivariateSymbol& s1, const BivariateSymbol& s2);

enum class PerturbationSign { minus, plus };

/// The scalar functions of the perturbation symbol. fprime is optional and
/// only used by the divided-difference singularity policy.
struct PerturbationFunctions {
    RealFunction f;
    std::optional<RealFunction> fprime;
    RealFunction g_a = [](double) { return 1.0; };
    RealFunction g_b = [](double) { return 1.0; };
    RealFunction h_a = [](double) { return 1.0; };
    RealFunction h_b = [](double) { return 1.0; };
};

struct PerturbationExponents {
    unsigned m_a = 1, n_a = 1, k_a = 1;
    unsigned m_b = 1, n_b = 1, k_b = 1;
};

/// Builds
///   psi(a, b) = h_A(a^nA)/g_A(a^mA) * [f(a^kA) -+ f(b^kB)]/[a^kA -+ b^kB]
///               * h_B(b^nB)/g_B(b^mB)
/// on Sp(E_A) x Sp(E_B) and 0 elsewhere. The divided-difference policy is
/// active only for the minus variant; the plus variant throws DivisionError
/// when a^kA + b^kB vanishes. g_A, g_B are validated against the supplied
/// spectra up front.
BivariateSymbol make_perturbation_symbol(const PerturbationFunctions& fns,
                                         const PerturbationExponents& exps,
                                         std::vector<double> sp_a, std::vector<double> sp_b,
                                         PerturbationSign sign,
                                         double dd_tol = kDividedDifferenceTol);

/// Finite factorized representation of a symbol:
///   psi(a, b) ~= sum_k weights[k] * f_a(nodes[k], a) * f_b(nodes[k], b),
/// a discretization of the integral form over (Sigma, mu). sup_a / sup_b
/// record per-node sup-norms of the factors; their weighted sum is the
/// representation's Psi-norm upper estimate.
struct FactorizedRepresentation {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> sup_a;
    std::vector<double> sup_b;
    std::function<Complex(double, double)> f_a;  // (sigma, lambda)
    std::function<Complex(double, double)> f_b;
    double certified_error = 0.0;  // pointwise |discretized - exact| bound on the target box

    double norm_estimate() const {
        double s = 0.0;
        for (std::size_t k = 0; k < weights.size(); ++k) s += weights[k] * sup_a[k] * sup_b[k];
        return s;
    }
};

}  // namespace pdti
