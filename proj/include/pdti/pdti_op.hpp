#pragma once

#include <optional>

#include "pdti/symbol.hpp"

namespace pdti {

/// T_psi(X) = sum_{i,j} psi(lambda_{A,i}, lambda_{B,j}) P_{A,i} * X * P_{B,j}.
///
/// Computed in the eigenbases: with U_A, U_B the unfolded eigenvector
/// matrices this is U_A [Psi o (U_A^H X U_B)] U_B^H, the same double sum
/// reassociated. The literal projection sum is kept in pdti::reference.
DenseTensor pdti_apply_spectral(const BivariateSymbol& symbol, const EigenDecomposition& da,
                                const EigenDecomposition& db, const DenseTensor& x);

/// Quadrature form: sum_k w_k F_{A,k} * X * F_{B,k} with
/// F_{A,k} = sum_i f_a(sigma_k, lambda_{A,i}) P_{A,i}. Evaluated through the
/// node-collapsed effective symbol; the literal node loop is in
/// pdti::reference.
DenseTensor pdti_apply_quadrature(const FactorizedRepresentation& rep,
                                  const EigenDecomposition& da, const EigenDecomposition& db,
                                  const DenseTensor& x);

/// A T_psi bound to fixed decompositions. May materialize its
/// total^2 x total^2 action for repeated application; the cached and direct
/// paths agree up to summation order.
class PdtiOperator {
  public:
    PdtiOperator(BivariateSymbol symbol, EigenDecomposition da, EigenDecomposition db,
                 bool materialize = false);

    DenseTensor apply(const DenseTensor& x) const;
    void materialize();
    bool materialized() const { return matrix_.has_value(); }
    const Eigen::MatrixXcd& matrix() const;

    const EigenDecomposition& decomp_a() const { return da_; }
    const EigenDecomposition& decomp_b() const { return db_; }

  private:
    BivariateSymbol symbol_;
    EigenDecomposition da_;
    EigenDecomposition db_;
    std::optional<Eigen::MatrixXcd> matrix_;
};

// --- residual checks --------------------------------------------------------

/// || T_{psi1 psi2}(X) - T_{psi1}(T_{psi2}(X)) ||
double homomorphism_residual(const BivariateSymbol& s1, const BivariateSymbol& s2,
                             const EigenDecomposition& da, const EigenDecomposition& db,
                             const DenseTensor& x);

/// Tr(T_psi(X) * Y); vanishes when psi vanishes on Sp(A) x Sp(B).
Complex kernel_zero_residual(const BivariateSymbol& symbol, const EigenDecomposition& da,
                             const EigenDecomposition& db, const DenseTensor& x,
                             const DenseTensor& y);

/// Relative spectral-norm gap between the two sides of the perturbation
/// identity
///   H_A (F_A X -+ X F_B) H_B  =  T_psi(G_A (E_A^k X -+ X E_B^k) G_B),
/// with H = h(E^n), G = g(E^m), F = f(E^k) by functional calculus and psi
/// from make_perturbation_symbol. Returns ||L - R|| / max(||L||, ||R||)
/// (absolute when both sides vanish).
double perturbation_residual(const PerturbationFunctions& fns, const PerturbationExponents& exps,
                             const DenseTensor& ea, const DenseTensor& eb, const DenseTensor& x,
                             PerturbationSign sign);

namespace reference {

/// Literal double sum over projection pairs, serial.
DenseTensor pdti_double_sum(const BivariateSymbol& symbol, const EigenDecomposition& da,
                            const EigenDecomposition& db, const DenseTensor& x);

/// Literal node loop over the factorized representation, serial.
DenseTensor pdti_quadrature_nodes(const FactorizedRepresentation& rep,
                                  const EigenDecomposition& da, const EigenDecomposition& db,
                                  const DenseTensor& x);

}  // namespace reference

}  // namespace pdti
