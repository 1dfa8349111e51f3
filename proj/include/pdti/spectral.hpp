#pragma once

#include <functional>
#include <vector>

#include "pdti/tensor.hpp"

namespace pdti {

using RealFunction = std::function<double(double)>;

/// Eigenvalue / rank-one projection pairs of a Hermitian tensor,
/// eigenvalues sorted descending. `basis` keeps the unfolded unit
/// eigenvectors as columns (same order) for fast functional calculus;
/// eigenvector phases are arbitrary, only the projections are contractual.
struct EigenDecomposition {
    Shape shape;
    std::vector<double> eigenvalues;
    std::vector<DenseTensor> projections;
    Eigen::MatrixXcd basis;

    std::size_t size() const { return eigenvalues.size(); }
    DenseTensor reconstruct() const;
};

/// Default relative tolerance for the Hermitian symmetry check.
inline constexpr double kDefaultSymmetryTol = 1e-10;

/// Decompose a Hermitian tensor. Inputs within tol of Hermitian are
/// symmetrized as (H + H^H)/2 first; anything further off throws.
EigenDecomposition eigendecompose(const DenseTensor& h, double tol = kDefaultSymmetryTol);

/// Spectral mapping: sum_i f(lambda_i^m) P_i.
DenseTensor apply_scalar_function(const RealFunction& f, const EigenDecomposition& d,
                                  unsigned m = 1);
DenseTensor apply_scalar_function(const RealFunction& f, const DenseTensor& h, unsigned m = 1);

/// Real power via functional calculus; requires a positive spectrum when p
/// is not a nonnegative integer.
DenseTensor hermitian_power(const EigenDecomposition& d, double p);
DenseTensor hermitian_power(const DenseTensor& h, double p);

bool is_positive_definite(const DenseTensor& h, double tol = kDefaultSymmetryTol);

}  // namespace pdti
