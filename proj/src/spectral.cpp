#include "pdti/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

namespace pdti {

DenseTensor EigenDecomposition::reconstruct() const {
    DenseTensor acc(shape);
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        acc = add(acc, scale(eigenvalues[i], projections[i]));
    return acc;
}

EigenDecomposition eigendecompose(const DenseTensor& h, double tol) {
    const std::size_t n = h.side();
    Eigen::MatrixXcd m = unfold(h);
    const double scale_f = m.norm();
    const double asym = (m - m.adjoint()).norm();
    if (asym > tol * std::max(scale_f, 1e-300) && asym > 0.0)
        throw SymmetryError("eigendecompose: input is not Hermitian within tolerance");
    m = 0.5 * (m + m.adjoint().eval());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success)
        throw EvaluationError("eigendecompose: eigensolver failed to converge");

    // Eigen returns ascending order; the contract is descending.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    const auto& vals = solver.eigenvalues();
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return vals(a) > vals(b); });

    EigenDecomposition d{h.shape(), {}, {}, Eigen::MatrixXcd(n, n)};
    d.eigenvalues.reserve(n);
    d.projections.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        d.eigenvalues.push_back(vals(perm[i]));
        Eigen::VectorXcd u = solver.eigenvectors().col(perm[i]);
        d.basis.col(i) = u;
        d.projections.push_back(fold(u * u.adjoint(), h.shape()));
    }
    return d;
}

DenseTensor apply_scalar_function(const RealFunction& f, const EigenDecomposition& d,
                                  unsigned m) {
    const std::size_t n = d.size();
    Eigen::VectorXcd fvals(n);
    for (std::size_t i = 0; i < n; ++i) {
        double lam = d.eigenvalues[i];
        double powered = 1.0;
        for (unsigned k = 0; k < m; ++k) powered *= lam;
        const double v = f(powered);
        if (!std::isfinite(v))
            throw EvaluationError("apply_scalar_function: non-finite value on the spectrum");
        fvals(i) = v;
    }
    Eigen::MatrixXcd out = d.basis * fvals.asDiagonal() * d.basis.adjoint();
    return fold(out, d.shape);
}

DenseTensor apply_scalar_function(const RealFunction& f, const DenseTensor& h, unsigned m) {
    return apply_scalar_function(f, eigendecompose(h), m);
}

DenseTensor hermitian_power(const EigenDecomposition& d, double p) {
    return apply_scalar_function([p](double x) { return std::pow(x, p); }, d, 1);
}

DenseTensor hermitian_power(const DenseTensor& h, double p) {
    return hermitian_power(eigendecompose(h), p);
}

bool is_positive_definite(const DenseTensor& h, double tol) {
    EigenDecomposition d = eigendecompose(h, tol);
    return d.eigenvalues.back() > tol;
}

}  // namespace pdti
