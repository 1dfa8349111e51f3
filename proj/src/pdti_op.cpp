#include "pdti/pdti_op.hpp"

#include <cmath>
#include <cstdint>

namespace pdti {

namespace {

void require_compatible(const EigenDecomposition& da, const EigenDecomposition& db,
                        const DenseTensor& x, const char* op) {
    if (da.shape != x.shape() || db.shape != x.shape())
        throw DimensionError(std::string(op) + ": decomposition/input shapes disagree");
}

Eigen::MatrixXcd symbol_table(const BivariateSymbol& symbol, const EigenDecomposition& da,
                              const EigenDecomposition& db) {
    const std::size_t n = da.size();
    Eigen::MatrixXcd psi(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Complex v = symbol(da.eigenvalues[i], db.eigenvalues[j]);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw EvaluationError("pdti: symbol non-finite on a spectrum pair");
            psi(i, j) = v;
        }
    return psi;
}

DenseTensor apply_with_table(const Eigen::MatrixXcd& psi, const EigenDecomposition& da,
                             const EigenDecomposition& db, const DenseTensor& x) {
    const Eigen::MatrixXcd inner = da.basis.adjoint() * unfold(x) * db.basis;
    const Eigen::MatrixXcd out = da.basis * psi.cwiseProduct(inner) * db.basis.adjoint();
    return fold(out, x.shape());
}

}  // namespace

DenseTensor pdti_apply_spectral(const BivariateSymbol& symbol, const EigenDecomposition& da,
                                const EigenDecomposition& db, const DenseTensor& x) {
    require_compatible(da, db, x, "pdti_apply_spectral");
    return apply_with_table(symbol_table(symbol, da, db), da, db, x);
}

DenseTensor pdti_apply_quadrature(const FactorizedRepresentation& rep,
                                  const EigenDecomposition& da, const EigenDecomposition& db,
                                  const DenseTensor& x) {
    require_compatible(da, db, x, "pdti_apply_quadrature");
    const std::size_t n = da.size();
    // Collapse the node sum into an effective symbol table:
    // psi_eff(i, j) = sum_k w_k f_a(s_k, lam_{A,i}) f_b(s_k, lam_{B,j}).
    Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t k = 0; k < rep.nodes.size(); ++k) {
        if (rep.weights[k] == 0.0) continue;
        Eigen::VectorXcd fa(n), fb(n);
        for (std::size_t i = 0; i < n; ++i) {
            fa(i) = rep.f_a(rep.nodes[k], da.eigenvalues[i]);
            fb(i) = rep.f_b(rep.nodes[k], db.eigenvalues[i]);
        }
        psi += rep.weights[k] * (fa * fb.transpose());
    }
    if (!psi.allFinite())
        throw EvaluationError("pdti_apply_quadrature: non-finite factor values");
    return apply_with_table(psi, da, db, x);
}

PdtiOperator::PdtiOperator(BivariateSymbol symbol, EigenDecomposition da, EigenDecomposition db,
                           bool do_materialize)
    : symbol_(std::move(symbol)), da_(std::move(da)), db_(std::move(db)) {
    if (da_.shape != db_.shape)
        throw DimensionError("PdtiOperator: decompositions must share a shape");
    if (do_materialize) materialize();
}

void PdtiOperator::materialize() {
    if (matrix_) return;
    const std::int64_t n = static_cast<std::int64_t>(da_.size());
    const Eigen::MatrixXcd psi = symbol_table(symbol_, da_, db_);
    // M[(r,c),(r',c')] = sum_{ij} psi_ij UA(r,i) conj(UA(r',i)) UB(c',j) conj(UB(c,j)),
    // acting on row-major vec(X).
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n * n, n * n);
    for (std::int64_t i = 0; i < n; ++i) {
        const Eigen::MatrixXcd pa = da_.basis.col(i) * da_.basis.col(i).adjoint();
        for (std::int64_t j = 0; j < n; ++j) {
            const Eigen::MatrixXcd pbt =
                (db_.basis.col(j) * db_.basis.col(j).adjoint()).transpose();
            const Complex w = psi(i, j);
            if (w == Complex(0.0, 0.0)) continue;
            for (std::int64_t r = 0; r < n; ++r)
                for (std::int64_t c = 0; c < n; ++c)
                    for (std::int64_t rp = 0; rp < n; ++rp)
                        for (std::int64_t cp = 0; cp < n; ++cp)
                            m(r * n + c, rp * n + cp) += w * pa(r, rp) * pbt(c, cp);
        }
    }
    matrix_ = std::move(m);
}

const Eigen::MatrixXcd& PdtiOperator::matrix() const {
    if (!matrix_) throw ParameterError("PdtiOperator: matrix() requires materialize()");
    return *matrix_;
}

DenseTensor PdtiOperator::apply(const DenseTensor& x) const {
    if (x.shape() != da_.shape) throw DimensionError("PdtiOperator::apply: shape mismatch");
    if (!matrix_) return pdti_apply_spectral(symbol_, da_, db_, x);
    const std::size_t n = x.side();
    Eigen::VectorXcd vec(n * n);
    for (std::size_t k = 0; k < n * n; ++k) vec(k) = x.entries()[k];
    Eigen::VectorXcd out = (*matrix_) * vec;
    DenseTensor result(x.shape());
    for (std::size_t k = 0; k < n * n; ++k) result.entries()[k] = out(k);
    return result;
}

double homomorphism_residual(const BivariateSymbol& s1, const BivariateSymbol& s2,
                             const EigenDecomposition& da, const EigenDecomposition& db,
                             const DenseTensor& x) {
    const DenseTensor lhs = pdti_apply_spectral(symbol_product(s1, s2), da, db, x);
    const DenseTensor rhs = pdti_apply_spectral(s1, da, db, pdti_apply_spectral(s2, da, db, x));
    return spectral_norm(subtract(lhs, rhs));
}

Complex kernel_zero_residual(const BivariateSymbol& symbol, const EigenDecomposition& da,
                             const EigenDecomposition& db, const DenseTensor& x,
                             const DenseTensor& y) {
    return trace(einstein_product(pdti_apply_spectral(symbol, da, db, x), y));
}

double perturbation_residual(const PerturbationFunctions& fns, const PerturbationExponents& exps,
                             const DenseTensor& ea, const DenseTensor& eb, const DenseTensor& x,
                             PerturbationSign sign) {
    const EigenDecomposition da = eigendecompose(ea);
    const EigenDecomposition db = eigendecompose(eb);

    const DenseTensor ha = apply_scalar_function(fns.h_a, da, exps.n_a);
    const DenseTensor hb = apply_scalar_function(fns.h_b, db, exps.n_b);
    const DenseTensor ga = apply_scalar_function(fns.g_a, da, exps.m_a);
    const DenseTensor gb = apply_scalar_function(fns.g_b, db, exps.m_b);
    const DenseTensor fa = apply_scalar_function(fns.f, da, exps.k_a);
    const DenseTensor fb = apply_scalar_function(fns.f, db, exps.k_b);
    const DenseTensor eka = einstein_power(ea, exps.k_a);
    const DenseTensor ekb = einstein_power(eb, exps.k_b);

    const double s = sign == PerturbationSign::minus ? -1.0 : 1.0;
    auto sandwich = [](const DenseTensor& l, const DenseTensor& mid, const DenseTensor& r) {
        return einstein_product(einstein_product(l, mid), r);
    };
    const DenseTensor left =
        sandwich(ha, add(einstein_product(fa, x), s * einstein_product(x, fb)), hb);

    const BivariateSymbol psi = make_perturbation_symbol(fns, exps, da.eigenvalues,
                                                         db.eigenvalues, sign);
    const DenseTensor arg =
        sandwich(ga, add(einstein_product(eka, x), s * einstein_product(x, ekb)), gb);
    const DenseTensor right = pdti_apply_spectral(psi, da, db, arg);

    const double gap = spectral_norm(subtract(left, right));
    const double denom = std::max(spectral_norm(left), spectral_norm(right));
    return denom > 1e-30 ? gap / denom : gap;
}

namespace reference {

DenseTensor pdti_double_sum(const BivariateSymbol& symbol, const EigenDecomposition& da,
                            const EigenDecomposition& db, const DenseTensor& x) {
    require_compatible(da, db, x, "pdti_double_sum");
    DenseTensor acc(x.shape());
    for (std::size_t i = 0; i < da.size(); ++i)
        for (std::size_t j = 0; j < db.size(); ++j) {
            const Complex w = symbol(da.eigenvalues[i], db.eigenvalues[j]);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
                throw EvaluationError("pdti_double_sum: symbol non-finite on a spectrum pair");
            if (w == Complex(0.0, 0.0)) continue;
            const DenseTensor term = einstein_product(
                da.projections[i], einstein_product(x, db.projections[j]));
            acc = add(acc, scale(w, term));
        }
    return acc;
}

DenseTensor pdti_quadrature_nodes(const FactorizedRepresentation& rep,
                                  const EigenDecomposition& da, const EigenDecomposition& db,
                                  const DenseTensor& x) {
    require_compatible(da, db, x, "pdti_quadrature_nodes");
    DenseTensor acc(x.shape());
    for (std::size_t k = 0; k < rep.nodes.size(); ++k) {
        if (rep.weights[k] == 0.0) continue;
        DenseTensor fa_t(x.shape()), fb_t(x.shape());
        for (std::size_t i = 0; i < da.size(); ++i) {
            fa_t = add(fa_t, scale(rep.f_a(rep.nodes[k], da.eigenvalues[i]),
                                   da.projections[i]));
            fb_t = add(fb_t, scale(rep.f_b(rep.nodes[k], db.eigenvalues[i]),
                                   db.projections[i]));
        }
        acc = add(acc, scale(rep.weights[k],
                             einstein_product(fa_t, einstein_product(x, fb_t))));
    }
    return acc;
}

}  // namespace reference

}  // namespace pdti
