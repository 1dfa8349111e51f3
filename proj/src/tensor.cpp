#include "pdti/tensor.hpp"

#include <cmath>
#include <cstdint>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace pdti {

namespace {

void require_same_shape(const DenseTensor& x, const DenseTensor& y, const char* op) {
    if (x.shape() != y.shape())
        throw DimensionError(std::string(op) + ": shape mismatch " + x.shape().to_string() +
                             " vs " + y.shape().to_string());
}

}  // namespace

DenseTensor DenseTensor::identity(const Shape& shape) {
    DenseTensor out(shape);
    for (std::size_t k = 0; k < shape.total(); ++k) out.at(k, k) = 1.0;
    return out;
}

DenseTensor add(const DenseTensor& x, const DenseTensor& y) {
    require_same_shape(x, y, "add");
    DenseTensor out(x.shape());
    auto xs = x.entries(), ys = y.entries();
    auto os = out.entries();
    for (std::size_t k = 0; k < os.size(); ++k) os[k] = xs[k] + ys[k];
    return out;
}

DenseTensor subtract(const DenseTensor& x, const DenseTensor& y) {
    require_same_shape(x, y, "subtract");
    DenseTensor out(x.shape());
    auto xs = x.entries(), ys = y.entries();
    auto os = out.entries();
    for (std::size_t k = 0; k < os.size(); ++k) os[k] = xs[k] - ys[k];
    return out;
}

DenseTensor scale(Complex c, const DenseTensor& x) {
    DenseTensor out(x.shape());
    auto xs = x.entries();
    auto os = out.entries();
    for (std::size_t k = 0; k < os.size(); ++k) os[k] = c * xs[k];
    return out;
}

DenseTensor einstein_product(const DenseTensor& x, const DenseTensor& y) {
    require_same_shape(x, y, "einstein_product");
    const std::int64_t n = static_cast<std::int64_t>(x.side());
    DenseTensor out(x.shape());
    const Complex* xp = x.entries().data();
    const Complex* yp = y.entries().data();
    Complex* op = out.entries().data();
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < n; ++r) {
        Complex* orow = op + r * n;
        for (std::int64_t k = 0; k < n; ++k) {
            const Complex xrk = xp[r * n + k];
            const Complex* yrow = yp + k * n;
            for (std::int64_t c = 0; c < n; ++c) orow[c] += xrk * yrow[c];
        }
    }
    return out;
}

DenseTensor conjugate_transpose(const DenseTensor& x) {
    const std::size_t n = x.side();
    DenseTensor out(x.shape());
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out.at(c, r) = std::conj(x.at(r, c));
    return out;
}

Complex trace(const DenseTensor& x) {
    Complex t = 0.0;
    for (std::size_t k = 0; k < x.side(); ++k) t += x.at(k, k);
    return t;
}

Complex inner_product(const DenseTensor& x, const DenseTensor& y) {
    require_same_shape(x, y, "inner_product");
    // Tr(X^H * Y), accumulated entrywise.
    Complex s = 0.0;
    auto xs = x.entries(), ys = y.entries();
    for (std::size_t k = 0; k < xs.size(); ++k) s += std::conj(xs[k]) * ys[k];
    return s;
}

double frobenius_norm(const DenseTensor& x) {
    double s = 0.0;
    for (const Complex& v : x.entries()) s += std::norm(v);
    return std::sqrt(s);
}

double spectral_norm(const DenseTensor& x) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(unfold(x));
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

DenseTensor abs_tensor(const DenseTensor& a) {
    // |A| = V diag(sigma) V^H from the SVD A = U diag(sigma) V^H.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(unfold(a), Eigen::ComputeFullV);
    Eigen::MatrixXcd v = svd.matrixV();
    Eigen::MatrixXcd m = v * svd.singularValues().asDiagonal() * v.adjoint();
    return fold(m, a.shape());
}

DenseTensor commutator(const DenseTensor& a, const DenseTensor& b) {
    require_same_shape(a, b, "commutator");
    return subtract(einstein_product(a, b), einstein_product(b, a));
}

DenseTensor einstein_power(const DenseTensor& x, unsigned k) {
    DenseTensor acc = DenseTensor::identity(x.shape());
    for (unsigned i = 0; i < k; ++i) acc = einstein_product(acc, x);
    return acc;
}

Eigen::MatrixXcd unfold(const DenseTensor& x) {
    const std::size_t n = x.side();
    Eigen::MatrixXcd m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = x.at(r, c);
    return m;
}

DenseTensor fold(const Eigen::MatrixXcd& m, const Shape& shape) {
    const std::size_t n = shape.total();
    if (static_cast<std::size_t>(m.rows()) != n || static_cast<std::size_t>(m.cols()) != n)
        throw DimensionError("fold: side length must equal shape total");
    DenseTensor out(shape);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out.at(r, c) = m(r, c);
    return out;
}

namespace reference {

DenseTensor einstein_product_loops(const DenseTensor& x, const DenseTensor& y) {
    if (x.shape() != y.shape())
        throw DimensionError("einstein_product_loops: shape mismatch");
    const Shape& sh = x.shape();
    const std::size_t n = sh.total();
    DenseTensor out(sh);
    // (X * Y)_{i,j} = sum_k x_{i,k} y_{k,j} over all N-tuples i, j, k.
    for (std::size_t il = 0; il < n; ++il) {
        auto i = sh.multi_index(il);
        for (std::size_t jl = 0; jl < n; ++jl) {
            auto j = sh.multi_index(jl);
            Complex acc = 0.0;
            for (std::size_t kl = 0; kl < n; ++kl) {
                auto k = sh.multi_index(kl);
                acc += x.entry(i, k) * y.entry(k, j);
            }
            out.entry(i, j) = acc;
        }
    }
    return out;
}

}  // namespace reference

}  // namespace pdti
