#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "pdti/shape.hpp"

namespace pdti {

using Complex = std::complex<double>;

/// Dense order-2N complex tensor on I_1 x ... x I_N x I_1 x ... x I_N.
///
/// Entries are stored in the frozen linearization: both N-tuples are
/// flattened row-major over (i_1, ..., i_N), and the entry for
/// (row tuple, column tuple) lives at entries[row * total + col]. The stored
/// buffer therefore *is* the square unfolding, row-major.
class DenseTensor {
  public:
    explicit DenseTensor(Shape shape)
        : shape_(std::move(shape)), entries_(shape_.total() * shape_.total()) {}

    DenseTensor(Shape shape, std::vector<Complex> entries)
        : shape_(std::move(shape)), entries_(std::move(entries)) {
        if (entries_.size() != shape_.total() * shape_.total())
            throw DimensionError("DenseTensor: entry count must equal total^2");
    }

    static DenseTensor identity(const Shape& shape);

    const Shape& shape() const { return shape_; }
    std::size_t side() const { return shape_.total(); }

    Complex& at(std::size_t row, std::size_t col) { return entries_[row * side() + col]; }
    const Complex& at(std::size_t row, std::size_t col) const {
        return entries_[row * side() + col];
    }

    /// Access by the two N-tuples (i_1..i_N, j_1..j_N).
    Complex& entry(std::span<const std::size_t> i, std::span<const std::size_t> j) {
        return at(shape_.linear_index(i), shape_.linear_index(j));
    }
    const Complex& entry(std::span<const std::size_t> i, std::span<const std::size_t> j) const {
        return at(shape_.linear_index(i), shape_.linear_index(j));
    }

    std::span<const Complex> entries() const { return entries_; }
    std::span<Complex> entries() { return entries_; }

  private:
    Shape shape_;
    std::vector<Complex> entries_;
};

// --- arithmetic -----------------------------------------------------------

DenseTensor add(const DenseTensor& x, const DenseTensor& y);
DenseTensor subtract(const DenseTensor& x, const DenseTensor& y);
DenseTensor scale(Complex c, const DenseTensor& x);

/// Einstein product: contraction of the trailing N modes of x with the
/// leading N modes of y. Equals the matrix product of the unfoldings.
/// OpenMP-parallel over output rows; bitwise deterministic for any thread
/// count (each entry is reduced serially by one thread).
DenseTensor einstein_product(const DenseTensor& x, const DenseTensor& y);

DenseTensor conjugate_transpose(const DenseTensor& x);
Complex trace(const DenseTensor& x);
Complex inner_product(const DenseTensor& x, const DenseTensor& y);

double frobenius_norm(const DenseTensor& x);
/// Largest singular value of the unfolding.
double spectral_norm(const DenseTensor& x);

/// Positive-semidefinite square root of X^H * X.
DenseTensor abs_tensor(const DenseTensor& a);
DenseTensor commutator(const DenseTensor& a, const DenseTensor& b);

/// Integer Einstein power (k >= 0; k = 0 gives the identity tensor).
DenseTensor einstein_power(const DenseTensor& x, unsigned k);

// --- unfolding ------------------------------------------------------------

/// Bijection onto total x total operators; an exact algebra isomorphism.
Eigen::MatrixXcd unfold(const DenseTensor& x);
DenseTensor fold(const Eigen::MatrixXcd& m, const Shape& shape);

inline DenseTensor operator+(const DenseTensor& x, const DenseTensor& y) { return add(x, y); }
inline DenseTensor operator-(const DenseTensor& x, const DenseTensor& y) { return subtract(x, y); }
inline DenseTensor operator*(Complex c, const DenseTensor& x) { return scale(c, x); }
inline DenseTensor operator*(double c, const DenseTensor& x) { return scale(Complex(c, 0.0), x); }

namespace reference {

/// Serial contraction straight from the Einstein-product definition,
/// enumerating all three N-tuples. Kept as the oracle for the parallel kernel.
DenseTensor einstein_product_loops(const DenseTensor& x, const DenseTensor& y);

}  // namespace reference

}  // namespace pdti
