#pragma once

#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "pdti/errors.hpp"

namespace pdti {

/// Mode list (I_1, ..., I_N) of a square order-2N tensor. `total()` is the
/// side length I_1 * ... * I_N of the square unfolding.
class Shape {
  public:
    explicit Shape(std::vector<std::size_t> modes) : modes_(std::move(modes)) {
        if (modes_.empty()) throw ParameterError("Shape: mode list must be nonempty");
        total_ = 1;
        for (std::size_t m : modes_) {
            if (m < 1) throw ParameterError("Shape: every mode must be >= 1");
            total_ *= m;
        }
    }

    const std::vector<std::size_t>& modes() const { return modes_; }
    std::size_t order() const { return modes_.size(); }
    std::size_t total() const { return total_; }

    bool operator==(const Shape& other) const { return modes_ == other.modes_; }
    bool operator!=(const Shape& other) const { return !(*this == other); }

    /// Row-major linearization of one N-tuple of 0-based indices.
    std::size_t linear_index(std::span<const std::size_t> multi) const {
        std::size_t lin = 0;
        for (std::size_t k = 0; k < modes_.size(); ++k) lin = lin * modes_[k] + multi[k];
        return lin;
    }

    /// Inverse of linear_index.
    std::vector<std::size_t> multi_index(std::size_t linear) const {
        std::vector<std::size_t> multi(modes_.size());
        for (std::size_t k = modes_.size(); k-- > 0;) {
            multi[k] = linear % modes_[k];
            linear /= modes_[k];
        }
        return multi;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t k = 0; k < modes_.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(modes_[k]);
        }
        return s + ")";
    }

  private:
    std::vector<std::size_t> modes_;
    std::size_t total_ = 0;
};

}  // namespace pdti
