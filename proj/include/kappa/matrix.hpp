#pragma once

#include <cstddef>
#include <vector>

namespace kappa {

// Dense row-major square matrix. Desk scale: N up to ~1e4, O(N^2) memory
// accepted by design; no sparse path.
template <typename T>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

    std::size_t dim() const { return n_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

private:
    std::size_t n_ = 0;
    std::vector<T> data_;
};

}  // namespace kappa
