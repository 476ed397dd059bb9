#pragma once

#include "phaseless/matrix.hpp"

#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace tests {

using phaseless::NonnegMatrix;
using phaseless::Rat;
using phaseless::RatMatrix;

inline RatMatrix rat_matrix(std::size_t rows, std::size_t cols, const std::vector<long>& v) {
    std::vector<Rat> entries;
    entries.reserve(v.size());
    for (long x : v) entries.emplace_back(x);
    return RatMatrix(rows, cols, std::move(entries));
}

inline NonnegMatrix nonneg(std::size_t rows, std::size_t cols, const std::vector<long>& v) {
    return NonnegMatrix(rat_matrix(rows, cols, v));
}

// 4x4 derangement matrix: zero diagonal, ones elsewhere.
inline NonnegMatrix derangement4() {
    return nonneg(4, 4, {0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0});
}

// 5x5 matrix that is nonmaximal although one comparison determinant is positive.
inline NonnegMatrix counterexample5() {
    return nonneg(5, 5,
                  {7, 4, 9, 10, 0, 9, 2, 3, 0, 3, 3, 10, 6, 4, 8, 0, 4, 1, 6, 4, 0, 3, 3, 10, 2});
}

// Circulant [[1,x,y],[y,1,x],[x,y,1]].
inline NonnegMatrix circulant3(const Rat& x, const Rat& y) {
    RatMatrix C(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        C(i, i) = 1;
        C(i, (i + 1) % 3) = x;
        C(i, (i + 2) % 3) = y;
    }
    return NonnegMatrix(std::move(C));
}

// I_n + J_n: twos on the diagonal, ones elsewhere.
inline NonnegMatrix identity_plus_ones(std::size_t n) {
    RatMatrix M(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M(i, j) = (i == j) ? 2 : 1;
    return NonnegMatrix(std::move(M));
}

inline NonnegMatrix random_nonneg(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                  long max_entry = 9) {
    std::uniform_int_distribution<long> entry(0, max_entry);
    RatMatrix M(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) M(i, j) = entry(rng);
    return NonnegMatrix(std::move(M));
}

inline std::string data_path(const std::string& name) {
    return std::string(TEST_DATA_DIR) + "/" + name;
}

} // namespace tests
