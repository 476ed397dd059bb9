#pragma once

#include "phaseless/errors.hpp"
#include "phaseless/rational.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace phaseless {

// Dense rational matrix, row major.
class RatMatrix {
  public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}
    RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries);

    static RatMatrix identity(std::size_t n);
    static RatMatrix constant(std::size_t rows, std::size_t cols, const Rat& value);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Rat& at(std::size_t i, std::size_t j);
    const Rat& at(std::size_t i, std::size_t j) const;

    RatMatrix transpose() const;
    RatMatrix submatrix(const std::vector<std::size_t>& row_idx,
                        const std::vector<std::size_t>& col_idx) const;
    RatMatrix select_columns(const std::vector<std::size_t>& col_idx) const;
    RatMatrix select_rows(const std::vector<std::size_t>& row_idx) const;
    RatMatrix leading(std::size_t k) const;
    std::vector<Rat> column(std::size_t j) const;
    std::vector<Rat> row(std::size_t i) const;

    bool operator==(const RatMatrix& other) const;

  private:
    std::size_t rows_, cols_;
    std::vector<Rat> data_;
};

// Entrywise nonnegative rational matrix.
class NonnegMatrix {
  public:
    NonnegMatrix() = default;
    explicit NonnegMatrix(RatMatrix values);

    static NonnegMatrix constant(std::size_t rows, std::size_t cols, const Rat& value);
    static NonnegMatrix identity(std::size_t n);

    std::size_t rows() const { return values_.rows(); }
    std::size_t cols() const { return values_.cols(); }
    const Rat& operator()(std::size_t i, std::size_t j) const { return values_(i, j); }
    const RatMatrix& values() const { return values_; }

    NonnegMatrix transpose() const;
    NonnegMatrix select_columns(const std::vector<std::size_t>& col_idx) const;
    NonnegMatrix select_rows(const std::vector<std::size_t>& row_idx) const;
    std::vector<Rat> column(std::size_t j) const { return values_.column(j); }
    std::vector<Rat> row(std::size_t i) const { return values_.row(i); }

    bool operator==(const NonnegMatrix& other) const { return values_ == other.values_; }

  private:
    RatMatrix values_;
};

// Square matrix with nonnegative diagonal and nonpositive off-diagonal
// (a Z-matrix with the sign pattern of a comparison matrix).
class ComparisonMatrix {
  public:
    explicit ComparisonMatrix(RatMatrix values);

    std::size_t size() const { return values_.rows(); }
    const Rat& operator()(std::size_t i, std::size_t j) const { return values_(i, j); }
    const RatMatrix& values() const { return values_; }

  private:
    RatMatrix values_;
};

// M(A): keeps |a_ii| on the diagonal, negates moduli elsewhere.
ComparisonMatrix comparison_matrix(const NonnegMatrix& A);
// Comparison matrix of A*P where P maps column j of the product to column
// sigma[j] of A.
ComparisonMatrix comparison_matrix(const NonnegMatrix& A, const std::vector<std::size_t>& sigma);

// Complex matrix stored as nonnegative modulus plus phases in [0, 2pi).
// Entries with zero modulus carry phase 0.
class PhasedMatrix {
  public:
    PhasedMatrix() = default;
    PhasedMatrix(NonnegMatrix modulus, std::vector<double> phases);

    static PhasedMatrix real(NonnegMatrix modulus);

    std::size_t rows() const { return modulus_.rows(); }
    std::size_t cols() const { return modulus_.cols(); }
    const NonnegMatrix& modulus() const { return modulus_; }
    double phase(std::size_t i, std::size_t j) const { return phases_[i * cols() + j]; }
    const std::vector<double>& phases() const { return phases_; }
    std::complex<double> entry(std::size_t i, std::size_t j) const;

    // Multiplies column j by e^{i delta}; phases stay normalized.
    void rotate_column(std::size_t j, double delta);

    PhasedMatrix transpose() const;

  private:
    NonnegMatrix modulus_;
    std::vector<double> phases_;
};

// Exact rank by fraction-free (Bareiss) elimination with full pivoting.
std::size_t rational_rank(const RatMatrix& A);
inline std::size_t rational_rank(const NonnegMatrix& A) { return rational_rank(A.values()); }

// Exact determinant of a square rational matrix.
Rat det_exact(const RatMatrix& A);

// det of the leading k x k blocks, k = 1..n.
std::vector<Rat> leading_minors(const RatMatrix& A);

NonnegMatrix hadamard_product(const NonnegMatrix& A, const NonnegMatrix& B);
inline NonnegMatrix hadamard_square(const NonnegMatrix& A) { return hadamard_product(A, A); }

// Entrywise power. Integer exponents are exact; fractional ones go through
// double pow and are re-rationalized at `rtol`.
NonnegMatrix hadamard_power(const NonnegMatrix& A, const Rat& alpha, double rtol = 1e-12);

// Number of singular values above rel_tol * sigma_max (complex SVD).
std::size_t numerical_rank(const PhasedMatrix& B, double rel_tol = 1e-9);
std::vector<double> singular_values(const PhasedMatrix& B);

// Independent rank route: complex Gaussian elimination with modulus pivoting.
// Pivots are counted while above rel_tol times the largest initial modulus.
std::size_t elimination_rank(const PhasedMatrix& B, double rel_tol = 1e-9);

} // namespace phaseless
