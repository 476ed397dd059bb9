#include "phaseless/matrix.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace phaseless {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw DimensionError("entry count does not match matrix shape");
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::constant(std::size_t rows, std::size_t cols, const Rat& value) {
    RatMatrix m(rows, cols);
    for (auto& e : m.data_) e = value;
    return m;
}

Rat& RatMatrix::at(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_) throw DimensionError("matrix index out of range");
    return data_[i * cols_ + j];
}

const Rat& RatMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw DimensionError("matrix index out of range");
    return data_[i * cols_ + j];
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RatMatrix RatMatrix::submatrix(const std::vector<std::size_t>& row_idx,
                               const std::vector<std::size_t>& col_idx) const {
    RatMatrix s(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i) {
        if (row_idx[i] >= rows_) throw DimensionError("row index out of range");
        for (std::size_t j = 0; j < col_idx.size(); ++j) {
            if (col_idx[j] >= cols_) throw DimensionError("column index out of range");
            s(i, j) = (*this)(row_idx[i], col_idx[j]);
        }
    }
    return s;
}

RatMatrix RatMatrix::select_columns(const std::vector<std::size_t>& col_idx) const {
    std::vector<std::size_t> all_rows(rows_);
    for (std::size_t i = 0; i < rows_; ++i) all_rows[i] = i;
    return submatrix(all_rows, col_idx);
}

RatMatrix RatMatrix::select_rows(const std::vector<std::size_t>& row_idx) const {
    std::vector<std::size_t> all_cols(cols_);
    for (std::size_t j = 0; j < cols_; ++j) all_cols[j] = j;
    return submatrix(row_idx, all_cols);
}

RatMatrix RatMatrix::leading(std::size_t k) const {
    if (k > rows_ || k > cols_) throw DimensionError("leading block larger than matrix");
    RatMatrix s(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) s(i, j) = (*this)(i, j);
    return s;
}

std::vector<Rat> RatMatrix::column(std::size_t j) const {
    if (j >= cols_) throw DimensionError("column index out of range");
    std::vector<Rat> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

std::vector<Rat> RatMatrix::row(std::size_t i) const {
    if (i >= rows_) throw DimensionError("row index out of range");
    std::vector<Rat> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
}

bool RatMatrix::operator==(const RatMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (std::size_t k = 0; k < data_.size(); ++k)
        if (data_[k] != other.data_[k]) return false;
    return true;
}

NonnegMatrix::NonnegMatrix(RatMatrix values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.rows(); ++i)
        for (std::size_t j = 0; j < values_.cols(); ++j)
            if (values_(i, j) < 0)
                throw DomainError("negative entry at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") in a nonnegative matrix");
}

NonnegMatrix NonnegMatrix::constant(std::size_t rows, std::size_t cols, const Rat& value) {
    return NonnegMatrix(RatMatrix::constant(rows, cols, value));
}

NonnegMatrix NonnegMatrix::identity(std::size_t n) {
    return NonnegMatrix(RatMatrix::identity(n));
}

NonnegMatrix NonnegMatrix::transpose() const { return NonnegMatrix(values_.transpose()); }

NonnegMatrix NonnegMatrix::select_columns(const std::vector<std::size_t>& col_idx) const {
    return NonnegMatrix(values_.select_columns(col_idx));
}

NonnegMatrix NonnegMatrix::select_rows(const std::vector<std::size_t>& row_idx) const {
    return NonnegMatrix(values_.select_rows(row_idx));
}

ComparisonMatrix::ComparisonMatrix(RatMatrix values) : values_(std::move(values)) {
    if (values_.rows() != values_.cols())
        throw DimensionError("comparison matrix must be square");
    for (std::size_t i = 0; i < values_.rows(); ++i)
        for (std::size_t j = 0; j < values_.cols(); ++j) {
            if (i == j && values_(i, j) < 0)
                throw DomainError("comparison matrix needs a nonnegative diagonal");
            if (i != j && values_(i, j) > 0)
                throw DomainError("comparison matrix needs nonpositive off-diagonal entries");
        }
}

ComparisonMatrix comparison_matrix(const NonnegMatrix& A) {
    std::vector<std::size_t> id(A.cols());
    for (std::size_t j = 0; j < id.size(); ++j) id[j] = j;
    return comparison_matrix(A, id);
}

ComparisonMatrix comparison_matrix(const NonnegMatrix& A, const std::vector<std::size_t>& sigma) {
    if (A.rows() != A.cols()) throw DimensionError("comparison matrix needs a square input");
    if (sigma.size() != A.cols()) throw DimensionError("permutation length mismatch");
    std::size_t n = A.rows();
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (sigma[j] >= n) throw DimensionError("permutation index out of range");
            const Rat& a = A(i, sigma[j]);
            m(i, j) = (i == j) ? a : Rat(-a);
        }
    return ComparisonMatrix(std::move(m));
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

double normalize_phase(double p) {
    double q = std::fmod(p, kTwoPi);
    if (q < 0) q += kTwoPi;
    if (q >= kTwoPi) q = 0.0;
    return q;
}

} // namespace

PhasedMatrix::PhasedMatrix(NonnegMatrix modulus, std::vector<double> phases)
    : modulus_(std::move(modulus)), phases_(std::move(phases)) {
    if (phases_.size() != modulus_.rows() * modulus_.cols())
        throw DimensionError("phase count does not match matrix shape");
    for (std::size_t i = 0; i < modulus_.rows(); ++i)
        for (std::size_t j = 0; j < modulus_.cols(); ++j) {
            double& p = phases_[i * modulus_.cols() + j];
            p = (modulus_(i, j) == 0) ? 0.0 : normalize_phase(p);
        }
}

PhasedMatrix PhasedMatrix::real(NonnegMatrix modulus) {
    std::vector<double> zero(modulus.rows() * modulus.cols(), 0.0);
    return PhasedMatrix(std::move(modulus), std::move(zero));
}

std::complex<double> PhasedMatrix::entry(std::size_t i, std::size_t j) const {
    double r = to_double(modulus_(i, j));
    double p = phase(i, j);
    return {r * std::cos(p), r * std::sin(p)};
}

void PhasedMatrix::rotate_column(std::size_t j, double delta) {
    if (j >= cols()) throw DimensionError("column index out of range");
    for (std::size_t i = 0; i < rows(); ++i) {
        double& p = phases_[i * cols() + j];
        p = (modulus_(i, j) == 0) ? 0.0 : normalize_phase(p + delta);
    }
}

PhasedMatrix PhasedMatrix::transpose() const {
    std::vector<double> tp(rows() * cols());
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j) tp[j * rows() + i] = phase(i, j);
    return PhasedMatrix(modulus_.transpose(), std::move(tp));
}

namespace {

// Rows scaled to integers (rank and, with the scale product, determinants are
// preserved). Returns the product of the scale factors applied.
Rat scale_rows_to_integers(const RatMatrix& A, std::vector<std::vector<Int>>& M) {
    std::size_t r = A.rows(), c = A.cols();
    M.assign(r, std::vector<Int>(c));
    Rat scale_product(1);
    for (std::size_t i = 0; i < r; ++i) {
        Int lcm(1);
        for (std::size_t j = 0; j < c; ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), A(i, j).get_den().get_mpz_t());
        for (std::size_t j = 0; j < c; ++j) {
            Rat v = A(i, j) * Rat(lcm);
            v.canonicalize();
            M[i][j] = v.get_num();
        }
        scale_product *= Rat(lcm);
    }
    return scale_product;
}

} // namespace

std::size_t rational_rank(const RatMatrix& A) {
    std::size_t r = A.rows(), c = A.cols();
    if (r == 0 || c == 0) return 0;
    std::vector<std::vector<Int>> M;
    scale_rows_to_integers(A, M);

    Int prev(1);
    std::size_t rank = 0;
    for (std::size_t k = 0; k < r && k < c; ++k) {
        std::size_t pi = k, pj = k;
        bool found = false;
        Int best(0);
        for (std::size_t i = k; i < r; ++i)
            for (std::size_t j = k; j < c; ++j) {
                Int a = abs(M[i][j]);
                if (a != 0 && (!found || a > best)) {
                    found = true;
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        if (pi != k) std::swap(M[pi], M[k]);
        if (pj != k)
            for (std::size_t i = 0; i < r; ++i) std::swap(M[i][pj], M[i][k]);
        for (std::size_t i = k + 1; i < r; ++i) {
            for (std::size_t j = k + 1; j < c; ++j) {
                Int num = M[k][k] * M[i][j] - M[i][k] * M[k][j];
                mpz_divexact(M[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
        ++rank;
    }
    return rank;
}

Rat det_exact(const RatMatrix& A) {
    if (A.rows() != A.cols()) throw DimensionError("determinant of a non-square matrix");
    std::size_t n = A.rows();
    if (n == 0) return Rat(1);
    std::vector<std::vector<Int>> M;
    Rat scale = scale_rows_to_integers(A, M);

    Int prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pi = k;
        while (pi < n && M[pi][k] == 0) ++pi;
        if (pi == n) return Rat(0);
        if (pi != k) {
            std::swap(M[pi], M[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = M[k][k] * M[i][j] - M[i][k] * M[k][j];
                mpz_divexact(M[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    Rat det(sign > 0 ? M[n - 1][n - 1] : Int(-M[n - 1][n - 1]));
    det /= scale;
    det.canonicalize();
    return det;
}

std::vector<Rat> leading_minors(const RatMatrix& A) {
    if (A.rows() != A.cols()) throw DimensionError("leading minors of a non-square matrix");
    std::vector<Rat> minors;
    minors.reserve(A.rows());
    for (std::size_t k = 1; k <= A.rows(); ++k) minors.push_back(det_exact(A.leading(k)));
    return minors;
}

NonnegMatrix hadamard_product(const NonnegMatrix& A, const NonnegMatrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw DimensionError("hadamard product shape mismatch");
    RatMatrix m(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) m(i, j) = A(i, j) * B(i, j);
    return NonnegMatrix(std::move(m));
}

NonnegMatrix hadamard_power(const NonnegMatrix& A, const Rat& alpha, double rtol) {
    if (alpha <= 0) throw DomainError("hadamard power needs a positive exponent");
    RatMatrix m(A.rows(), A.cols());
    if (alpha.get_den() == 1) {
        unsigned long e = mpz_get_ui(alpha.get_num().get_mpz_t());
        for (std::size_t i = 0; i < A.rows(); ++i)
            for (std::size_t j = 0; j < A.cols(); ++j) {
                Rat p;
                mpz_pow_ui(p.get_num().get_mpz_t(), A(i, j).get_num().get_mpz_t(), e);
                mpz_pow_ui(p.get_den().get_mpz_t(), A(i, j).get_den().get_mpz_t(), e);
                p.canonicalize();
                m(i, j) = p;
            }
    } else {
        double e = to_double(alpha);
        for (std::size_t i = 0; i < A.rows(); ++i)
            for (std::size_t j = 0; j < A.cols(); ++j) {
                if (A(i, j) == 0) continue;
                m(i, j) = rationalize(std::pow(to_double(A(i, j)), e), rtol);
            }
    }
    return NonnegMatrix(std::move(m));
}

std::size_t elimination_rank(const PhasedMatrix& B, double rel_tol) {
    if (rel_tol < 0) throw DomainError("rank tolerance must be nonnegative");
    std::size_t r = B.rows(), c = B.cols();
    std::vector<std::vector<std::complex<double>>> M(r, std::vector<std::complex<double>>(c));
    double max0 = 0.0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            M[i][j] = B.entry(i, j);
            max0 = std::max(max0, std::abs(M[i][j]));
        }
    if (max0 == 0.0) return 0;
    double cut = rel_tol * max0;

    std::size_t rank = 0;
    for (std::size_t k = 0; k < r && k < c; ++k) {
        std::size_t pi = k, pj = k;
        double best = 0.0;
        for (std::size_t i = k; i < r; ++i)
            for (std::size_t j = k; j < c; ++j)
                if (std::abs(M[i][j]) > best) {
                    best = std::abs(M[i][j]);
                    pi = i;
                    pj = j;
                }
        if (best <= cut) break;
        std::swap(M[pi], M[k]);
        if (pj != k)
            for (std::size_t i = 0; i < r; ++i) std::swap(M[i][pj], M[i][k]);
        for (std::size_t i = k + 1; i < r; ++i) {
            std::complex<double> f = M[i][k] / M[k][k];
            for (std::size_t j = k; j < c; ++j) M[i][j] -= f * M[k][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace phaseless
