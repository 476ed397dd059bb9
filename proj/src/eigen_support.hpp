#pragma once

#include "phaseless/matrix.hpp"

#include <Eigen/Dense>

namespace phaseless {

inline Eigen::MatrixXcd to_complex_eigen(const PhasedMatrix& B) {
    Eigen::MatrixXcd M(B.rows(), B.cols());
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j)
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = B.entry(i, j);
    return M;
}

inline Eigen::MatrixXd to_real_eigen(const RatMatrix& A) {
    Eigen::MatrixXd M(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(A(i, j));
    return M;
}

} // namespace phaseless
