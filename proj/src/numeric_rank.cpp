#include "phaseless/matrix.hpp"

#include "eigen_support.hpp"

namespace phaseless {

std::vector<double> singular_values(const PhasedMatrix& B) {
    if (B.rows() == 0 || B.cols() == 0) return {};
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_complex_eigen(B));
    const auto& sv = svd.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

std::size_t numerical_rank(const PhasedMatrix& B, double rel_tol) {
    if (rel_tol < 0) throw DomainError("rank tolerance must be nonnegative");
    auto sv = singular_values(B);
    if (sv.empty() || sv.front() == 0.0) return 0;
    double cut = rel_tol * sv.front();
    std::size_t rank = 0;
    for (double s : sv)
        if (s > cut) ++rank;
    return rank;
}

} // namespace phaseless
