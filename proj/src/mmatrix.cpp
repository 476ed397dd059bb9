#include "phaseless/mmatrix.hpp"

#include "phaseless/lp.hpp"

#include "eigen_support.hpp"

#include <Eigen/Eigenvalues>

namespace phaseless {

std::vector<Rat> leading_principal_minors(const ComparisonMatrix& Z) {
    return leading_minors(Z.values());
}

bool verify_positive_vector(const ComparisonMatrix& Z, const std::vector<Rat>& x) {
    std::size_t n = Z.size();
    if (x.size() != n) return false;
    for (const auto& v : x)
        if (v < 0) return false;
    for (std::size_t i = 0; i < n; ++i) {
        Rat row(0);
        for (std::size_t j = 0; j < n; ++j) row += Z(i, j) * x[j];
        if (row <= 0) return false;
    }
    return true;
}

bool verify_dominance_scaling(const ComparisonMatrix& Z, const std::vector<Rat>& d) {
    std::size_t n = Z.size();
    if (d.size() != n) return false;
    for (const auto& v : d)
        if (v <= 0) return false;
    for (std::size_t i = 0; i < n; ++i) {
        Rat diag = abs_rat(Z(i, i) * d[i]);
        Rat rest(0);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) rest += abs_rat(Z(i, j) * d[j]);
        if (diag <= rest) return false;
    }
    return true;
}

namespace {

// The shared LP behind (ii) and (iii): x >= 0 with Zx >= 1. Any solution has
// every coordinate strictly positive, since z_ii x_i >= 1 + sum |z_ij| x_j.
LPOutcome positive_vector_lp(const ComparisonMatrix& Z) {
    std::size_t n = Z.size();
    LinearProgram lp;
    lp.nonneg.assign(n, true);
    lp.G = RatMatrix(n, n);
    lp.h.assign(n, Rat(-1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) lp.G(i, j) = -Z(i, j);
    lp.E = RatMatrix(0, n);
    return lp_feasible(lp);
}

MMatrixReport minor_method(const ComparisonMatrix& Z, MMatrixMethod method) {
    MMatrixReport rep;
    rep.method = method;
    std::size_t n = Z.size();
    if (method == MMatrixMethod::ReducedMinors) {
        for (std::size_t i = 0; i < n; ++i)
            if (Z(i, i) <= 0) {
                rep.verdict = false;
                return rep;
            }
        // Sizes >= 3 suffice alongside a positive diagonal, except that the
        // 2 x 2 case has no such minor and needs its determinant checked.
        std::size_t first = (n == 2) ? 2 : 3;
        rep.verdict = true;
        for (std::size_t k = first; k <= n; ++k) {
            rep.minors.push_back(det_exact(Z.values().leading(k)));
            if (rep.minors.back() <= 0) {
                rep.verdict = false;
                break;
            }
        }
        return rep;
    }
    rep.minors = leading_principal_minors(Z);
    rep.verdict = true;
    for (const auto& d : rep.minors)
        if (d <= 0) {
            rep.verdict = false;
            break;
        }
    return rep;
}

} // namespace

MMatrixReport is_nonsingular_m_matrix(const ComparisonMatrix& Z, MMatrixMethod method) {
    MMatrixReport rep;
    rep.method = method;
    switch (method) {
        case MMatrixMethod::LeadingMinors:
        case MMatrixMethod::ReducedMinors:
            return minor_method(Z, method);
        case MMatrixMethod::PositiveVector:
        case MMatrixMethod::DominanceScaling: {
            LPOutcome out = positive_vector_lp(Z);
            rep.verdict = out.feasible;
            if (out.feasible) rep.certificate = out.point;
            return rep;
        }
        case MMatrixMethod::Eigenvalue: {
            // Z = sI - N with N nonnegative; the smallest real eigenvalue of Z
            // is s - rho(N).
            std::size_t n = Z.size();
            Eigen::MatrixXd Zd = to_real_eigen(Z.values());
            double s = 0.0, scale = 1.0;
            for (std::size_t i = 0; i < n; ++i) {
                s = std::max(s, Zd(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
                for (std::size_t j = 0; j < n; ++j)
                    scale = std::max(scale, std::abs(Zd(static_cast<Eigen::Index>(i),
                                                        static_cast<Eigen::Index>(j))));
            }
            Eigen::MatrixXd N = s * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                              static_cast<Eigen::Index>(n)) -
                                Zd;
            Eigen::EigenSolver<Eigen::MatrixXd> eig(N, false);
            double rho = 0.0;
            for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k)
                rho = std::max(rho, std::abs(eig.eigenvalues()(k)));
            rep.verdict = (s - rho) > 1e-9 * scale;
            return rep;
        }
    }
    throw DomainError("unknown m-matrix method");
}

} // namespace phaseless
