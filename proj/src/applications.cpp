#include "phaseless/applications.hpp"

#include "phaseless/errors.hpp"
#include "phaseless/rank_engine.hpp"
#include "phaseless/rational.hpp"

#include "eigen_support.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>

namespace phaseless {

NonnegMatrix slack_matrix(const PolytopeVH& P) {
    std::size_t v = P.vertices.size(), f = P.facets.size();
    std::size_t d = P.dimension();
    for (const auto& p : P.vertices)
        if (p.size() != d) throw DimensionError("vertices of mixed dimension");
    for (const auto& fac : P.facets)
        if (fac.normal.size() != d) throw DimensionError("facet normal of wrong dimension");

    RatMatrix S(v, f);
    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = 0; j < f; ++j) {
            Rat s = P.facets[j].offset;
            for (std::size_t k = 0; k < d; ++k) s -= P.facets[j].normal[k] * P.vertices[i][k];
            if (s < 0) {
                std::ostringstream msg;
                msg << "vertex " << i << " violates facet " << j;
                throw DomainError(msg.str());
            }
            S(i, j) = std::move(s);
        }
    return NonnegMatrix(std::move(S));
}

PolytopeVH ngon(std::size_t n) {
    if (n < 3) throw DomainError("an n-gon needs n >= 3");
    PolytopeVH P;
    for (std::size_t i = 0; i < n; ++i) {
        double t = 2.0 * std::numbers::pi_v<double> * static_cast<double>(i) / static_cast<double>(n);
        P.vertices.push_back({rationalize(std::cos(t)), rationalize(std::sin(t))});
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = P.vertices[i];
        const auto& q = P.vertices[(i + 1) % n];
        // Right-hand normal of the edge p -> q points outward (vertices are
        // counterclockwise).
        std::vector<Rat> normal{q[1] - p[1], p[0] - q[0]};
        Rat offset = normal[0] * p[0] + normal[1] * p[1];
        P.facets.push_back({std::move(normal), std::move(offset)});
    }
    slack_matrix(P);  // validates convex position exactly
    return P;
}

std::size_t cpsd_upper_bound(const PolytopeVH& P) {
    std::size_t m = std::min(P.vertices.size(), P.facets.size());
    if (m == 0) return 0;
    return m - (m - 1) / (P.dimension() + 1);
}

PhasedMatrix cpsd_lift_witness(const PolytopeVH& P) {
    NonnegMatrix S = slack_matrix(P);
    NonnegMatrix B = hadamard_power(S, Rat(1, 2));
    bool transposed = B.rows() > B.cols();
    NonnegMatrix W = transposed ? B.transpose() : B;
    std::size_t k = P.dimension() + 2;
    if (k > W.rows()) return PhasedMatrix::real(B);
    PatchingResult pr = upper_bound_patching(W, k);
    return transposed ? pr.witness.transpose() : pr.witness;
}

NonnegMatrix equiangular_matrix(std::size_t n, const Rat& alpha) {
    if (alpha < 0 || alpha > 1) throw DomainError("alpha must lie in [0, 1]");
    RatMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = (i == j) ? Rat(1) : alpha;
    return NonnegMatrix(std::move(A));
}

std::size_t small_angle_equiangular_max(std::size_t d, const Rat& alpha) {
    if (d == 0) throw DomainError("dimension must be positive");
    if (alpha < 0 || !(alpha * static_cast<long>(d) < 1))
        throw DomainError("the bound needs 0 <= alpha < 1/d");
    RankDecision dec = decide_nonmaximal(equiangular_matrix(d + 1, alpha));
    if (!dec.maximal) throw std::logic_error("A^alpha_{d+1} must be maximal for alpha < 1/d");
    return d;
}

namespace {

NonnegMatrix mub_matrix_common(std::size_t d, std::size_t k, const Rat& off) {
    if (d < 2 || k < 1) throw DomainError("need d >= 2 and k >= 1");
    std::size_t n = d * k;
    RatMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i / d == j / d)
                A(i, j) = (i % d == j % d) ? Rat(1) : Rat(0);
            else
                A(i, j) = off;
        }
    return NonnegMatrix(std::move(A));
}

} // namespace

NonnegMatrix mub_matrix(std::size_t d, std::size_t k) {
    return mub_matrix_common(d, k, rationalize(1.0 / std::sqrt(static_cast<double>(d))));
}

NonnegMatrix mub_matrix_squared(std::size_t d, std::size_t k) {
    return mub_matrix_common(d, k, Rat(1, static_cast<unsigned long>(d)));
}

GramWitness gram_from_vectors(const std::vector<std::vector<std::complex<double>>>& vectors) {
    std::size_t n = vectors.size();
    if (n == 0) throw DimensionError("no vectors");
    std::size_t d = vectors.front().size();
    for (const auto& v : vectors)
        if (v.size() != d) throw DimensionError("vectors of mixed length");

    RatMatrix mod(n, n);
    std::vector<double> phases(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            std::complex<double> g = 0.0;
            for (std::size_t t = 0; t < d; ++t) g += std::conj(vectors[i][t]) * vectors[j][t];
            Rat r = rationalize(std::abs(g));
            mod(i, j) = r;
            mod(j, i) = r;
            if (i != j && r != 0) {
                double a = std::arg(g);
                phases[i * n + j] = a;
                phases[j * n + i] = -a;
            }
        }
    return {PhasedMatrix(NonnegMatrix(std::move(mod)), std::move(phases)), d};
}

bool verify_psd_witness(const GramWitness& w, const NonnegMatrix& A, std::size_t d) {
    const PhasedMatrix& G = w.gram;
    std::size_t n = G.rows();
    if (G.cols() != n || A.rows() != n || A.cols() != n)
        throw DimensionError("witness and matrix must be square of equal size");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(to_double(G.modulus()(i, j)) - to_double(A(i, j))) > 1e-9)
                throw DomainError("witness moduli do not match the matrix");

    Eigen::MatrixXcd M = to_complex_eigen(G);
    double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    if ((M - M.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale) return false;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        ((M + M.adjoint()) / 2.0).eval(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8) return false;

    return numerical_rank(G) <= d;
}

} // namespace phaseless
