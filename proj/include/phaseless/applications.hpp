#pragma once

#include "phaseless/matrix.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace phaseless {

// Explicit V- and H-description of a polytope; every vertex must satisfy
// every facet inequality <a_j, x> <= b_j.
struct PolytopeVH {
    struct Facet {
        std::vector<Rat> normal;
        Rat offset;
    };

    std::vector<std::vector<Rat>> vertices;
    std::vector<Facet> facets;

    std::size_t dimension() const { return vertices.empty() ? 0 : vertices.front().size(); }
};

// v x f matrix with entries b_j - <a_j, p_i>. Throws on a negative slack.
NonnegMatrix slack_matrix(const PolytopeVH& P);

// Regular n-gon, n >= 3: unit-circle vertices rationalized at 1e-12, facets
// through adjacent vertex pairs. Slack nonnegativity is rechecked exactly.
PolytopeVH ngon(std::size_t n);

// rank_psd^C(S_P) <= m - floor((m-1)/(d+1)), m = min(#vertices, #facets).
std::size_t cpsd_upper_bound(const PolytopeVH& P);

// Explicit lift witness: patching with k = d+2 on the entrywise square root
// of the slack matrix. Equimodular with sqrt(S_P) and of numerical rank at
// most cpsd_upper_bound(P). When the patching is vacuous (simplices) the real
// square root itself is returned.
PhasedMatrix cpsd_lift_witness(const PolytopeVH& P);

// Ones on the diagonal, alpha elsewhere, 0 <= alpha <= 1.
NonnegMatrix equiangular_matrix(std::size_t n, const Rat& alpha);

// Maximum number of equiangular lines at common angle alpha in C^d when
// alpha < 1/d: exactly d. Certified internally by the maximality of the
// (d+1)-point matrix. alpha >= 1/d is out of the theorem's range.
std::size_t small_angle_equiangular_max(std::size_t d, const Rat& alpha);

// kd x kd matrix of moduli of k pairwise unbiased bases stacked columnwise:
// identity blocks on the diagonal, constant 1/sqrt(d) off the diagonal
// (rationalized at 1e-12). mub_matrix_squared keeps the entries squared and
// exact: identity blocks and constant 1/d.
NonnegMatrix mub_matrix(std::size_t d, std::size_t k);
NonnegMatrix mub_matrix_squared(std::size_t d, std::size_t k);

// Hermitian phased Gram matrix together with the ambient dimension of the
// vectors that produced it.
struct GramWitness {
    PhasedMatrix gram;
    std::size_t ambient_dim = 0;
};

// Gram matrix of the given vectors (each of the same length), hermitian by
// construction with zero diagonal phases; moduli rationalized at 1e-12.
GramWitness gram_from_vectors(const std::vector<std::vector<std::complex<double>>>& vectors);

// True iff w.gram is hermitian, psd up to -1e-8 on the spectrum, and of
// numerical rank at most d. The moduli must match A within 1e-9 (else throws);
// success certifies rank_theta^psd(A) <= d.
bool verify_psd_witness(const GramWitness& w, const NonnegMatrix& A, std::size_t d);

} // namespace phaseless
