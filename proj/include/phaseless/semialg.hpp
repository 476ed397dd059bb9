#pragma once

#include "phaseless/matrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace phaseless {

struct ViolatedMinor {
    std::vector<std::size_t> permutation;  // column map sigma
    std::size_t minor;                     // size of the offending leading minor
    Rat value;                             // its (positive) exact value
};

// Exact membership test for "rank_theta < n" phrased through comparison-matrix
// determinants. member iff violated is empty; boundary lists the column maps
// whose full determinant vanishes exactly.
struct SemialgebraicReport {
    bool member = false;
    std::vector<ViolatedMinor> violated;
    std::vector<std::vector<std::size_t>> boundary;
};

// 3x3: member iff det(M(A P)) <= 0 for all six column permutations.
SemialgebraicReport semialg_3x3(const NonnegMatrix& X);

// 4x4: det(M(A P)) takes one value per left coset of the Klein four-group,
// giving six inequalities 2(sum of four diagonal products) - perm(A) <= 0.
// Values are regenerated from all 24 permutations and checked for coset
// agreement; violated holds one representative per failing coset.
SemialgebraicReport semialg_4x4(const NonnegMatrix& A);

// Exact permanent, Ryser's inclusion-exclusion over a Gray code. n <= 12.
Rat permanent(const NonnegMatrix& A);

// General square test, 3 <= n <= 8: member iff for every column permutation
// some leading principal minor det_i(M(A P)), i >= 3, is <= 0. Equivalent to
// nonmaximality; the weaker full-determinant-only criterion below is exact
// only up to n = 4.
SemialgebraicReport semialg_general(const NonnegMatrix& A);

// det(M(A P)) <= 0 for every column permutation. Implies nonmaximality; the
// converse holds for n <= 4 and fails from n = 5 on.
bool all_dets_nonpositive(const NonnegMatrix& A);

// First column map (lexicographic) with det(M(A P)) = 0 exactly, if any.
std::optional<std::vector<std::size_t>> boundary_certificate(const NonnegMatrix& A);

} // namespace phaseless
