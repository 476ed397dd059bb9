#pragma once

#include "phaseless/lopsided.hpp"
#include "phaseless/lp.hpp"
#include "phaseless/matrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace phaseless {

// Outcome of a maximality decision. `transposed` records that the matrix was
// worked on transposed (rows > cols on input); all certificate fields refer to
// the working orientation, the witness is returned in the input orientation.
struct RankDecision {
    bool maximal = false;
    bool transposed = false;
    bool boundary_uncertain = false;  // only meaningful when a margin probe ran

    // Nonmaximal: weights with every column of A nonlopsided under lambda,
    // plus an equimodular witness with lambda^T witness ~ 0.
    std::vector<Rat> lambda;
    PhasedMatrix witness;

    // Maximal: column map sigma with (A_I P)(:,j) = A_I(:, sigma[j]) and a
    // scaling d > 0 with M(A_I P) d > 0. submatrix_cols = I (all columns when
    // square). farkas is the Ville vector y >= 0, y^T M > 0 from the LP.
    std::vector<std::size_t> permutation;
    std::vector<Rat> scaling;
    std::vector<std::size_t> submatrix_cols;
    std::vector<Rat> farkas;
};

struct DecideOptions {
    // When positive, the system is re-solved tightened and relaxed by
    // margin * column sums; differing verdicts set boundary_uncertain.
    Rat boundary_margin = Rat(0);
};

// Is rank_theta(A) < min(rows, cols)? LP route (exact), with certificates.
RankDecision decide_nonmaximal(const NonnegMatrix& A, const DecideOptions& options = {});

// Witness construction from a lopsidedness weight vector: per column, phases
// closing (lambda_k A_kj)_k into a polygon, then each column rotated so its
// first nonzero-modulus entry is real.
PhasedMatrix build_witness(const NonnegMatrix& A, const WeightVector& lambda);

// Exhaustive permutation route (square, n <= 10): maximal iff some column
// permutation makes the comparison matrix a nonsingular M-matrix.
// Cross-validation oracle for decide_nonmaximal.
RankDecision decide_by_permutations(const NonnegMatrix& A);

// Helly-type reduction (n <= m): true iff every n x n column submatrix is
// nonmaximal. Cross-validation oracle.
bool decide_by_submatrices(const NonnegMatrix& A);

enum class PatchingCheck { BlocksOnly, AllSubmatrices };

struct PatchingResult {
    std::size_t bound;
    PhasedMatrix witness;
};

// Patching upper bound: with floor((n-1)/(k-1)) row blocks of size k sharing
// row 0, each nonmaximal, rank_theta(A) <= n - floor((n-1)/(k-1)). The witness
// keeps row 0 and all unpatched rows real. AllSubmatrices additionally checks
// every k x k submatrix (expensive).
PatchingResult upper_bound_patching(const NonnegMatrix& A, std::size_t k,
                                    PatchingCheck check = PatchingCheck::BlocksOnly);

// ceil(sqrt(rank(A o A))) <= rank_theta(A).
std::size_t lower_bound_hadamard(const NonnegMatrix& A);

// ceil((sqrt(1+8r)-1)/2) <= rank_pm(A), r = rank(A o A).
std::size_t signless_lower_bound(const NonnegMatrix& A);

// Exact signless rank by sign-pattern enumeration, (n-1)(m-1) <= 20.
std::size_t signless_rank_bruteforce(const NonnegMatrix& A);

enum class BracketEffort { Low, High };
enum class LowerSource { RankOne, HadamardSquare, Maximality };
enum class UpperSource { TrivialMin, NonmaxDirect, Patching, LocalSearch };

struct Bracket {
    std::size_t lower = 1;
    std::size_t upper = 1;
    LowerSource lower_source = LowerSource::RankOne;
    UpperSource upper_source = UpperSource::TrivialMin;
    std::size_t patching_k = 0;  // set when upper_source == Patching
    std::optional<PhasedMatrix> upper_witness;
};

Bracket bracket(const NonnegMatrix& A, BracketEffort effort = BracketEffort::Low,
                unsigned long seed = 0, std::size_t restarts = 8);

// Coordinate descent over free phases minimizing the singular value tail
// beyond `target`, with random restarts. Returns a witness only when its
// numerical rank at 1e-8 is <= target. Deterministic for a fixed seed.
std::optional<PhasedMatrix> phase_local_search(const NonnegMatrix& A, std::size_t target,
                                               std::size_t restarts = 8, unsigned long seed = 0);

struct TypicalRankBounds {
    std::size_t lower;
    std::size_t upper;
};

// ceil((n+m-sqrt((n-1)^2+(m-1)^2))/2) <= minimal typical rank <= ceil((n+1)/2),
// for 3 <= n <= m.
TypicalRankBounds typical_rank_bounds(std::size_t n, std::size_t m);

// Membership of a point in the (un)log amoeba of the maximal-minor variety:
// reshape to n x m, exponentiate when log_scale, decide nonmaximality.
// Coordinates are rationalized at 1e-12; a negative unlog coordinate is
// outside the nonnegative orthant, hence not a member.
bool amoeba_membership(const std::vector<double>& point, std::size_t n, std::size_t m,
                       bool log_scale);
bool amoeba_membership(const std::vector<Rat>& point, std::size_t n, std::size_t m);

} // namespace phaseless
