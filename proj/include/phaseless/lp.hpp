#pragma once

#include "phaseless/matrix.hpp"
#include "phaseless/rational.hpp"

#include <cstddef>
#include <vector>

namespace phaseless {

// Feasibility system  G x <= h,  E x = f,  x_j >= 0 where nonneg[j].
// Either block may be empty (zero rows).
struct LinearProgram {
    RatMatrix G;
    std::vector<Rat> h;
    RatMatrix E;
    std::vector<Rat> f;
    std::vector<bool> nonneg;

    std::size_t variables() const { return nonneg.size(); }
};

// Multipliers combining the rows into 0 <= (u^T G + v^T E) x <= u^T h + v^T f < 0:
// u >= 0 per inequality, v free per equality; the combined coefficient vector is
// nonnegative on sign-constrained variables and zero on free ones.
struct InfeasibilityCertificate {
    std::vector<Rat> ineq;
    std::vector<Rat> eq;
};

struct LPOutcome {
    bool feasible;
    std::vector<Rat> point;                    // set when feasible
    InfeasibilityCertificate certificate;      // set when infeasible
};

// Exact phase-1 simplex with Bland's rule. Deterministic; certificates are
// exact rationals and re-verify against the input system.
LPOutcome lp_feasible(const LinearProgram& lp);

bool verify_feasible_point(const LinearProgram& lp, const std::vector<Rat>& x);
bool verify_infeasibility(const LinearProgram& lp, const InfeasibilityCertificate& cert);

// Lopsidedness system for an n x m nonnegative matrix, n <= m: variables
// lambda_i >= 0 with sum 1, and for every column j and row i
//   A_ij lambda_i - sum_{k != i} A_kj lambda_k <= shift * colsum_j.
// Rows are ordered column major: (j, i) -> row j*n + i. shift = 0 is the exact
// system; negative/positive shifts tighten/relax it for robustness probes.
LinearProgram nonmax_system(const NonnegMatrix& A, const Rat& shift = Rat(0));

} // namespace phaseless
