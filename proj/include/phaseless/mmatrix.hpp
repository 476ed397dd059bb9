#pragma once

#include "phaseless/matrix.hpp"

#include <vector>

namespace phaseless {

// Equivalent tests for "Z is a nonsingular M-matrix". The first four are
// exact; Eigenvalue runs in doubles and is meant as a sanity route, never as
// a certificate.
enum class MMatrixMethod {
    LeadingMinors,     // all leading principal minors positive
    ReducedMinors,     // positive diagonal and minors of size >= 3 positive
    PositiveVector,    // some x >= 0 with Zx > 0 (LP, certificate x)
    DominanceScaling,  // same LP read as a scaling d with Z diag(d) strictly
                       // row diagonally dominant
    Eigenvalue,        // minimum real eigenvalue positive (double lane)
};

struct MMatrixReport {
    bool verdict = false;
    MMatrixMethod method = MMatrixMethod::ReducedMinors;
    std::vector<Rat> certificate;  // x or d for the LP methods, when verdict holds
    std::vector<Rat> minors;       // the minors a minor method evaluated, in order
};

MMatrixReport is_nonsingular_m_matrix(const ComparisonMatrix& Z,
                                      MMatrixMethod method = MMatrixMethod::ReducedMinors);

std::vector<Rat> leading_principal_minors(const ComparisonMatrix& Z);

bool verify_positive_vector(const ComparisonMatrix& Z, const std::vector<Rat>& x);
bool verify_dominance_scaling(const ComparisonMatrix& Z, const std::vector<Rat>& d);

} // namespace phaseless
