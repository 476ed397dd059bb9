#pragma once

#include "phaseless/errors.hpp"
#include "phaseless/rational.hpp"

#include <cstddef>
#include <vector>

namespace phaseless {

// A list is lopsided when one entry strictly exceeds the sum of the others.
// Exact arithmetic, ties are not lopsided.
bool is_lopsided(const std::vector<Rat>& v);

// Index of the (first) largest entry.
std::size_t dominant_index(const std::vector<Rat>& v);

// Nonnegative rational weights summing to one.
class WeightVector {
  public:
    explicit WeightVector(std::vector<Rat> weights);
    static WeightVector uniform(std::size_t n);

    std::size_t size() const { return weights_.size(); }
    const Rat& operator[](std::size_t i) const { return weights_[i]; }
    const std::vector<Rat>& values() const { return weights_; }

  private:
    std::vector<Rat> weights_;
};

// y lies in the lopsidedness polytope of x: the entrywise products x_k * y_k
// form a nonlopsided list. x must be nonnegative.
bool lop_membership(const std::vector<Rat>& x, const WeightVector& y);

struct PhaseAssignment {
    std::vector<double> phases;  // in [0, 2pi), zero entries get 0
    double residual;             // |sum v_k e^{i phase_k}|
};

// Phases closing a nonlopsided list into a polygon: the dominant entry points
// along direction 0, the rest are split into two balanced groups placed by the
// law of cosines. Throws LopsidedError when the input is lopsided (checked
// exactly). Residual stays within 1e-10 times the entry sum.
PhaseAssignment close_polygon(const std::vector<Rat>& v);
PhaseAssignment close_polygon(const std::vector<double>& v);

} // namespace phaseless
