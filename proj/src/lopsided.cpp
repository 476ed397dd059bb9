#include "phaseless/lopsided.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace phaseless {

bool is_lopsided(const std::vector<Rat>& v) {
    if (v.empty()) return false;
    Rat total(0);
    for (const auto& e : v) {
        if (e < 0) throw DomainError("lopsidedness is defined for nonnegative lists");
        total += e;
    }
    std::size_t d = dominant_index(v);
    return v[d] > total - v[d];
}

std::size_t dominant_index(const std::vector<Rat>& v) {
    if (v.empty()) throw DimensionError("dominant index of an empty list");
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

WeightVector::WeightVector(std::vector<Rat> weights) : weights_(std::move(weights)) {
    Rat total(0);
    for (const auto& w : weights_) {
        if (w < 0) throw DomainError("weights must be nonnegative");
        total += w;
    }
    if (total != 1) throw DomainError("weights must sum to one");
}

WeightVector WeightVector::uniform(std::size_t n) {
    if (n == 0) throw DimensionError("uniform weights need at least one entry");
    return WeightVector(std::vector<Rat>(n, Rat(1, static_cast<unsigned long>(n))));
}

bool lop_membership(const std::vector<Rat>& x, const WeightVector& y) {
    if (x.size() != y.size()) throw DimensionError("weight length mismatch");
    std::vector<Rat> products(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] < 0) throw DomainError("lop_membership needs a nonnegative list");
        products[k] = x[k] * y[k];
    }
    return !is_lopsided(products);
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

double wrap(double p) {
    double q = std::fmod(p, kTwoPi);
    if (q < 0) q += kTwoPi;
    return q;
}

// Angle opposite side c in the triangle (a, b, c). acos of the law of cosines
// loses half the precision near flat triangles; Kahan's ordered area factors
// under atan2 stay accurate there, and exact flat inputs give exactly 0 or pi.
double opposite_angle(double a, double b, double c) {
    double x = a, y = b, z = c;
    if (x < y) std::swap(x, y);
    if (y < z) std::swap(y, z);
    if (x < y) std::swap(x, y);
    double prod = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
    double quad = a * a + b * b - c * c;
    if (prod <= 0) return quad >= 0 ? 0.0 : std::numbers::pi_v<double>;
    return std::atan2(std::sqrt(prod), quad);
}

PhaseAssignment close_checked(const std::vector<Rat>& exact, const std::vector<double>& v) {
    if (is_lopsided(exact)) throw LopsidedError(dominant_index(exact));

    std::size_t n = v.size();
    PhaseAssignment out{std::vector<double>(n, 0.0), 0.0};
    std::size_t a_idx = dominant_index(exact);
    double a = v[a_idx];
    if (exact[a_idx] == 0) return out;  // all zero

    // Balance the remaining entries into two groups, largest first.
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i)
        if (i != a_idx && exact[i] != 0) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return exact[l] > exact[r]; });

    double b = 0.0, c = 0.0;
    std::vector<bool> in_b(n, false);
    for (std::size_t i : order) {
        if (b <= c) {
            b += v[i];
            in_b[i] = true;
        } else {
            c += v[i];
        }
    }

    double theta_b = std::numbers::pi_v<double>;
    double theta_c = std::numbers::pi_v<double>;
    if (b > 0) theta_b = wrap(std::numbers::pi_v<double> - opposite_angle(a, b, c));
    if (c > 0) theta_c = wrap(std::numbers::pi_v<double> + opposite_angle(a, c, b));

    for (std::size_t i : order) out.phases[i] = in_b[i] ? theta_b : theta_c;

    std::complex<double> s(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        s += v[i] * std::complex<double>(std::cos(out.phases[i]), std::sin(out.phases[i]));
    out.residual = std::abs(s);
    return out;
}

} // namespace

PhaseAssignment close_polygon(const std::vector<Rat>& v) {
    std::vector<double> vd(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 0) throw DomainError("close_polygon needs nonnegative entries");
        vd[i] = to_double(v[i]);
    }
    return close_checked(v, vd);
}

PhaseAssignment close_polygon(const std::vector<double>& v) {
    std::vector<Rat> exact(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] >= 0)) throw DomainError("close_polygon needs nonnegative entries");
        exact[i] = Rat(v[i]);  // binary doubles convert exactly
    }
    return close_checked(exact, v);
}

} // namespace phaseless
