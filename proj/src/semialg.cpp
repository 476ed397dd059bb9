#include "phaseless/semialg.hpp"

#include "phaseless/errors.hpp"
#include "phaseless/mmatrix.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace phaseless {

namespace {

std::vector<std::size_t> identity_map(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    return p;
}

Rat comparison_det(const NonnegMatrix& A, const std::vector<std::size_t>& sigma) {
    return det_exact(comparison_matrix(A, sigma).values());
}

} // namespace

SemialgebraicReport semialg_3x3(const NonnegMatrix& X) {
    if (X.rows() != 3 || X.cols() != 3) throw DimensionError("semialg_3x3 needs a 3x3 matrix");
    SemialgebraicReport rep;
    std::vector<std::size_t> sigma = identity_map(3);
    do {
        Rat d = comparison_det(X, sigma);
        if (d > 0) rep.violated.push_back({sigma, 3, d});
        if (d == 0) rep.boundary.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    rep.member = rep.violated.empty();
    return rep;
}

SemialgebraicReport semialg_4x4(const NonnegMatrix& A) {
    if (A.rows() != 4 || A.cols() != 4) throw DimensionError("semialg_4x4 needs a 4x4 matrix");

    // det(M(AP_sigma)) = 2 sum_{tau in V} prod_i A(i, sigma(tau(i))) - perm(A),
    // V the Klein four-group, so the value only depends on the coset sigma V.
    static const std::size_t kKlein[4][4] = {
        {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};

    std::map<std::vector<std::size_t>, std::vector<std::vector<std::size_t>>> cosets;
    std::vector<std::size_t> sigma = identity_map(4);
    do {
        std::vector<std::vector<std::size_t>> members;
        for (const auto& tau : kKlein) {
            std::vector<std::size_t> comp(4);
            for (std::size_t i = 0; i < 4; ++i) comp[i] = sigma[tau[i]];
            members.push_back(std::move(comp));
        }
        std::sort(members.begin(), members.end());
        cosets[members.front()].push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    if (cosets.size() != 6) throw std::logic_error("S4 must split into six Klein cosets");

    SemialgebraicReport rep;
    for (const auto& [rep_sigma, members] : cosets) {
        Rat d = comparison_det(A, rep_sigma);
        for (const auto& member : members)
            if (comparison_det(A, member) != d)
                throw std::logic_error("coset members disagree on the determinant");
        if (d > 0) rep.violated.push_back({rep_sigma, 4, d});
        if (d == 0)
            for (const auto& member : members) rep.boundary.push_back(member);
    }
    std::sort(rep.boundary.begin(), rep.boundary.end());
    rep.member = rep.violated.empty();
    return rep;
}

Rat permanent(const NonnegMatrix& A) {
    if (A.rows() != A.cols()) throw DimensionError("permanent needs a square matrix");
    std::size_t n = A.rows();
    if (n > 12) throw CapabilityError("permanent capped at n = 12");
    if (n == 0) return Rat(1);

    std::vector<Rat> rowsum(n, Rat(0));
    std::vector<bool> in(n, false);
    std::size_t card = 0;
    Rat total(0);
    unsigned long limit = 1ul << n;
    for (unsigned long k = 1; k < limit; ++k) {
        // Gray code: between g(k-1) and g(k) exactly bit ctz(k) flips.
        unsigned b = static_cast<unsigned>(std::countr_zero(k));
        if (in[b]) {
            for (std::size_t i = 0; i < n; ++i) rowsum[i] -= A(i, b);
            --card;
        } else {
            for (std::size_t i = 0; i < n; ++i) rowsum[i] += A(i, b);
            ++card;
        }
        in[b] = !in[b];
        Rat prod(1);
        for (std::size_t i = 0; i < n; ++i) prod *= rowsum[i];
        if ((n - card) % 2 == 0)
            total += prod;
        else
            total -= prod;
    }
    return total;
}

SemialgebraicReport semialg_general(const NonnegMatrix& A) {
    if (A.rows() != A.cols() || A.rows() < 3)
        throw DimensionError("semialg_general needs a square matrix, n >= 3");
    std::size_t n = A.rows();
    if (n > 8) throw CapabilityError("semialg_general capped at n = 8");

    SemialgebraicReport rep;
    std::vector<std::size_t> sigma = identity_map(n);
    do {
        std::vector<Rat> minors = leading_principal_minors(comparison_matrix(A, sigma));
        bool ok = false;
        std::size_t worst_i = 3;
        Rat worst = minors[2];
        for (std::size_t i = 3; i <= n; ++i) {
            const Rat& d = minors[i - 1];
            if (d <= 0) ok = true;
            if (d < worst) {
                worst = d;
                worst_i = i;
            }
        }
        if (!ok) rep.violated.push_back({sigma, worst_i, worst});
        if (minors[n - 1] == 0) rep.boundary.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    rep.member = rep.violated.empty();
    return rep;
}

bool all_dets_nonpositive(const NonnegMatrix& A) {
    if (A.rows() != A.cols()) throw DimensionError("determinant test needs a square matrix");
    std::vector<std::size_t> sigma = identity_map(A.rows());
    do {
        if (comparison_det(A, sigma) > 0) return false;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return true;
}

std::optional<std::vector<std::size_t>> boundary_certificate(const NonnegMatrix& A) {
    if (A.rows() != A.cols()) throw DimensionError("boundary certificate needs a square matrix");
    std::vector<std::size_t> sigma = identity_map(A.rows());
    do {
        if (comparison_det(A, sigma) == 0) return sigma;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return std::nullopt;
}

} // namespace phaseless
