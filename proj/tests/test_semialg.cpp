#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "phaseless/errors.hpp"
#include "phaseless/rank_engine.hpp"
#include "phaseless/semialg.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <vector>

using namespace phaseless;
using tests::nonneg;
using tests::rat_matrix;

namespace {

// Expansion along the first row; independent of the Ryser route.
Rat permanent_naive(const RatMatrix& A) {
    const std::size_t n = A.rows();
    if (n == 1) return A(0, 0);
    Rat sum(0);
    for (std::size_t j = 0; j < n; ++j) {
        if (A(0, j) == 0) continue;
        RatMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(i - 1, cc++) = A(i, c);
            }
        }
        sum += A(0, j) * permanent_naive(minor);
    }
    return sum;
}

// The six quartic inequalities for 4x4 matrices, one per group of four
// diagonals: 2 * (sum of the four diagonal products) - perm(A) <= 0.
// Each diagonal is a column map tau, row i picking column tau[i].
const std::size_t kSixLines[6][4][4] = {
    {{1, 2, 3, 0}, {0, 3, 2, 1}, {3, 0, 1, 2}, {2, 1, 0, 3}},
    {{2, 1, 3, 0}, {3, 0, 2, 1}, {0, 3, 1, 2}, {1, 2, 0, 3}},
    {{1, 3, 2, 0}, {0, 2, 3, 1}, {3, 1, 0, 2}, {2, 0, 1, 3}},
    {{3, 1, 2, 0}, {2, 0, 3, 1}, {1, 3, 0, 2}, {0, 2, 1, 3}},
    {{2, 3, 1, 0}, {3, 2, 0, 1}, {0, 1, 3, 2}, {1, 0, 2, 3}},
    {{3, 2, 1, 0}, {2, 3, 0, 1}, {1, 0, 3, 2}, {0, 1, 2, 3}},
};

std::vector<Rat> six_line_values(const NonnegMatrix& A) {
    Rat perm = permanent(A);
    std::vector<Rat> values;
    for (const auto& line : kSixLines) {
        Rat quad(0);
        for (const auto& tau : line) {
            Rat prod(1);
            for (std::size_t i = 0; i < 4; ++i) prod *= A(i, tau[i]);
            quad += prod;
        }
        values.push_back(2 * quad - perm);
    }
    return values;
}

// det(M(A P)) over all column maps of S_n, with multiplicities.
std::vector<Rat> all_comparison_dets(const NonnegMatrix& A) {
    std::vector<std::size_t> sigma(A.rows());
    for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] = i;
    std::vector<Rat> dets;
    do {
        dets.push_back(det_exact(comparison_matrix(A, sigma).values()));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return dets;
}

} // namespace

TEST_CASE("permanent on reference matrices and against expansion") {
    CHECK(permanent(NonnegMatrix::identity(3)) == Rat(1));
    CHECK(permanent(NonnegMatrix::constant(3, 3, Rat(1))) == Rat(6));
    CHECK(permanent(NonnegMatrix::constant(4, 4, Rat(1))) == Rat(24));
    CHECK(permanent(tests::derangement4()) == Rat(9));
    CHECK(permanent(nonneg(1, 1, {7})) == Rat(7));

    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + trial % 5;
        NonnegMatrix A = tests::random_nonneg(rng, n, n, 6);
        CHECK(permanent(A) == permanent_naive(A.values()));
    }

    CHECK_THROWS_AS(permanent(nonneg(2, 3, {1, 1, 1, 1, 1, 1})), DimensionError);
    CHECK_THROWS_AS(permanent(NonnegMatrix::constant(13, 13, Rat(1))), CapabilityError);
}

TEST_CASE("three by three semialgebraic description") {
    SUBCASE("interior circulant point: member, no boundary contact") {
        SemialgebraicReport rep = semialg_3x3(tests::circulant3(Rat(1), Rat(1)));
        CHECK(rep.member);
        CHECK(rep.violated.empty());
        CHECK(rep.boundary.empty()); // every determinant is -4 there
    }

    SUBCASE("outside the region every violation is recorded positive") {
        SemialgebraicReport rep = semialg_3x3(tests::circulant3(Rat(1, 5), Rat(1, 5)));
        CHECK_FALSE(rep.member);
        REQUIRE_FALSE(rep.violated.empty());
        for (const ViolatedMinor& v : rep.violated) {
            CHECK(v.minor == 3);
            CHECK(v.value > 0);
            // recompute the violated determinant from the recorded column map
            CHECK(det_exact(comparison_matrix(tests::circulant3(Rat(1, 5), Rat(1, 5)),
                                              v.permutation)
                                .values()) == v.value);
        }
    }

    SUBCASE("region boundary shows up as a vanishing determinant") {
        SemialgebraicReport rep = semialg_3x3(tests::circulant3(Rat(2), Rat(1)));
        CHECK(rep.member);
        REQUIRE_FALSE(rep.boundary.empty());
        for (const auto& sigma : rep.boundary)
            CHECK(det_exact(comparison_matrix(tests::circulant3(Rat(2), Rat(1)), sigma)
                                .values()) == Rat(0));
    }

    SUBCASE("identity is not a member") {
        CHECK_FALSE(semialg_3x3(NonnegMatrix::identity(3)).member);
    }

    CHECK_THROWS_AS(semialg_3x3(tests::derangement4()), DimensionError);
}

TEST_CASE("four by four reduction to six inequalities") {
    SUBCASE("derangement matrix is a member") {
        SemialgebraicReport rep = semialg_4x4(tests::derangement4());
        CHECK(rep.member);
        CHECK(rep.violated.empty());
    }

    SUBCASE("identity violates exactly the diagonal group") {
        SemialgebraicReport rep = semialg_4x4(NonnegMatrix::identity(4));
        CHECK_FALSE(rep.member);
        REQUIRE(rep.violated.size() == 1);
        CHECK(rep.violated.front().value == Rat(1)); // 2*1 - perm(I) = 1
    }

    SUBCASE("the six quartic lines match the comparison determinants") {
        std::mt19937_64 rng(67);
        for (int trial = 0; trial < 12; ++trial) {
            NonnegMatrix A = tests::random_nonneg(rng, 4, 4, 5);
            std::vector<Rat> lines = six_line_values(A);
            std::vector<Rat> dets = all_comparison_dets(A);
            REQUIRE(dets.size() == 24);

            // every determinant value is hit by exactly four permutations
            std::map<Rat, int> hist;
            for (const Rat& d : dets) ++hist[d];
            std::vector<Rat> expanded;
            for (const Rat& line : lines) expanded.push_back(line);
            std::sort(expanded.begin(), expanded.end());
            std::sort(dets.begin(), dets.end());
            std::vector<Rat> six(dets.begin(), dets.end());
            six.erase(std::unique(six.begin(), six.end()), six.end());
            // multiset equality of line values and per-coset determinants
            std::vector<Rat> coset_values;
            for (const auto& [value, count] : hist) {
                CHECK(count % 4 == 0);
                for (int c = 0; c < count / 4; ++c) coset_values.push_back(value);
            }
            CHECK(expanded == coset_values);

            bool all_nonpositive = true;
            for (const Rat& line : lines) all_nonpositive = all_nonpositive && line <= 0;
            CHECK(semialg_4x4(A).member == all_nonpositive);
            CHECK(semialg_4x4(A).member == !decide_nonmaximal(A).maximal);
        }
    }

    CHECK_THROWS_AS(semialg_4x4(NonnegMatrix::identity(3)), DimensionError);
}

TEST_CASE("general test separates membership from the determinant-only check") {
    NonnegMatrix A5 = tests::counterexample5();

    SemialgebraicReport rep = semialg_general(A5);
    CHECK(rep.member);
    CHECK(rep.violated.empty());
    CHECK_FALSE(decide_nonmaximal(A5).maximal);

    // one comparison determinant is strictly positive, so the weaker test fails
    CHECK_FALSE(all_dets_nonpositive(A5));
    std::vector<std::size_t> sigma = {0, 2, 3, 1, 4};
    CHECK(det_exact(comparison_matrix(A5, sigma).values()) == Rat(3732));

    SUBCASE("maximal matrices are non-members with positive evidence") {
        SemialgebraicReport id = semialg_general(NonnegMatrix::identity(5));
        CHECK_FALSE(id.member);
        REQUIRE_FALSE(id.violated.empty());
        CHECK(id.violated.front().minor >= 3);
        CHECK(id.violated.front().value > 0);
    }

    SUBCASE("agreement with the LP decision and the specialized forms") {
        std::mt19937_64 rng(71);
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t n = 3 + trial % 3;
            NonnegMatrix A = tests::random_nonneg(rng, n, n, 4);
            bool nonmax = !decide_nonmaximal(A).maximal;
            CHECK(semialg_general(A).member == nonmax);
            if (n == 3) CHECK(semialg_3x3(A).member == nonmax);
            if (n == 4) CHECK(semialg_4x4(A).member == nonmax);
        }
    }

    SUBCASE("determinant-only test is equivalent up to n = 4") {
        std::mt19937_64 rng(73);
        for (int trial = 0; trial < 25; ++trial) {
            std::size_t n = 3 + trial % 2;
            NonnegMatrix A = tests::random_nonneg(rng, n, n, 4);
            CHECK(all_dets_nonpositive(A) == !decide_nonmaximal(A).maximal);
        }
        // and strictly one-sided from n = 5 on
        CHECK_FALSE(all_dets_nonpositive(A5));
        CHECK_FALSE(decide_nonmaximal(A5).maximal);
    }

    CHECK_THROWS_AS(semialg_general(NonnegMatrix::identity(2)), DimensionError);
    CHECK_THROWS_AS(semialg_general(NonnegMatrix::constant(9, 9, Rat(1))), CapabilityError);
    CHECK_THROWS_AS(semialg_general(nonneg(3, 4, std::vector<long>(12, 1))), DimensionError);
}

TEST_CASE("boundary certificates find vanishing determinants") {
    auto cert = boundary_certificate(tests::circulant3(Rat(2), Rat(1)));
    REQUIRE(cert.has_value());
    CHECK(det_exact(comparison_matrix(tests::circulant3(Rat(2), Rat(1)), *cert).values()) ==
          Rat(0));

    CHECK_FALSE(boundary_certificate(tests::circulant3(Rat(1), Rat(1))).has_value());
    CHECK_FALSE(boundary_certificate(NonnegMatrix::identity(3)).has_value());

    // block-singular comparison matrix: the identity map already vanishes
    NonnegMatrix blocky = nonneg(3, 3, {1, 1, 0, 1, 1, 0, 0, 0, 1});
    auto id_cert = boundary_certificate(blocky);
    REQUIRE(id_cert.has_value());
    CHECK(*id_cert == std::vector<std::size_t>{0, 1, 2});
}
