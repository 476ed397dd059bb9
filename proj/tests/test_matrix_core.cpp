#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "phaseless/errors.hpp"
#include "phaseless/matrix.hpp"
#include "phaseless/rational.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace phaseless;
using tests::nonneg;
using tests::rat_matrix;

namespace {

// Cofactor expansion along the first row; independent of the Bareiss route.
Rat det_cofactor(const RatMatrix& A) {
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
        Rat term = A(0, j) * det_cofactor(minor);
        if (j % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

RatMatrix random_rank_at_most(std::mt19937_64& rng, std::size_t n, std::size_t m, std::size_t r) {
    std::uniform_int_distribution<long> entry(-3, 3);
    RatMatrix L(n, r), R(r, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < r; ++k) L(i, k) = entry(rng);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < m; ++j) R(k, j) = entry(rng);
    RatMatrix P(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Rat s(0);
            for (std::size_t k = 0; k < r; ++k) s += L(i, k) * R(k, j);
            P(i, j) = s;
        }
    return P;
}

} // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("-7/2") == Rat(-7, 2));
    CHECK(parse_rational("  5 ") == Rat(5));
    CHECK(parse_rational("0.125") == Rat(1, 8));
    CHECK(parse_rational("-0.5") == Rat(-1, 2));
    CHECK(parse_rational("1e-3") == Rat(1, 1000));
    CHECK(parse_rational("2.5E2") == Rat(250));
    CHECK(parse_rational("-6/10") == Rat(-3, 5));

    CHECK(format_rational(Rat(3, 4)) == "3/4");
    CHECK(format_rational(Rat(-8, 2)) == "-4");
    CHECK(format_rational(Rat(0)) == "0");
    CHECK(parse_rational(format_rational(Rat(-1234, 567))) == Rat(-1234, 567));

    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.2.3"), ParseError);
}

TEST_CASE("rationalize recovers small fractions and stays within tolerance") {
    CHECK(rationalize(0.5) == Rat(1, 2));
    CHECK(rationalize(1.0 / 3.0) == Rat(1, 3));
    CHECK(rationalize(-2.0 / 7.0) == Rat(-2, 7));
    CHECK(rationalize(0.0) == Rat(0));
    CHECK(rationalize(41.0) == Rat(41));

    const double pi = 3.14159265358979323846;
    Rat approx = rationalize(pi);
    CHECK(std::abs(to_double(approx) - pi) <= 1e-12);

    CHECK_THROWS_AS(rationalize(std::nan("")), DomainError);
    CHECK_THROWS_AS(rationalize(INFINITY), DomainError);
}

TEST_CASE("integer square root and triangular inverse ceilings") {
    CHECK(ceil_isqrt(Int(0)) == 0);
    CHECK(ceil_isqrt(Int(1)) == 1);
    CHECK(ceil_isqrt(Int(2)) == 2);
    CHECK(ceil_isqrt(Int(4)) == 2);
    CHECK(ceil_isqrt(Int(5)) == 3);
    CHECK(ceil_isqrt(Int(16)) == 4);
    CHECK(ceil_isqrt(Int(17)) == 5);

    // smallest s with s(s+1)/2 >= r
    CHECK(ceil_triangular_inverse(Int(0)) == 0);
    CHECK(ceil_triangular_inverse(Int(1)) == 1);
    CHECK(ceil_triangular_inverse(Int(3)) == 2);
    CHECK(ceil_triangular_inverse(Int(4)) == 3);
    CHECK(ceil_triangular_inverse(Int(6)) == 3);
    CHECK(ceil_triangular_inverse(Int(7)) == 4);
    CHECK(ceil_triangular_inverse(Int(10)) == 4);
}

TEST_CASE("matrix construction and indexing") {
    RatMatrix A = rat_matrix(2, 3, {1, 2, 3, 4, 5, 6});
    CHECK(A.rows() == 2);
    CHECK(A.cols() == 3);
    CHECK(A(1, 2) == Rat(6));
    CHECK(A.at(0, 1) == Rat(2));
    CHECK_THROWS_AS(A.at(2, 0), DimensionError);
    CHECK_THROWS_AS(A.at(0, 3), DimensionError);
    CHECK_THROWS_AS(RatMatrix(2, 2, {Rat(1)}), DimensionError);

    RatMatrix T = A.transpose();
    CHECK(T.rows() == 3);
    CHECK(T(2, 1) == Rat(6));
    CHECK(T.transpose() == A);

    RatMatrix S = A.submatrix({1}, {0, 2});
    CHECK(S.rows() == 1);
    CHECK(S(0, 0) == Rat(4));
    CHECK(S(0, 1) == Rat(6));

    CHECK(A.select_columns({2, 0})(0, 0) == Rat(3));
    CHECK(A.select_rows({1})(0, 0) == Rat(4));
    CHECK(A.column(1) == std::vector<Rat>{Rat(2), Rat(5)});
    CHECK(A.row(0) == std::vector<Rat>{Rat(1), Rat(2), Rat(3)});

    RatMatrix B = rat_matrix(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
    RatMatrix L = B.leading(2);
    CHECK(L.rows() == 2);
    CHECK(L(1, 1) == Rat(5));

    CHECK(RatMatrix::identity(3)(2, 2) == Rat(1));
    CHECK(RatMatrix::identity(3)(0, 1) == Rat(0));
    CHECK(RatMatrix::constant(2, 2, Rat(7))(1, 0) == Rat(7));
}

TEST_CASE("nonnegative matrix rejects negative entries") {
    CHECK_NOTHROW(NonnegMatrix(rat_matrix(2, 2, {0, 1, 2, 3})));
    CHECK_THROWS_AS(NonnegMatrix(rat_matrix(2, 2, {0, 1, -1, 3})), DomainError);
    CHECK(NonnegMatrix::identity(2)(0, 0) == Rat(1));
    CHECK(NonnegMatrix::constant(2, 3, Rat(4))(1, 2) == Rat(4));
}

TEST_CASE("comparison matrix sign pattern") {
    NonnegMatrix A = nonneg(2, 2, {3, 1, 2, 5});
    ComparisonMatrix Z = comparison_matrix(A);
    CHECK(Z(0, 0) == Rat(3));
    CHECK(Z(0, 1) == Rat(-1));
    CHECK(Z(1, 0) == Rat(-2));
    CHECK(Z(1, 1) == Rat(5));

    // column map sigma: column j of the product is column sigma[j] of A
    ComparisonMatrix Zs = comparison_matrix(A, {1, 0});
    CHECK(Zs(0, 0) == Rat(1));
    CHECK(Zs(0, 1) == Rat(-3));
    CHECK(Zs(1, 0) == Rat(-5));
    CHECK(Zs(1, 1) == Rat(2));

    CHECK_THROWS_AS(ComparisonMatrix(rat_matrix(2, 2, {1, 2, -1, 1})), DomainError);
    CHECK_THROWS_AS(ComparisonMatrix(rat_matrix(2, 2, {-1, -2, -1, 1})), DomainError);
    CHECK_THROWS_AS(comparison_matrix(nonneg(2, 3, {1, 1, 1, 1, 1, 1})), DimensionError);
}

TEST_CASE("exact rank agrees with construction and with the numerical routes") {
    CHECK(rational_rank(RatMatrix::identity(4)) == 4);
    CHECK(rational_rank(RatMatrix::constant(3, 5, Rat(2))) == 1);
    CHECK(rational_rank(rat_matrix(2, 2, {1, 2, 2, 4})) == 1);
    CHECK(rational_rank(rat_matrix(2, 2, {1, 2, 3, 4})) == 2);
    CHECK(rational_rank(RatMatrix(0, 0)) == 0);
    CHECK(rational_rank(tests::derangement4()) == 4);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + trial % 4, m = 2 + (trial / 2) % 5;
        std::size_t r = 1 + trial % std::min(n, m);
        RatMatrix P = random_rank_at_most(rng, n, m, r);
        std::size_t exact = rational_rank(P);
        CHECK(exact <= r);

        // independent routes on |P|
        RatMatrix Q(n, m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) Q(i, j) = abs_rat(P(i, j));
        std::vector<double> phases(n * m, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (P(i, j) < 0) phases[i * m + j] = 3.14159265358979323846;
        PhasedMatrix B(NonnegMatrix(Q), phases);
        CHECK(numerical_rank(B) == exact);
        CHECK(elimination_rank(B) == exact);
    }
}

TEST_CASE("exact determinant against cofactor expansion") {
    CHECK(det_exact(RatMatrix::identity(3)) == Rat(1));
    CHECK(det_exact(rat_matrix(2, 2, {1, 2, 3, 4})) == Rat(-2));
    CHECK(det_exact(rat_matrix(3, 3, {0, 1, 0, 1, 0, 0, 0, 0, 1})) == Rat(-1));
    CHECK(det_exact(rat_matrix(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9})) == Rat(0));
    CHECK(det_exact(tests::derangement4().values()) == Rat(-3));
    CHECK_THROWS_AS(det_exact(RatMatrix(2, 3)), DimensionError);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> entry(-5, 5);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 2 + trial % 4;
        RatMatrix A(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) A(i, j) = entry(rng);
        CHECK(det_exact(A) == det_cofactor(A));
    }
}

TEST_CASE("leading minors match determinants of leading blocks") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> entry(-4, 4);
    RatMatrix A(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) A(i, j) = entry(rng);
    std::vector<Rat> minors = leading_minors(A);
    REQUIRE(minors.size() == 4);
    for (std::size_t k = 1; k <= 4; ++k) CHECK(minors[k - 1] == det_exact(A.leading(k)));
}

TEST_CASE("hadamard product, square and powers") {
    NonnegMatrix A = nonneg(2, 2, {1, 2, 3, 4});
    NonnegMatrix B = nonneg(2, 2, {5, 6, 7, 8});
    NonnegMatrix P = hadamard_product(A, B);
    CHECK(P(0, 0) == Rat(5));
    CHECK(P(1, 1) == Rat(32));
    CHECK_THROWS_AS(hadamard_product(A, nonneg(2, 3, {1, 1, 1, 1, 1, 1})), DimensionError);

    NonnegMatrix S = hadamard_square(A);
    CHECK(S(1, 0) == Rat(9));

    // integer exponents stay exact
    NonnegMatrix C = hadamard_power(A, Rat(3));
    CHECK(C(1, 1) == Rat(64));
    NonnegMatrix D = hadamard_power(nonneg(2, 2, {1, 4, 9, 16}), Rat(1, 2));
    CHECK(D(0, 1) == Rat(2));
    CHECK(D(1, 1) == Rat(4));

    // fractional exponent then square returns the original within rounding
    NonnegMatrix E = nonneg(2, 2, {2, 3, 5, 7});
    NonnegMatrix R = hadamard_square(hadamard_power(E, Rat(1, 2)));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(std::abs(to_double(R(i, j)) - to_double(E(i, j))) <= 1e-9);

    CHECK_THROWS_AS(hadamard_power(A, Rat(0)), DomainError);
    CHECK_THROWS_AS(hadamard_power(A, Rat(-1)), DomainError);
}

TEST_CASE("phased matrices normalize phases and expose complex entries") {
    NonnegMatrix mod = nonneg(2, 2, {0, 1, 2, 3});
    const double twopi = 2 * 3.14159265358979323846;
    std::vector<double> ph = {1.0, -1.0, twopi + 0.5, 7.0};
    PhasedMatrix B(mod, ph);

    CHECK(B.phase(0, 0) == 0.0); // zero modulus forces phase 0
    CHECK(B.phase(0, 1) == doctest::Approx(twopi - 1.0));
    CHECK(B.phase(1, 0) == doctest::Approx(0.5));
    CHECK(B.phase(1, 1) == doctest::Approx(7.0 - twopi));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(B.phase(i, j) >= 0.0);
            CHECK(B.phase(i, j) < twopi);
        }

    std::complex<double> e = B.entry(0, 1);
    CHECK(std::abs(e - std::polar(1.0, -1.0)) <= 1e-15);

    CHECK_THROWS_AS(PhasedMatrix(mod, std::vector<double>(3, 0.0)), DimensionError);

    PhasedMatrix R = PhasedMatrix::real(mod);
    CHECK(R.phase(1, 1) == 0.0);
    CHECK(R.entry(1, 0) == std::complex<double>(2.0, 0.0));

    SUBCASE("column rotation multiplies a column by a unit scalar") {
        PhasedMatrix C = B;
        C.rotate_column(1, 1.5);
        CHECK(std::abs(C.entry(0, 1) - B.entry(0, 1) * std::polar(1.0, 1.5)) <= 1e-12);
        CHECK(std::abs(C.entry(1, 1) - B.entry(1, 1) * std::polar(1.0, 1.5)) <= 1e-12);
        CHECK(C.entry(0, 0) == B.entry(0, 0));
        CHECK(C.phase(0, 1) >= 0.0);
        CHECK(C.phase(0, 1) < twopi);
    }

    SUBCASE("transpose moves entries without conjugation") {
        PhasedMatrix T = B.transpose();
        CHECK(T.rows() == 2);
        CHECK(std::abs(T.entry(1, 0) - B.entry(0, 1)) <= 1e-15);
    }
}

TEST_CASE("numerical and elimination ranks flag near-singular structure") {
    // rank-2 complex matrix u v^T + w conj(v)^T
    std::vector<std::complex<double>> u = {1.0, {0.0, 1.0}, 2.0};
    std::vector<std::complex<double>> v = {1.0, 1.0, {1.0, 1.0}};
    std::vector<std::complex<double>> w = {1.0, -1.0, 0.5};
    RatMatrix moduli(3, 3);
    std::vector<double> phases(9);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            std::complex<double> e = u[i] * v[j] + w[i] * std::conj(v[j]);
            moduli(i, j) = rationalize(std::abs(e), 1e-12);
            phases[i * 3 + j] = std::arg(e);
        }
    PhasedMatrix B(NonnegMatrix(moduli), phases);
    CHECK(numerical_rank(B, 1e-8) == 2);
    CHECK(elimination_rank(B, 1e-8) == 2);
    std::vector<double> sv = singular_values(B);
    CHECK(sv.size() == 3);
    CHECK(sv[2] <= 1e-10 * sv[0]);
}
