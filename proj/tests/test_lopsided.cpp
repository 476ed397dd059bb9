#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "phaseless/errors.hpp"
#include "phaseless/lopsided.hpp"
#include "phaseless/rational.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

using namespace phaseless;

namespace {

const double kPi = 3.14159265358979323846;

double closure_residual(const std::vector<Rat>& v, const PhaseAssignment& pa) {
    std::complex<double> sum(0.0, 0.0);
    for (std::size_t k = 0; k < v.size(); ++k) sum += std::polar(to_double(v[k]), pa.phases[k]);
    return std::abs(sum);
}

Rat entry_sum(const std::vector<Rat>& v) {
    Rat s(0);
    for (const Rat& x : v) s += x;
    return s;
}

std::vector<Rat> rat_list(const std::vector<long>& v) {
    std::vector<Rat> out;
    out.reserve(v.size());
    for (long x : v) out.emplace_back(x);
    return out;
}

} // namespace

TEST_CASE("lopsidedness is an exact strict comparison") {
    CHECK(is_lopsided(rat_list({3, 1, 1})));
    CHECK_FALSE(is_lopsided(rat_list({2, 1, 1}))); // tie closes to a flat polygon
    CHECK_FALSE(is_lopsided(rat_list({1, 1, 1})));
    CHECK(is_lopsided(rat_list({1, 0, 0})));
    CHECK(is_lopsided(rat_list({5})));
    CHECK_FALSE(is_lopsided(rat_list({0})));
    CHECK_FALSE(is_lopsided({}));
    CHECK_FALSE(is_lopsided({Rat(1, 2), Rat(1, 3), Rat(1, 6)}));
    CHECK(is_lopsided({Rat(1, 2), Rat(1, 3), Rat(1, 7)}));
    CHECK_THROWS_AS(is_lopsided({Rat(1), Rat(-1)}), DomainError);
}

TEST_CASE("dominant index picks the first maximum") {
    CHECK(dominant_index(rat_list({1, 3, 2})) == 1);
    CHECK(dominant_index(rat_list({3, 3, 1})) == 0);
    CHECK(dominant_index(rat_list({0, 0})) == 0);
}

TEST_CASE("weight vectors are validated and normalized") {
    CHECK_NOTHROW(WeightVector({Rat(1, 2), Rat(1, 2)}));
    CHECK_THROWS_AS(WeightVector({Rat(1, 2), Rat(1, 3)}), DomainError);
    CHECK_THROWS_AS(WeightVector({Rat(3, 2), Rat(-1, 2)}), DomainError);
    WeightVector u = WeightVector::uniform(4);
    CHECK(u.size() == 4);
    CHECK(u[2] == Rat(1, 4));
    CHECK(entry_sum(u.values()) == Rat(1));
}

TEST_CASE("lop membership is nonlopsidedness of the scaled list") {
    std::vector<Rat> x = rat_list({4, 1, 1});
    CHECK_FALSE(lop_membership(x, WeightVector::uniform(3)));
    // weights shifting mass off the dominant entry restore closability
    CHECK(lop_membership(x, WeightVector({Rat(1, 6), Rat(5, 12), Rat(5, 12)})));
    CHECK_THROWS_AS(lop_membership(rat_list({1, -1, 1}), WeightVector::uniform(3)),
                    DomainError);
    CHECK_THROWS_AS(lop_membership(x, WeightVector::uniform(2)), DimensionError);
}

TEST_CASE("polygon closure on reference triangles") {
    SUBCASE("equilateral: third roots of unity") {
        PhaseAssignment pa = close_polygon(rat_list({1, 1, 1}));
        CHECK(pa.residual <= 1e-12);
        std::vector<double> sorted(pa.phases);
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted[0] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(sorted[1] == doctest::Approx(2 * kPi / 3));
        CHECK(sorted[2] == doctest::Approx(4 * kPi / 3));
    }

    SUBCASE("3-4-5 right triangle") {
        std::vector<Rat> v = rat_list({3, 4, 5});
        PhaseAssignment pa = close_polygon(v);
        CHECK(pa.residual <= 1e-10 * 12);
        CHECK(closure_residual(v, pa) == doctest::Approx(pa.residual).epsilon(1e-12));
        // the legs meet at a right angle
        double between = pa.phases[0] - pa.phases[1];
        CHECK(std::abs(std::cos(between)) <= 1e-12);
    }

    SUBCASE("degenerate tie folds flat") {
        PhaseAssignment pa = close_polygon(rat_list({2, 1, 1}));
        CHECK(pa.residual <= 1e-12);
        CHECK(pa.phases[0] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(std::cos(pa.phases[1]) == doctest::Approx(-1.0));
        CHECK(std::cos(pa.phases[2]) == doctest::Approx(-1.0));
    }

    SUBCASE("two entries") {
        PhaseAssignment pa = close_polygon(rat_list({5, 5}));
        CHECK(pa.residual <= 1e-12);
        CHECK(std::abs(std::cos(pa.phases[0] - pa.phases[1]) + 1.0) <= 1e-12);
    }

    SUBCASE("zeros keep phase zero") {
        PhaseAssignment pa = close_polygon(rat_list({0, 1, 1, 0}));
        CHECK(pa.residual <= 1e-12);
        CHECK(pa.phases[0] == 0.0);
        CHECK(pa.phases[3] == 0.0);
    }

    SUBCASE("all zeros close trivially") {
        PhaseAssignment pa = close_polygon(rat_list({0, 0}));
        CHECK(pa.residual == 0.0);
    }
}

TEST_CASE("lopsided inputs raise with the dominant position") {
    CHECK_THROWS_AS(close_polygon(rat_list({3, 1, 1})), LopsidedError);
    try {
        close_polygon(rat_list({1, 9, 2}));
        FAIL("expected LopsidedError");
    } catch (const LopsidedError& e) {
        CHECK(e.index == 1);
    }
    CHECK_THROWS_AS(close_polygon(rat_list({1})), LopsidedError);
    CHECK_THROWS_AS(close_polygon(std::vector<double>{2.0, 0.5, 0.5}), LopsidedError);
}

TEST_CASE("double overload agrees with the rational one") {
    std::vector<double> vd = {1.5, 2.25, 3.0};
    PhaseAssignment pa = close_polygon(vd);
    std::complex<double> sum(0, 0);
    for (std::size_t k = 0; k < vd.size(); ++k) sum += std::polar(vd[k], pa.phases[k]);
    CHECK(std::abs(sum) <= 1e-10 * 6.75);
}

TEST_CASE("closure property over random nonlopsided lists") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> len_dist(2, 12);
    std::uniform_int_distribution<long> num(0, 1000);

    int closed = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int len = len_dist(rng);
        std::vector<Rat> v;
        v.reserve(static_cast<std::size_t>(len));
        for (int k = 0; k < len; ++k) v.emplace_back(Rat(num(rng)) / 125);
        if (is_lopsided(v)) {
            CHECK_THROWS_AS(close_polygon(v), LopsidedError);
            continue;
        }
        PhaseAssignment pa = close_polygon(v);
        REQUIRE(pa.phases.size() == v.size());
        double bound = 1e-10 * to_double(entry_sum(v));
        CHECK(pa.residual <= bound);
        CHECK(closure_residual(v, pa) <= bound + 1e-15);
        for (double ph : pa.phases) {
            CHECK(ph >= 0.0);
            CHECK(ph < 2 * kPi);
        }
        ++closed;
    }
    CHECK(closed > 400); // the sampler must actually exercise the closure path
}
