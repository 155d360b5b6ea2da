#include <doctest.h>

#include "msgf/specfun.hpp"

using namespace msgf;
using namespace msgf::specfun;

namespace {
double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("gamma at pinned arguments") {
    CHECK(gamma_fn(0.5) == doctest::Approx(1.7724538509055160273).epsilon(1e-14));
    CHECK(gamma_fn(4.3) == doctest::Approx(8.8553433604540370189).epsilon(1e-14));
    CHECK(gamma_fn(0.1) == doctest::Approx(9.5135076986687318363).epsilon(1e-14));
    CHECK(gamma_fn(10.5) == doctest::Approx(1133278.3889487855673).epsilon(1e-14));
    CHECK(std::exp(log_gamma(7.25)) == doctest::Approx(1155.3810139199896872).epsilon(1e-13));
    CHECK_THROWS_AS(gamma_fn(0.0), Error);
    CHECK_THROWS_AS(log_gamma(-1.5), Error);
}

TEST_CASE("Bessel J against high-precision values") {
    struct Ref {
        double nu;
        cplx z, value;
    };
    const Ref refs[] = {
        {0.3, {2.5, 0.0}, {0.17564108274377366137, 0.0}},
        {1.7, {3.0, 0.5}, {0.53326751759143373389, -0.047163445120584199848}},
        {5.2, {25.0, -2.0}, {-0.35567696122137201075, -0.44297237396349764714}},
        {-0.4, {60.0, 0.0}, {-0.10181957890801374993, 0.0}},
        {0.5, {20.0, 0.0}, {0.16288076385502987091, 0.0}},
        {0.0, {-18.0, 0.3}, {-0.013484293534151358031, -0.057246322411429227368}},
        {12.5, {40.0, 0.0}, {-0.11677617976922572195, 0.0}},
    };
    for (const auto& r : refs) {
        CAPTURE(r.nu);
        CAPTURE(r.z);
        CHECK(rel(bessel_j(r.nu, r.z), r.value) < 1e-12);
    }
}

TEST_CASE("Bessel three-term recurrence") {
    for (double nu : {0.4, 2.3, 7.9})
        for (cplx z : {cplx(1.2, 0.0), cplx(9.0, 1.5), cplx(33.0, -0.7)}) {
            const cplx lhs = bessel_j(nu - 1.0, z) + bessel_j(nu + 1.0, z);
            const cplx rhs = 2.0 * nu / z * bessel_j(nu, z);
            CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
        }
}

TEST_CASE("Bessel edge cases") {
    CHECK(bessel_j(0.0, 0.0) == cplx(1.0, 0.0));
    CHECK(bessel_j(0.7, 0.0) == cplx(0.0, 0.0));
    CHECK_THROWS_AS(bessel_j(-0.5, 0.0), Error);
    CHECK_THROWS_AS(bessel_j(-1.2, 1.0), Error);
    CHECK_THROWS_AS(bessel_j(0.5, 2.0 * kBesselZMax), Error);
    CHECK(bessel_j_flagged(0.5, cplx(-3.0, 0.0)).near_branch_cut);
    CHECK_FALSE(bessel_j_flagged(0.5, cplx(-3.0, 0.5)).near_branch_cut);
    const cplx z(4.0, 1.0);
    CHECK(rel(bessel_j_sheet(0.3, z, 1), bessel_j(0.3, z) * std::polar(1.0, 0.6 * kPi)) < 1e-15);
}

TEST_CASE("Laguerre functions against high-precision values") {
    CHECK(laguerre_fn({3, 0.3}, 1.7) == doctest::Approx(-0.32661765818564256436).epsilon(1e-13));
    CHECK(laguerre_fn({10, 1.5}, 12.0) == doctest::Approx(0.17514084473857572975).epsilon(1e-12));
    CHECK(laguerre_fn({0, -0.4}, 0.5) == doctest::Approx(0.73308949316144244104).epsilon(1e-13));
    CHECK(laguerre_fn({7, 0.0}, 3.3) == doctest::Approx(-0.23378056574510007135).epsilon(1e-12));
}

TEST_CASE("Laguerre order -1 reflects order +1") {
    CHECK(laguerre_fn({2, -1.0}, 0.9) == doctest::Approx(-0.47050736415996318392).epsilon(1e-13));
    const auto seq = laguerre_fn_sequence(4, -1.0, 2.2);
    CHECK(seq[0] == 0.0);
    for (int m = 1; m <= 4; ++m) CHECK(seq[m] == doctest::Approx(-laguerre_fn({m - 1, 1.0}, 2.2)));
    CHECK_THROWS_AS(laguerre_fn({1, -1.5}, 1.0), Error);
}

TEST_CASE("Laguerre polynomial closed form") {
    const double a = 0.7, x = 1.3;
    CHECK(laguerre_poly(2, a, x) == doctest::Approx(0.5 * x * x - (a + 2.0) * x + 0.5 * (a + 1.0) * (a + 2.0)));
    CHECK(laguerre_poly(0, a, x) == 1.0);
    CHECK_THROWS_AS(laguerre_poly(-1, a, x), Error);
}

TEST_CASE("Laguerre function on the axis") {
    CHECK(laguerre_fn({3, 0.0}, 0.0) == 1.0);
    CHECK(laguerre_fn({3, 0.4}, 0.0) == 0.0);
    CHECK_THROWS_AS(laguerre_fn({3, -0.4}, 0.0), Error);
}

TEST_CASE("Bessel derivative") {
    for (double nu : {0.3, 2.6})
        for (cplx z : {cplx(1.5, 0.0), cplx(18.0, 2.0)}) {
            const double h = 1e-4;
            const cplx fd = (bessel_j(nu, z + h) - bessel_j(nu, z - h)) / (2.0 * h);
            CHECK(std::abs(bessel_j_derivative(nu, z) - fd) < 1e-7 * (1.0 + std::abs(fd)));
        }
}

}
