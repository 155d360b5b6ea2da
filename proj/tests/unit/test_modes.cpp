#include <doctest.h>

#include "msgf/modes.hpp"

using namespace msgf;

TEST_SUITE("modes") {

TEST_CASE("field configuration validation") {
    CHECK_THROWS_AS(FieldConfiguration::make(0.0, 0, 0.3, 1.0), Error);
    CHECK_THROWS_AS(FieldConfiguration::make(1.0, 0, 1.0, 1.0), Error);
    CHECK_THROWS_AS(FieldConfiguration::make(1.0, 0, -0.1, 1.0), Error);
    CHECK_THROWS_AS(FieldConfiguration::make(1.0, 0, 0.3, 0.0), Error);
    const auto c = FieldConfiguration::make(-2.0, 1, 0.3, 1.0);
    CHECK(c.gamma() == 2.0);
    CHECK(c.sgnB() == -1);
}

TEST_CASE("zero mode appears once at l >= 0 for B > 0 with the attractive extension") {
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
    int zeros = 0;
    for (int m = 0; m <= 3; ++m)
        for (int l = 0; l <= 3; ++l)
            for (int s : {-1, 1}) {
                const double w = omega_spectrum({m, l, s, {}}, cfg, Extension::MinusHalfPi);
                CHECK(w >= 0.0);
                if (w == 0.0) {
                    ++zeros;
                    CHECK(m == 0);
                    CHECK(l == 0);
                    CHECK(s == -1);
                }
            }
    CHECK(zeros == 1);
}

TEST_CASE("B > 0 spectrum: 2 gamma (m + l + mu) above the threshold, Landau degeneracy below") {
    const auto cfg = FieldConfiguration::make(1.5, 0, 0.3, 1.0);
    for (int m = 0; m < 6; ++m)
        for (int l = 1; l < 6; ++l) {
            const double want = 3.0 * (m + l + 0.3);
            CHECK(omega_spectrum({m, l, -1, {}}, cfg, Extension::MinusHalfPi) == doctest::Approx(want).epsilon(1e-13));
            CHECK(omega_spectrum({m, l + 1, 1, {}}, cfg, Extension::PlusHalfPi) == doctest::Approx(want + 3.0).epsilon(1e-13));
        }
    for (int m = 0; m < 4; ++m)
        for (int l = -4; l < 0; ++l) {
            CHECK(omega_spectrum({m, l, -1, {}}, cfg, Extension::MinusHalfPi) == doctest::Approx(3.0 * m).epsilon(1e-13));
            CHECK(omega_spectrum({m, l, 1, {}}, cfg, Extension::MinusHalfPi) == doctest::Approx(3.0 * (m + 1)).epsilon(1e-13));
        }
}

TEST_CASE("spectrum table examples") {
    CHECK(omega_spectrum({1, 2, 1, {}}, FieldConfiguration::make(1.0, 0, 0.3, 1.0), Extension::PlusHalfPi) ==
          doctest::Approx(6.6).epsilon(1e-13));
    CHECK(omega_spectrum({0, 0, 1, {}}, FieldConfiguration::make(-1.0, 0, 0.3, 1.0), Extension::PlusHalfPi) == 0.0);
    CHECK(omega_spectrum({0, 0, -1, {}}, FieldConfiguration::make(-1.0, 0, 0.25, 1.0), Extension::MinusHalfPi) ==
          doctest::Approx(1.5).epsilon(1e-13));
}

TEST_CASE("energies") {
    CHECK(energy(3.0, 1.0, 1.0, Branch::Plus) == doctest::Approx(std::sqrt(5.0)));
    CHECK(energy(3.0, {}, 2.0, Branch::Minus) == doctest::Approx(-std::sqrt(7.0)));
    CHECK_THROWS_AS(energy(-0.1, {}, 1.0, Branch::Plus), Error);
}

TEST_CASE("radial order follows the extension only at l = 0") {
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
    CHECK(is_irregular(0, -1, cfg, Extension::MinusHalfPi) != is_irregular(0, -1, cfg, Extension::PlusHalfPi));
    CHECK(radial_order(2, -1, cfg, Extension::MinusHalfPi) == radial_order(2, -1, cfg, Extension::PlusHalfPi));
    CHECK(radial_order(2, -1, cfg, Extension::MinusHalfPi) == doctest::Approx(2.3));
}

TEST_CASE("Clifford algebra") {
    for (Dimension dim : {Dimension::D2plus1, Dimension::D3plus1}) {
        const int n = dim == Dimension::D2plus1 ? 3 : 4;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const KernelMatrix ga = gamma_algebra::gamma(a, dim), gb = gamma_algebra::gamma(b, dim);
                const KernelMatrix anti = ga * gb + gb * ga;
                const KernelMatrix want = (a == b ? 2.0 * gamma_algebra::metric(a) : 0.0) * gamma_algebra::identity(dim);
                CHECK((anti - want).norm() < 1e-14);
            }
    }
}

TEST_CASE("Dirac spinors solve the Dirac equation") {
    const SpacetimePoint p{0.3, 1.2, 0.4, 0.1};
    for (double eB : {1.0, -1.0})
        for (Extension ext : {Extension::MinusHalfPi, Extension::PlusHalfPi}) {
            const auto cfg = FieldConfiguration::make(eB, 0, 0.3, 1.0);
            CHECK(dirac_residual({1, 2, -1, {}}, cfg, ext, p, Branch::Plus) < 1e-6);
            CHECK(dirac_residual({2, -1, -1, {}}, cfg, ext, p, Branch::Minus) < 1e-6);
            const auto c3 = FieldConfiguration::make(eB, 0, 0.3, 1.0, Dimension::D3plus1);
            CHECK(dirac_residual({1, 1, -1, 0.4}, c3, ext, p, Branch::Plus) < 1e-6);
        }
}

TEST_CASE("ladder relation") {
    const SpacetimePoint p{0.0, 0.9, -0.7, 0.0};
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
    CHECK(ladder_check({1, 2, -1, {}}, cfg, Extension::MinusHalfPi, p) < 1e-6);
    CHECK(ladder_check({2, -2, -1, {}}, cfg, Extension::PlusHalfPi, p) < 1e-6);
    CHECK(std::abs(std::abs(ladder_coefficient(1, cfg, Extension::MinusHalfPi)) - 1.0) < 1e-15);
}

TEST_CASE("potentials are tangential") {
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
    const auto a = potentials_cartesian(cfg, 0.6, 0.8);
    CHECK(a.eA[0] == 0.0);
    CHECK(std::abs(0.6 * a.eA[1] + 0.8 * a.eA[2]) < 1e-15);
}

}
