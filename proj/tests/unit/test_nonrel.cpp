#include <doctest.h>

#include "msgf/nonrel.hpp"

using namespace msgf;

namespace {
const SpacetimePoint kX{0.0, 1.1, 0.7, 0.0};
const SpacetimePoint kXp{0.0, 0.8, -0.4, 0.0};
}  // namespace

TEST_SUITE("nonrel") {

TEST_CASE("closed sums against partial-wave sums") {
    const auto cfg = FieldConfiguration::make(1.0, 2, 0.3, 1.0);
    const auto rc = reduce(kX, kXp, cfg);
    for (Extension ext : {Extension::MinusHalfPi, Extension::PlusHalfPi})
        for (NonrelKind k : {NonrelKind{Species::Particle, Spin::Up}, NonrelKind{Species::Antiparticle, Spin::Down}}) {
            const cplx a = nonrel_retarded(k, rc, cfg, 0.9, ext);
            const cplx b = nonrel_retarded_lsum(k, rc, cfg, 0.9, ext, 40);
            CHECK(std::abs(a - b) < 1e-12 * std::abs(b));
        }
}

TEST_CASE("Schroedinger equation") {
    const auto cfg = FieldConfiguration::make(-1.0, 0, 0.6, 1.0);
    const NonrelKind k{Species::Particle, Spin::Down};
    const double x1 = 1.1 * std::cos(0.7), x2 = 1.1 * std::sin(0.7);
    auto K = [&](double y1, double y2, double tau) {
        const SpacetimePoint y{0.0, std::hypot(y1, y2), std::atan2(y2, y1), 0.0};
        return nonrel_kernel(k, reduce(y, kXp, cfg), cfg, tau, Extension::MinusHalfPi);
    };
    const double tau = 0.5, h = 2e-3;
    const cplx dt = (8.0 * (K(x1, x2, tau + h) - K(x1, x2, tau - h)) - (K(x1, x2, tau + 2 * h) - K(x1, x2, tau - 2 * h))) /
                    (12.0 * h);
    const cplx H = apply_nonrel_hamiltonian([&](double a, double b) { return K(a, b, tau); }, k, cfg, x1, x2, h);
    CHECK(std::abs(cplx(0.0, 1.0) * dt - H) < 1e-6 * std::abs(H));
}

TEST_CASE("energies are nonnegative and spin resolved") {
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
    for (int m = 0; m < 3; ++m)
        for (int l = -2; l <= 2; ++l)
            for (Species sp : {Species::Particle, Species::Antiparticle})
                for (Spin sn : {Spin::Up, Spin::Down})
                    CHECK(nonrel_energy(m, l, cfg, Extension::PlusHalfPi, {sp, sn}) >= 0.0);
}

TEST_CASE("domain of the retarded function") {
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
    const auto rc = reduce(kX, kXp, cfg);
    CHECK_THROWS_AS(nonrel_retarded({}, rc, cfg, -0.2, Extension::MinusHalfPi), Error);
    CHECK_THROWS_AS(nonrel_kernel({}, rc, cfg, cplx(0.3, 0.1), Extension::MinusHalfPi), Error);
    CHECK(nonrel_tau(3.0, 1.5) == 1.0);
}

TEST_CASE("small-r behavior of the s wave follows the extension") {
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
    const NonrelKind k{Species::Antiparticle, Spin::Up};
    auto S0 = [&](double r, Extension ext) {
        return std::abs(nonrel_Sl(0, k, reduce({0.0, r, 0.4, 0.0}, {0.0, 1.0, 0.0, 0.0}, cfg), cfg, 0.7, ext));
    };
    CHECK(S0(0.01, Extension::MinusHalfPi) > S0(0.02, Extension::MinusHalfPi));
    CHECK(S0(0.01, Extension::PlusHalfPi) < S0(0.02, Extension::PlusHalfPi));
}

}
