#include <doctest.h>

#include "msgf/proptime.hpp"

using namespace msgf;

namespace {
const SpacetimePoint kX{0.3, 1.1, 0.7, 0.0};
const SpacetimePoint kXp{0.0, 0.8, -0.4, 0.0};
}  // namespace

TEST_SUITE("proptime") {

TEST_CASE("contour validation") {
    ContourSpec c;
    c.theta = 0.0;
    CHECK_THROWS_AS(validate(c), Error);
    c = {};
    c.delta = -1.0;
    CHECK_THROWS_AS(validate(c), Error);
    c = {};
    c.max_panels = 0;
    CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("short tail is rejected") {
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
    ContourSpec c;
    c.T = 1.0;
    CHECK_THROWS_AS(build_contour(Side::Causal, reduce(kX, kXp, cfg), cfg, c), Error);
}

TEST_CASE("no initial direction between the light cones") {
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
    // |dx_perp| < dx0 < r + r'
    const auto rc = reduce({1.5, 1.1, 0.7, 0.0}, kXp, cfg);
    CHECK_THROWS_AS(initial_direction(Side::Causal, rc), Error);
    const auto far = reduce({2.5, 1.1, 0.7, 0.0}, kXp, cfg);
    // timelike: the leg leaves through the upper half plane on either side
    CHECK(initial_direction(Side::Causal, far) > 0.0);
    CHECK(initial_direction(Side::Anticausal, far) < -kPi);
    const auto spacelike = reduce({0.1, 1.1, 0.7, 0.0}, kXp, cfg);
    CHECK(initial_direction(Side::Causal, spacelike) < 0.0);
    CHECK(initial_direction(Side::Anticausal, spacelike) > -kPi);
}

TEST_CASE("contours agree") {
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
    const auto rc = reduce(kX, kXp, cfg);
    ContourSpec a, b;
    a.theta = 0.3;
    b.kind = ContourKind::ShiftedLine;
    const cplx va = integrate_scalar(Side::Causal, rc, cfg, 2, a).value;
    const cplx vb = integrate_scalar(Side::Causal, rc, cfg, 2, b).value;
    CHECK(std::abs(va - vb) < 1e-8 * std::abs(va));
}

TEST_CASE("spacelike causal and anticausal functions coincide") {
    const auto cfg = FieldConfiguration::make(-1.0, 0, 0.3, 1.0);
    const auto rc = reduce(kX, kXp, cfg);
    const cplx a = integrate_scalar(Side::Causal, rc, cfg).value;
    const cplx b = integrate_scalar(Side::Anticausal, rc, cfg).value;
    CHECK(std::abs(a - b) < 1e-9 * std::abs(a));
}

TEST_CASE("step-function combinations") {
    KernelMatrix c(2, 2), cb(2, 2);
    c << 1.0, 2.0, 3.0, 4.0;
    cb << 0.5, -1.0, cplx(0.0, 1.0), 2.0;
    const KernelMatrix S = c - cb;
    CHECK((assemble(PropagatorKind::Commutation, c, cb, 0.5) - S).norm() == 0.0);
    CHECK((assemble(PropagatorKind::Commutation, c, cb, -0.5) + S).norm() == 0.0);
    CHECK((assemble(PropagatorKind::Retarded, c, cb, 0.5) - S).norm() == 0.0);
    CHECK(assemble(PropagatorKind::Advanced, c, cb, 0.5).norm() == 0.0);
    CHECK(assemble(PropagatorKind::Retarded, c, cb, -0.5).norm() == 0.0);
    const KernelMatrix diff = assemble(PropagatorKind::Retarded, c, cb, 0.5) - assemble(PropagatorKind::Advanced, c, cb, 0.5);
    CHECK((diff - assemble(PropagatorKind::Commutation, c, cb, 0.5)).norm() == 0.0);
    CHECK((assemble(PropagatorKind::Causal, c, cb, 0.0) - c).norm() == 0.0);
    CHECK_THROWS_AS(assemble(PropagatorKind::Retarded, c, cb, 0.0), Error);
}

TEST_CASE("Dirac operator on a constant field") {
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 2.0);
    KernelMatrix C(2, 2);
    C << 1.0, cplx(0.0, 2.0), -1.0, 0.5;
    auto field = [&](const SpacetimePoint&) { return C; };
    const SpacetimePoint x{0.0, 1.2, 0.3, 0.0};
    const Stencil st = sample_stencil(field, x, 1e-2, Dimension::D2plus1);
    const auto pot = potentials(cfg, x);
    KernelMatrix want = 2.0 * C;
    for (int a = 0; a < 3; ++a) want += gamma_algebra::gamma(a, Dimension::D2plus1) * pot.eA[a] * C;
    CHECK((apply_dirac_operator(st, cfg, MassSign::PlusM) - want).norm() < 1e-13);
    CHECK_THROWS_AS(sample_stencil(field, {0.0, 0.05, 0.0, 0.0}, 1e-2, Dimension::D2plus1), Error);
}

TEST_CASE("propagator argument checks") {
    const auto cfg3 = FieldConfiguration::make(1.0, 0, 0.3, 1.0, Dimension::D3plus1);
    PropagatorOptions o;
    o.spin_down = true;
    CHECK_THROWS_AS(propagator(PropagatorKind::Causal, kX, kXp, cfg3, Extension::MinusHalfPi, o), Error);
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
    CHECK_THROWS_AS(propagator(PropagatorKind::Retarded, {0.0, 1.1, 0.7, 0.0}, kXp, cfg, Extension::MinusHalfPi), Error);
}

}
