#include <doctest.h>

#include "msgf/oracle.hpp"

using namespace msgf;

TEST_SUITE("oracle") {

TEST_CASE("summation identity against a high-precision sum") {
    const cplx gs(0.4, -0.05);
    const auto a = oracle::verify_sum_identity(1.3, 0.5, 2.0, gs, 1600);
    const cplx ref1(0.49900694386312073251, 0.13908787587174741333);
    CHECK(std::abs(a.rhs - ref1) / std::abs(ref1) < 1e-12);
    CHECK(std::abs(a.lhs - ref1) / std::abs(ref1) < 1e-12);
    const auto b = oracle::verify_sum_identity(0.3, 1.0, 1.0, gs, 1600);
    const cplx ref2(0.21453783738730187708, 0.033008549008091084588);
    CHECK(std::abs(b.rhs - ref2) / std::abs(ref2) < 1e-12);
}

TEST_CASE("summation identity needs a convergent sum") {
    CHECK_THROWS_AS(oracle::verify_sum_identity(0.3, 1.0, 1.0, cplx(0.4, 0.0), 100), Error);
    CHECK_THROWS_AS(oracle::verify_sum_identity(0.3, 1.0, 1.0, cplx(0.4, -0.1), -1), Error);
}

TEST_CASE("truncation validation") {
    oracle::TruncationSpec t;
    t.m_max = -1;
    CHECK_THROWS_AS(oracle::validate(t), Error);
    t.m_max = 0;
    t.l_max = -1;
    CHECK_THROWS_AS(oracle::validate(t), Error);
    t.l_max = 0;
    t.damping = -0.1;
    CHECK_THROWS_AS(oracle::validate(t), Error);
}

TEST_CASE("a single radial shell is the m = 0 term") {
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
    const auto rc = reduce({0.0, 1.1, 0.7, 0.0}, {0.0, 0.8, -0.4, 0.0}, cfg);
    const auto one = oracle::transverse_bilinears(0, 2, -1, rc, cfg, Extension::MinusHalfPi);
    const auto many = oracle::transverse_bilinears(5, 2, -1, rc, cfg, Extension::MinusHalfPi);
    REQUIRE(one.size() == 1);
    CHECK(std::abs(one[0] - many[0]) < 1e-15);
}

TEST_CASE("bilinear relation holds and rejects zero modes") {
    const SpacetimePoint p{0.4, 1.1, 0.7, 0.2}, pp{0.0, 0.8, -0.4, -0.1};
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
    CHECK(oracle::verify_bilinear({1, 2, {}}, cfg, Extension::MinusHalfPi, p, pp, Branch::Plus) < 1e-8);
    CHECK_THROWS_AS(oracle::verify_bilinear({0, 0, {}}, cfg, Extension::MinusHalfPi, p, pp, Branch::Plus), Error);
}

TEST_CASE("scalar correspondence and its failure") {
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
    const auto rc = reduce({0.0, 1.1, 0.7, 0.0}, {0.0, 0.8, -0.4, 0.0}, cfg);
    const ProperTime s{cplx(0.4, -0.05)};
    CHECK(oracle::verify_scalar_correspondence(3, s, rc, cfg) < 1e-12);
    CHECK(oracle::verify_scalar_correspondence(0, s, rc, cfg, Extension::PlusHalfPi) < 1e-12);
    CHECK(oracle::verify_scalar_correspondence(0, s, rc, cfg, Extension::MinusHalfPi) > 0.1);
}

TEST_CASE("nonrelativistic partial wave against its mode sum") {
    const auto cfg = FieldConfiguration::make(-1.0, 0, 0.3, 1.0);
    const auto rc = reduce({0.0, 1.1, 0.7, 0.0}, {0.0, 0.8, -0.4, 0.0}, cfg);
    const cplx tau(0.5, -0.08);
    const NonrelKind k{Species::Antiparticle, Spin::Down};
    const cplx a = nonrel_Sl(1, k, rc, cfg, tau, Extension::PlusHalfPi);
    const cplx b = oracle::nonrel_mode_sum(1, k, rc, cfg, Extension::PlusHalfPi, tau, 200);
    CHECK(std::abs(a - b) < 1e-10 * std::abs(b));
}

}
