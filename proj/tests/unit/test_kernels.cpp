#include <doctest.h>

#include "msgf/oracle.hpp"

using namespace msgf;

namespace {
double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }
double rel(const KernelMatrix& a, const KernelMatrix& b) { return (a - b).norm() / b.norm(); }
const SpacetimePoint kX{0.4, 1.1, 0.7, 0.2};
const SpacetimePoint kXp{0.0, 0.8, -0.4, -0.1};
}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("Y against high-precision partial-wave sums") {
    CHECK(rel(y_function(2.5, 0.3, 0.3), {-0.48352583911854945218, -0.3994494040884790931}) < 1e-12);
    CHECK(rel(y_function({6.0, 0.8}, 1.7, -0.7), {-0.55268565128651033688, 0.70188951235713414263}) < 1e-12);
    CHECK(rel(y_function({11.0, -0.6}, {-2.4, 0.05}, 0.0), {0.25683813084227625011, -0.15316246017228646573}) < 1e-11);
}

TEST_CASE("Y series and integral agree") {
    for (cplx z : {cplx(9.0, 0.0), cplx(3.0, -1.0)})
        for (double mu : {0.25, -0.6}) CHECK(rel(y_integral(z, 0.9, mu, 1e-14), y_series_adaptive(z, 0.9, mu).value) < 1e-10);
    CHECK_THROWS_AS(y_series(1.0, 0.2, 0.3, 0), Error);
}

TEST_CASE("closed-form kernel against the mode sum") {
    oracle::TruncationSpec t;
    t.m_max = 300;
    for (double eB : {1.0, -1.0})
        for (Extension ext : {Extension::MinusHalfPi, Extension::PlusHalfPi}) {
            const auto cfg = FieldConfiguration::make(eB, 1, 0.3, 1.0);
            const auto rc = reduce(kX, kXp, cfg);
            const ProperTime s{cplx(0.5, -0.06)};
            CHECK(rel(f_total(s, rc, cfg, ext), oracle::mode_sum_kernel(s, rc, cfg, ext, t).value) < 1e-10);
        }
}

TEST_CASE("total kernel splits into critical and noncritical parts") {
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.45, 1.0);
    const auto rc = reduce(kX, kXp, cfg);
    const ProperTime s{cplx(1.3, -0.2)};
    const KernelMatrix sum = f_noncritical(s, rc, cfg) + f_critical(s, rc, cfg, Extension::PlusHalfPi);
    CHECK(rel(sum, f_total(s, rc, cfg, Extension::PlusHalfPi)) < 1e-13);
}

TEST_CASE("flux-free limit matches the uniform kernel") {
    const auto cfg = FieldConfiguration::make(-1.0, 0, 1e-8, 1.0);
    const auto rc = reduce(kX, kXp, cfg);
    const ProperTime s{cplx(0.8, -0.1)};
    for (Extension ext : {Extension::MinusHalfPi, Extension::PlusHalfPi})
        CHECK(rel(f_total(s, rc, cfg, ext), f_uniform(s, rc, cfg)) < 1e-6);
}

TEST_CASE("pole guard") {
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
    CHECK_THROWS_AS(bessel_argument(1.0, ProperTime{cplx(kPi, 0.0)}, 0.5, 0.5), Error);
    CHECK_NOTHROW(bessel_argument(1.0, ProperTime{cplx(kPi, -0.01)}, 0.5, 0.5));
    const auto rc = reduce(kX, kXp, cfg);
    CHECK_THROWS_AS(f_total(ProperTime{cplx(2.0 * kPi, 0.0)}, rc, cfg, Extension::MinusHalfPi), Error);
}

TEST_CASE("anticausal square root sheet") {
    CHECK(std::abs(sqrt_s({cplx(-1.0, 0.0), Side::Anticausal}) - cplx(0.0, -1.0)) < 1e-15);
    CHECK(std::abs(sqrt_s({cplx(4.0, 0.0), Side::Causal}) - 2.0) < 1e-15);
    CHECK_THROWS_AS(sqrt_s({cplx(0.0, 0.0)}), Error);
}

TEST_CASE("scalar kernel and its partial waves") {
    const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
    const auto rc = reduce(kX, kXp, cfg);
    const ProperTime s{cplx(0.6, -0.05)};
    cplx sum = 0.0;
    for (int l = -40; l <= 40; ++l) sum += f_scalar_partial(l, s, rc, cfg);
    CHECK(rel(sum, f_scalar(s, rc, cfg)) < 1e-12);
    CHECK_THROWS_AS(f_scalar(s, rc, cfg, 1), Error);
}

}
