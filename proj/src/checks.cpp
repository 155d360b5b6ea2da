#include "msgf/checks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <array>
#include <map>
#include <optional>

#include "msgf/oracle.hpp"
#include "msgf/proptime.hpp"
#include "msgf/quadrature.hpp"
#include "msgf/specfun.hpp"

namespace msgf::checks {

namespace {

using json = nlohmann::ordered_json;
const cplx I(0.0, 1.0);

struct Ctx {
    std::string id;
    double tolerance;
    bool lower_bound;
};

CheckResult row(const Ctx& c, json params, double residual) {
    CheckResult r;
    r.check = c.id;
    r.parameters = std::move(params);
    r.residual = residual;
    r.tolerance = c.tolerance;
    r.lower_bound = c.lower_bound;
    r.pass = std::isfinite(residual) && (c.lower_bound ? residual >= c.tolerance : residual <= c.tolerance);
    return r;
}

const char* ext_name(Extension e) { return e == Extension::MinusHalfPi ? "-pi/2" : "+pi/2"; }

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json point_json(const SpacetimePoint& p) { return json::array({p.x0, p.r, p.phi, p.x3}); }

double rel(cplx a, cplx b) {
    const double s = std::abs(b);
    return std::abs(a - b) / (s > 0.0 ? s : 1.0);
}

double rel(const KernelMatrix& a, const KernelMatrix& b) {
    const double s = b.norm();
    return (a - b).norm() / (s > 0.0 ? s : 1.0);
}

double entrywise(const KernelMatrix& a, const KernelMatrix& b) {
    const double s = b.cwiseAbs().maxCoeff();
    return (a - b).cwiseAbs().maxCoeff() / (s > 0.0 ? s : 1.0);
}

constexpr std::array<Extension, 2> kExts{Extension::MinusHalfPi, Extension::PlusHalfPi};

// Pinned point pairs, off-axis and away from each other.
const std::array<std::pair<SpacetimePoint, SpacetimePoint>, 5> kPairs{{
    {{0.4, 1.1, 0.7, 0.2}, {0.0, 0.8, -0.4, -0.1}},
    {{0.0, 1.5, 2.0, 0.0}, {0.0, 0.6, 0.1, 0.0}},
    {{-0.3, 0.7, -2.5, 0.0}, {0.0, 1.3, 0.9, 0.0}},
    {{0.2, 0.9, 1.4, 0.0}, {0.0, 0.9, -1.4, 0.0}},
    {{0.0, 2.1, 0.3, 0.0}, {0.0, 0.4, 2.9, 0.0}},
}};

// Spacelike pair used for the propagator-level checks.
const SpacetimePoint kPx{0.3, 1.1, 0.7, 0.0};
const SpacetimePoint kPxp{0.0, 0.8, -0.4, 0.0};

struct PropConfig {
    const char* name;
    FieldConfiguration cfg;
    Extension ext;
};

std::array<PropConfig, 3> prop_configs() {
    return {{{"mu=0.3,-pi/2", FieldConfiguration::make(1.0, 0, 0.3, 1.0), Extension::MinusHalfPi},
             {"mu=0.3,+pi/2", FieldConfiguration::make(1.0, 0, 0.3, 1.0), Extension::PlusHalfPi},
             {"mu=0,uniform", FieldConfiguration::make(1.0, 0, 0.0, 1.0), Extension::MinusHalfPi}}};
}

// ---- special functions -------------------------------------------------------

std::vector<CheckResult> gamma_values(const Ctx& c) {
    const std::array<std::pair<double, double>, 6> ref{{{0.5, 1.7724538509055160273},
                                                        {4.3, 8.8553433604540370189},
                                                        {0.1, 9.5135076986687318363},
                                                        {10.5, 1133278.3889487855673},
                                                        {1.0 / 3.0, 2.6789385347077477889},
                                                        {7.25, 1155.3810139199896872}}};
    std::vector<CheckResult> out;
    for (auto [x, v] : ref) out.push_back(row(c, {{"x", x}}, std::fabs(specfun::gamma_fn(x) - v) / v));
    return out;
}

std::vector<CheckResult> laguerre_orthonormality(const Ctx& c) {
    std::vector<CheckResult> out;
    for (double alpha : {0.0, 0.3, -0.4, 1.5}) {
        double worst = 0.0;
        for (int m = 0; m <= 10; ++m) {
            for (int k = m; k <= 10; ++k) {
                // x = t^2 tames the x^alpha endpoint.
                auto f = [&](double t) {
                    if (t == 0.0) return 0.0;
                    const double x = t * t;
                    return 2.0 * t * specfun::laguerre_fn({m, alpha}, x) * specfun::laguerre_fn({k, alpha}, x);
                };
                const auto r = quad::integrate(f, 0.0, 11.0, 1e-13, 1e-13, 4000);
                worst = std::max(worst, std::fabs(r.value - (m == k ? 1.0 : 0.0)));
            }
        }
        out.push_back(row(c, {{"alpha", alpha}, {"m_max", 10}}, worst));
    }
    return out;
}

std::vector<CheckResult> bessel_derivative(const Ctx& c) {
    std::vector<CheckResult> out;
    const std::array<cplx, 4> zs{cplx(0.7, 0.0), cplx(3.1, 0.5), cplx(25.0, -2.0), cplx(60.0, 0.0)};
    for (double nu : {0.3, 1.7, 5.2, -0.4}) {
        for (cplx z : zs) {
            const double h = 1e-3;
            auto J = [&](double d) { return specfun::bessel_j(nu, z + d); };
            const cplx fd = (8.0 * (J(h) - J(-h)) - (J(2 * h) - J(-2 * h))) / (12.0 * h);
            const cplx d = specfun::bessel_j_derivative(nu, z);
            const double scale = std::max(std::abs(d), std::abs(J(0.0)));
            out.push_back(row(c, {{"nu", nu}, {"z", cplx_json(z)}}, std::abs(fd - d) / scale));
        }
    }
    return out;
}

// ---- sum identity and Y --------------------------------------------------------

std::vector<CheckResult> sum_identity(const Ctx& c) {
    std::vector<CheckResult> out;
    const cplx gs(0.4, -0.05);
    for (double a : {0.3, 1.3, 2.7})
        for (double r1 : {0.5, 1.0, 2.0})
            for (double r2 : {0.5, 1.0, 2.0}) {
                const auto r = oracle::verify_sum_identity(a, r1, r2, gs, 300);
                out.push_back(row(c, {{"alpha", a}, {"rho", r1}, {"rho_prime", r2}, {"gamma_s", cplx_json(gs)}, {"m_max", 300}},
                                  r.residual));
            }
    return out;
}

std::vector<CheckResult> truncation_monotone(const Ctx& c) {
    std::vector<CheckResult> out;
    const cplx gs(0.4, -0.05);
    for (double a : {0.3, 1.3, 2.7})
        for (double r1 : {0.5, 2.0}) {
            const double fine = oracle::verify_sum_identity(a, r1, 1.0, gs, 300).residual;
            const double coarse = oracle::verify_sum_identity(a, r1, 1.0, gs, 150).residual;
            out.push_back(row(c, {{"alpha", a}, {"rho", r1}, {"rho_prime", 1.0}, {"m_max", json::array({150, 300})}},
                              fine / std::max(coarse, 1e-300)));
        }
    return out;
}

std::vector<CheckResult> y_equivalence(const Ctx& c) {
    std::vector<CheckResult> out;
    for (cplx z : {cplx(2.5, 0.0), cplx(6.0, 0.8), cplx(11.0, -0.6)})
        for (cplx eta : {cplx(0.3, 0.0), cplx(1.7, 0.0), cplx(-2.4, 0.05)})
            for (double mu : {0.0, 0.3, -0.7}) {
                const cplx s = y_series_adaptive(z, eta, mu).value;
                const cplx q = y_integral(z, eta, mu, 1e-14);
                out.push_back(row(c, {{"z", cplx_json(z)}, {"eta", cplx_json(eta)}, {"mu", mu}}, rel(q, s)));
            }
    return out;
}

std::vector<CheckResult> y_ode(const Ctx& c) {
    std::vector<CheckResult> out;
    for (cplx z : {cplx(1.3, 0.0), cplx(4.7, 0.0), cplx(9.5, 0.0), cplx(3.0, 0.5)})
        for (double eta : {0.4, 2.1})
            for (double mu : {0.3, -0.3}) {
                const double h = 1e-3;
                auto Y = [&](double d) { return y_function(z + d, eta, mu); };
                const cplx dy = (8.0 * (Y(h) - Y(-h)) - (Y(2 * h) - Y(-2 * h))) / (12.0 * h);
                const cplx src = 0.5 * std::polar(1.0, -0.5 * kPi * mu) *
                                 (-I * std::exp(I * eta) * specfun::bessel_j(mu, z) + specfun::bessel_j(1.0 + mu, z));
                const cplx res = dy + I * std::cos(eta) * Y(0.0) - src;
                const double scale = std::max({std::abs(dy), std::abs(src), std::abs(Y(0.0))});
                out.push_back(row(c, {{"z", cplx_json(z)}, {"eta", eta}, {"mu", mu}}, std::abs(res) / scale));
            }
    return out;
}

// ---- kernels -----------------------------------------------------------------

std::vector<CheckResult> kernel_modesum(const Ctx& c) {
    std::vector<CheckResult> out;
    const ProperTime s{cplx(0.4, -0.05)};
    oracle::TruncationSpec t;
    t.m_max = 400;
    t.l_max = 40;
    for (int k = 0; k < 3; ++k)
        for (double eB : {1.0, -1.0})
            for (Extension ext : kExts) {
                const auto cfg = FieldConfiguration::make(eB, 1, 0.3, 1.0);
                const auto rc = reduce(kPairs[k].first, kPairs[k].second, cfg);
                const KernelMatrix f = f_total(s, rc, cfg, ext);
                const auto ms = oracle::mode_sum_kernel(s, rc, cfg, ext, t);
                out.push_back(row(c,
                                  {{"point", k}, {"eB", eB}, {"ext", ext_name(ext)}, {"s", cplx_json(s.s)},
                                   {"m_max", t.m_max}, {"l_max", t.l_max}},
                                  rel(f, ms.value)));
            }
    return out;
}

std::vector<CheckResult> kernel_3d_consistency(const Ctx& c) {
    std::vector<CheckResult> out;
    for (cplx sv : {cplx(0.4, -0.05), cplx(2.2, -0.3)})
        for (Extension ext : kExts) {
            auto c2 = FieldConfiguration::make(-1.0, 0, 0.6, 1.0);
            auto c3 = c2;
            c3.dim = Dimension::D3plus1;
            SpacetimePoint x = kPairs[0].first, xp = kPairs[0].second;
            x.x3 = xp.x3 = 0.0;
            const auto rc = reduce(x, xp, c2);
            const ProperTime s{sv};
            const KernelMatrix f2 = f_total(s, rc, c2, ext);
            const cplx ratio = prefactor_D(s, rc, c3) / prefactor_A(s, rc, c2);
            const KernelMatrix promoted =
                ratio * (f2(0, 0) * gamma_algebra::xi(+1, Dimension::D3plus1) + f2(1, 1) * gamma_algebra::xi(-1, Dimension::D3plus1));
            out.push_back(row(c, {{"s", cplx_json(sv)}, {"ext", ext_name(ext)}}, entrywise(f_total(s, rc, c3, ext), promoted)));
        }
    return out;
}

std::vector<CheckResult> mu_collapse(const Ctx& c) {
    std::vector<CheckResult> out;
    for (int k = 0; k < 5; ++k)
        for (Extension ext : kExts) {
            const auto cfg = FieldConfiguration::make(k % 2 ? -1.0 : 1.0, k < 3 ? 0 : 1, 1e-8, 1.0);
            const auto rc = reduce(kPairs[k].first, kPairs[k].second, cfg);
            const ProperTime s{k < 3 ? cplx(0.4, -0.05) : cplx(1.7, -0.2)};
            out.push_back(row(c, {{"point", k}, {"ext", ext_name(ext)}, {"mu", cfg.mu}, {"s", cplx_json(s.s)}},
                              entrywise(f_total(s, rc, cfg, ext), f_uniform(s, rc, cfg))));
        }
    return out;
}

std::vector<CheckResult> scalar_correspondence(const Ctx& c) {
    std::vector<CheckResult> out;
    const ProperTime s{cplx(0.4, -0.05)};
    for (double eB : {1.0, -1.0}) {
        const auto cfg = FieldConfiguration::make(eB, 0, 0.3, 1.0);
        const auto rc = reduce(kPairs[0].first, kPairs[0].second, cfg);
        for (int l = -10; l <= 10; ++l)
            out.push_back(row(c, {{"l", l}, {"eB", eB}, {"ext", "+pi/2"}},
                              oracle::verify_scalar_correspondence(l, s, rc, cfg, Extension::PlusHalfPi)));
    }
    return out;
}

std::vector<CheckResult> scalar_asymmetry(const Ctx& c) {
    std::vector<CheckResult> out;
    const ProperTime s{cplx(0.4, -0.05)};
    for (double eB : {1.0, -1.0}) {
        const auto cfg = FieldConfiguration::make(eB, 0, 0.3, 1.0);
        const auto rc = reduce(kPairs[0].first, kPairs[0].second, cfg);
        out.push_back(row(c, {{"l", 0}, {"eB", eB}, {"ext", "-pi/2"}},
                          oracle::verify_scalar_correspondence(0, s, rc, cfg, Extension::MinusHalfPi)));
    }
    return out;
}

std::vector<CheckResult> bilinear(const Ctx& c) {
    struct Case {
        int m, l;
        std::optional<double> p3;
        Extension ext;
        double eB;
    };
    const std::array<Case, 10> cases{{{1, 2, {}, Extension::MinusHalfPi, 1.0},
                                      {1, -1, {}, Extension::MinusHalfPi, 1.0},
                                      {2, 0, {}, Extension::MinusHalfPi, 1.0},
                                      {1, 0, {}, Extension::PlusHalfPi, -1.0},
                                      {0, 1, {}, Extension::PlusHalfPi, -1.0},
                                      {3, -2, {}, Extension::PlusHalfPi, 1.0},
                                      {1, 2, 0.4, Extension::MinusHalfPi, 1.0},
                                      {1, 0, -0.7, Extension::PlusHalfPi, 1.0},
                                      {2, -1, 0.3, Extension::MinusHalfPi, -1.0},
                                      {0, 1, 1.1, Extension::PlusHalfPi, -1.0}}};
    std::vector<CheckResult> out;
    for (const Case& k : cases) {
        const auto cfg = FieldConfiguration::make(k.eB, 0, 0.3, 1.0, k.p3 ? Dimension::D3plus1 : Dimension::D2plus1);
        for (Branch b : {Branch::Plus, Branch::Minus}) {
            json p{{"m", k.m}, {"l", k.l}, {"dim", k.p3 ? "3+1" : "2+1"}, {"ext", ext_name(k.ext)}, {"eB", k.eB},
                   {"branch", b == Branch::Plus ? "+" : "-"}};
            if (k.p3) p["p3"] = *k.p3;
            out.push_back(row(c, std::move(p),
                              oracle::verify_bilinear({k.m, k.l, k.p3}, cfg, k.ext, kPairs[0].first, kPairs[0].second, b)));
        }
    }
    return out;
}

// ---- proper-time integrals --------------------------------------------------------

std::vector<CheckResult> contour_independence(const Ctx& c) {
    std::vector<CheckResult> out;
    ContourSpec a, b, line;
    a.theta = 0.3;
    b.theta = 0.5;
    line.kind = ContourKind::ShiftedLine;
    for (const auto& pc : prop_configs()) {
        const auto rc = reduce(kPx, kPxp, pc.cfg);
        for (Side side : {Side::Causal, Side::Anticausal}) {
            auto spinor = [&](const ContourSpec& cs) {
                return side == Side::Causal ? integrate_causal(rc, pc.cfg, pc.ext, cs).value
                                            : integrate_anticausal(rc, pc.cfg, pc.ext, cs).value;
            };
            const KernelMatrix va = spinor(a);
            const char* sn = side == Side::Causal ? "causal" : "anticausal";
            out.push_back(row(c, {{"config", pc.name}, {"side", sn}, {"kernel", "spinor"}, {"contours", "ray0.3/ray0.5"}},
                              rel(spinor(b), va)));
            out.push_back(row(c, {{"config", pc.name}, {"side", sn}, {"kernel", "spinor"}, {"contours", "ray0.3/line"}},
                              rel(spinor(line), va)));
            const cplx sa = integrate_scalar(side, rc, pc.cfg, 2, a).value;
            const cplx sb = integrate_scalar(side, rc, pc.cfg, 2, b).value;
            out.push_back(row(c, {{"config", pc.name}, {"side", sn}, {"kernel", "scalar"}, {"contours", "ray0.3/ray0.5"}},
                              rel(sb, sa)));
        }
    }
    return out;
}

// Conjugation reverses the charge: Delta^cbar(B) = -Delta^c(-B)* at integer flux.
std::vector<CheckResult> anticausal_conjugation(const Ctx& c) {
    std::vector<CheckResult> out;
    const SpacetimePoint x{2.5, 1.1, 0.7, 0.0};
    for (double eB : {1.0, -1.0}) {
        const auto cfg = FieldConfiguration::make(eB, 0, 0.0, 1.0);
        const auto rev = FieldConfiguration::make(-eB, 0, 0.0, 1.0);
        const cplx dcb = integrate_scalar(Side::Anticausal, reduce(x, kPxp, cfg), cfg).value;
        const cplx dc = integrate_scalar(Side::Causal, reduce(x, kPxp, rev), rev).value;
        out.push_back(row(c, {{"eB", eB}, {"mu", 0.0}, {"l0", 0}, {"x", point_json(x)}}, rel(dcb, -std::conj(dc))));
    }
    return out;
}

// Delta^c - Delta^cbar vanishes outside both light cones.
std::vector<CheckResult> spacelike_commutator(const Ctx& c) {
    std::vector<CheckResult> out;
    for (const auto& pc : prop_configs()) {
        const auto rc = reduce(kPx, kPxp, pc.cfg);
        const KernelMatrix a = integrate_causal(rc, pc.cfg, pc.ext).value;
        const KernelMatrix b = integrate_anticausal(rc, pc.cfg, pc.ext).value;
        out.push_back(row(c, {{"config", pc.name}, {"x", point_json(kPx)}, {"x_prime", point_json(kPxp)}}, (a - b).norm() / a.norm()));
    }
    return out;
}

std::vector<CheckResult> propagator_modesum(const Ctx& c) {
    std::vector<CheckResult> out;
    oracle::TruncationSpec t;
    t.m_max = 800;
    t.l_max = 40;
    for (const auto& pc : prop_configs()) {
        for (Side side : {Side::Causal, Side::Anticausal}) {
            auto rc = reduce(kPx, kPxp, pc.cfg);
            rc.dx0 = cplx(1.2, side == Side::Causal ? -0.3 : 0.3);
            const KernelMatrix v = side == Side::Causal ? integrate_causal(rc, pc.cfg, pc.ext).value
                                                        : integrate_anticausal(rc, pc.cfg, pc.ext).value;
            const auto ms = oracle::mode_sum_delta(side, rc, pc.cfg, pc.ext, t);
            out.push_back(row(c,
                              {{"config", pc.name}, {"side", side == Side::Causal ? "causal" : "anticausal"},
                               {"dx0", cplx_json(rc.dx0)}, {"m_max", t.m_max}, {"l_max", t.l_max}},
                              rel(v, ms.value)));
        }
    }
    return out;
}

std::vector<CheckResult> spinor_modesum(const Ctx& c) {
    std::vector<CheckResult> out;
    const SpacetimePoint x{1.2, 1.1, 0.7, 0.0};
    PropagatorOptions o;
    o.damping = 0.5;
    oracle::TruncationSpec t;
    t.m_max = 500;
    t.l_max = 30;
    t.damping = 0.5;
    {
        const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
        const auto S = propagator(PropagatorKind::Causal, x, kPxp, cfg, Extension::MinusHalfPi, o);
        const auto M = oracle::mode_sum_Smp(Branch::Minus, x, kPxp, cfg, Extension::MinusHalfPi, t);
        out.push_back(row(c, {{"propagator", "causal"}, {"eB", 1.0}, {"ext", "-pi/2"}, {"damping", 0.5}}, rel(S.value, M.value)));
    }
    {
        const auto cfg = FieldConfiguration::make(-1.0, 0, 0.3, 1.0);
        const auto S = propagator(PropagatorKind::Anticausal, x, kPxp, cfg, Extension::PlusHalfPi, o);
        const auto M = oracle::mode_sum_Smp(Branch::Plus, x, kPxp, cfg, Extension::PlusHalfPi, t);
        out.push_back(row(c, {{"propagator", "anticausal"}, {"eB", -1.0}, {"ext", "+pi/2"}, {"damping", 0.5}},
                          rel(S.value, M.value)));
        o.spin_down = true;
        const auto D = propagator(PropagatorKind::Causal, x, kPxp, cfg, Extension::PlusHalfPi, o);
        const auto MD = oracle::mode_sum_spin_down(x, kPxp, cfg, Extension::PlusHalfPi, t);
        out.push_back(row(c, {{"propagator", "causal spin-down"}, {"eB", -1.0}, {"ext", "+pi/2"}, {"damping", 0.5}},
                          rel(D.value, MD.value)));
    }
    return out;
}

// (Gamma P - M) applied to S^c = (Gamma P + M) Delta^c with nested stencils on one lattice.
std::vector<CheckResult> dirac_residual(const Ctx& c) {
    const auto pc = prop_configs()[0];
    const auto& cfg = pc.cfg;
    const double h = 0.02;
    const double x1 = kPx.r * std::cos(kPx.phi), x2 = kPx.r * std::sin(kPx.phi);
    std::map<std::array<int, 3>, KernelMatrix> memo;
    auto delta = [&](std::array<int, 3> k) -> const KernelMatrix& {
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        const double y1 = x1 + k[1] * h, y2 = x2 + k[2] * h;
        const SpacetimePoint y{kPx.x0 + k[0] * h, std::hypot(y1, y2), std::atan2(y2, y1), 0.0};
        return memo.emplace(k, integrate_causal(reduce(y, kPxp, cfg), cfg, pc.ext).value).first->second;
    };
    auto stencil_at = [&](std::array<int, 3> k, auto&& field) {
        Stencil st;
        const double y1 = x1 + k[1] * h, y2 = x2 + k[2] * h;
        st.center = SpacetimePoint{kPx.x0 + k[0] * h, std::hypot(y1, y2), std::atan2(y2, y1), 0.0};
        st.h = h;
        st.dim = Dimension::D2plus1;
        st.value = field(k);
        for (int a = 0; a < 3; ++a) {
            std::array<KernelMatrix, 4> o;
            const int steps[4] = {-2, -1, 1, 2};
            for (int j = 0; j < 4; ++j) {
                auto q = k;
                q[a] += steps[j];
                o[j] = field(q);
            }
            st.offsets.push_back(o);
        }
        return st;
    };
    auto Sc = [&](std::array<int, 3> k) {
        return apply_dirac_operator(stencil_at(k, delta), cfg, MassSign::PlusM);
    };
    const KernelMatrix S0 = Sc({0, 0, 0});
    const KernelMatrix R = apply_dirac_operator(stencil_at({0, 0, 0}, Sc), cfg, MassSign::MinusM);
    return {row(c, {{"config", pc.name}, {"x", point_json(kPx)}, {"x_prime", point_json(kPxp)}, {"h", h}},
                R.norm() / S0.norm())};
}

// ---- nonrelativistic ------------------------------------------------------------------

constexpr std::array<NonrelKind, 4> kKinds{{{Species::Particle, Spin::Up},
                                            {Species::Particle, Spin::Down},
                                            {Species::Antiparticle, Spin::Up},
                                            {Species::Antiparticle, Spin::Down}}};

json kind_json(const NonrelKind& k) {
    return std::string(k.species == Species::Particle ? "particle" : "antiparticle") +
           (k.spin == Spin::Up ? "/up" : "/down");
}

std::vector<CheckResult> nonrel_closed_sums(const Ctx& c) {
    std::vector<CheckResult> out;
    for (double eB : {1.0, -1.0})
        for (Extension ext : kExts)
            for (const auto& kind : kKinds) {
                const auto cfg = FieldConfiguration::make(eB, 1, 0.3, 1.0);
                const auto rc = reduce(kPairs[0].first, kPairs[0].second, cfg);
                const double tau = 0.7;
                out.push_back(row(c, {{"kind", kind_json(kind)}, {"eB", eB}, {"ext", ext_name(ext)}, {"tau", tau}, {"l_window", 40}},
                                  rel(nonrel_retarded(kind, rc, cfg, tau, ext),
                                      nonrel_retarded_lsum(kind, rc, cfg, tau, ext, 40))));
            }
    return out;
}

std::vector<CheckResult> nonrel_modesum(const Ctx& c) {
    std::vector<CheckResult> out;
    const cplx tau(0.5, -0.08);
    for (Extension ext : kExts)
        for (const auto& kind : kKinds)
            for (int l : {2, 0, -1}) {
                const auto cfg = FieldConfiguration::make(1.0, 1, 0.3, 1.0);
                const auto rc = reduce(kPairs[0].first, kPairs[0].second, cfg);
                out.push_back(row(c, {{"kind", kind_json(kind)}, {"l", l}, {"ext", ext_name(ext)}, {"tau", cplx_json(tau)}, {"m_max", 200}},
                                  rel(nonrel_Sl(l, kind, rc, cfg, tau, ext),
                                      oracle::nonrel_mode_sum(l, kind, rc, cfg, ext, tau, 200))));
            }
    return out;
}

std::vector<CheckResult> nonrel_schroedinger(const Ctx& c) {
    std::vector<CheckResult> out;
    const SpacetimePoint xp{0.0, 0.8, -0.4, 0.0};
    const double x1 = 1.1 * std::cos(0.7), x2 = 1.1 * std::sin(0.7);
    for (double eB : {1.0, -1.0})
        for (Extension ext : kExts)
            for (const auto& kind : kKinds) {
                const auto cfg = FieldConfiguration::make(eB, 1, 0.3, 1.0);
                auto K = [&](double y1, double y2, double tau) {
                    const SpacetimePoint y{0.0, std::hypot(y1, y2), std::atan2(y2, y1), 0.0};
                    return nonrel_kernel(kind, reduce(y, xp, cfg), cfg, tau, ext);
                };
                const double tau = 0.6, h = 2e-3;
                const cplx dt = (8.0 * (K(x1, x2, tau + h) - K(x1, x2, tau - h)) - (K(x1, x2, tau + 2 * h) - K(x1, x2, tau - 2 * h))) /
                                (12.0 * h);
                const cplx Hk = apply_nonrel_hamiltonian([&](double y1, double y2) { return K(y1, y2, tau); }, kind, cfg, x1, x2, h);
                const cplx lhs = I * dt;
                out.push_back(row(c, {{"kind", kind_json(kind)}, {"eB", eB}, {"ext", ext_name(ext)}, {"tau", tau}, {"h", h}},
                                  std::abs(lhs - Hk) / std::max(std::abs(lhs), std::abs(Hk))));
            }
    return out;
}

// Euclidean time tau = -i t: int S(x, x') g(x') d^2x' -> i g(x), extrapolated over t.
std::vector<CheckResult> nonrel_initial(const Ctx& c) {
    std::vector<CheckResult> out;
    const double xr = 1.5, xphi = 0.3, width = 0.3;
    const double cx = xr * std::cos(xphi), cy = xr * std::sin(xphi);
    const quad::GaussLegendre gl(32);
    constexpr int n_angle = 32;
    for (Extension ext : kExts) {
        const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
        const NonrelKind kind{Species::Particle, Spin::Up};
        const SpacetimePoint x{0.0, xr, xphi, 0.0};
        std::array<cplx, 3> vals;
        const std::array<double, 3> ts{0.004, 0.002, 0.001};
        for (int k = 0; k < 3; ++k) {
            const double t = ts[k];
            const double dmax = 12.0 * std::sqrt(t);
            cplx sum(0.0, 0.0);
            for (size_t i = 0; i < gl.x.size(); ++i) {
                const double d = 0.5 * dmax * (gl.x[i] + 1.0);
                const double wd = 0.5 * dmax * gl.w[i];
                for (int j = 0; j < n_angle; ++j) {
                    const double b = 2.0 * kPi * j / n_angle;
                    const double y1 = cx + d * std::cos(b), y2 = cy + d * std::sin(b);
                    const SpacetimePoint yp{0.0, std::hypot(y1, y2), std::atan2(y2, y1), 0.0};
                    const double g = std::exp(-0.5 * d * d / (width * width));
                    sum += nonrel_kernel(kind, reduce(x, yp, cfg), cfg, cplx(0.0, -t), ext) * g * d * wd * (2.0 * kPi / n_angle);
                }
            }
            vals[k] = sum;
        }
        // Quadratic Richardson extrapolation on t, t/2, t/4.
        const cplx r1 = 2.0 * vals[1] - vals[0], r2 = 2.0 * vals[2] - vals[1];
        const cplx limit = (4.0 * r2 - r1) / 3.0;
        out.push_back(row(c, {{"ext", ext_name(ext)}, {"kind", kind_json(kind)}, {"t", json::array({ts[0], ts[1], ts[2]})},
                              {"gaussian_width", width}},
                          std::abs(limit - I)));
    }
    return out;
}

// Log-slope of |S_0| as r -> 0 against the radial order of the l = 0 wave.
std::vector<CheckResult> nonrel_small_r(const Ctx& c) {
    std::vector<CheckResult> out;
    for (Extension ext : kExts)
        for (Species sp : {Species::Antiparticle, Species::Particle}) {
            const auto cfg = FieldConfiguration::make(1.0, 0, 0.3, 1.0);
            const NonrelKind kind{sp, Spin::Up};
            const SpacetimePoint xp{0.0, 1.0, 0.0, 0.0};
            auto S0 = [&](double r) {
                return std::abs(nonrel_Sl(0, kind, reduce({0.0, r, 0.4, 0.0}, xp, cfg), cfg, 0.7, ext));
            };
            const double slope = std::log(S0(2e-3) / S0(1e-3)) / std::log(2.0);
            const double expected = radial_order(0, sp == Species::Particle ? +1 : -1, cfg, ext);
            out.push_back(row(c, {{"kind", kind_json(kind)}, {"ext", ext_name(ext)}, {"slope", slope}, {"expected", expected},
                                  {"irregular", expected < 0.0}},
                              std::fabs(slope - expected)));
        }
    return out;
}

std::vector<CheckResult> nonrel_b_limit(const Ctx& c) {
    std::vector<CheckResult> out;
    for (Extension ext : kExts) {
        const NonrelKind kind{Species::Particle, Spin::Up};
        auto K = [&](double eB) {
            const auto cfg = FieldConfiguration::make(eB, 0, 0.3, 1.0);
            return nonrel_retarded(kind, reduce(kPairs[0].first, kPairs[0].second, cfg), cfg, 0.7, ext);
        };
        out.push_back(row(c, {{"ext", ext_name(ext)}, {"eB", json::array({1e-3, 5e-4})}, {"tau", 0.7}}, rel(K(1e-3), K(5e-4))));
    }
    return out;
}

using CheckFn = std::function<std::vector<CheckResult>(const Ctx&)>;

struct Entry {
    CheckInfo info;
    CheckFn fn;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e{
        {{"sum-identity", "Laguerre-Bessel summation over m", 1, 1e-8}, sum_identity},
        {{"y-equivalence", "Y series against its integral form", 2, 1e-10}, y_equivalence},
        {{"y-ode", "Y satisfies its first-order equation", 2, 1e-8}, y_ode},
        {{"kernel-modesum", "closed-form kernel against the double mode sum", 3, 1e-6}, kernel_modesum},
        {{"mu-collapse", "integer flux reduces to the uniform-field kernel", 4, 1e-6}, mu_collapse},
        {{"scalar-correspondence", "spin-down spinor waves reproduce the scalar waves", 5, 1e-10}, scalar_correspondence},
        {{"scalar-asymmetry", "attractive extension breaks the scalar correspondence", 5, 0.1, true}, scalar_asymmetry},
        {{"bilinear", "spinor outer products against (Gamma P + M) of transverse bilinears", 6, 1e-4}, bilinear},
        {{"contour-independence", "proper-time integrals agree on different contours", 7, 1e-6}, contour_independence},
        {{"dirac-residual", "(Gamma P - M) S^c vanishes off coincidence", 7, 1e-3}, dirac_residual},
        {{"propagator-modesum", "Delta^c and Delta^cbar against damped mode sums", 7, 1e-4}, propagator_modesum},
        {{"spinor-modesum", "S^c, S^cbar and the spin-down S^c against spinor mode sums", 7, 1e-4}, spinor_modesum},
        {{"nonrel-closed-sums", "closed nonrelativistic sums against l-sums", 8, 1e-8}, nonrel_closed_sums},
        {{"nonrel-modesum", "nonrelativistic partial waves against mode sums", 8, 1e-7}, nonrel_modesum},
        {{"nonrel-schroedinger", "Schroedinger residual of the retarded kernel", 8, 1e-5}, nonrel_schroedinger},
        {{"nonrel-initial", "delta initial condition against a Gaussian", 8, 1e-3}, nonrel_initial},
        {{"nonrel-small-r", "small-r power of the l = 0 wave follows the extension", 8, 1e-2}, nonrel_small_r},
        {{"nonrel-b-limit", "weak-field continuity of the kernel", 8, 1e-3}, nonrel_b_limit},
        {{"laguerre-orthonormality", "Laguerre functions are orthonormal", 9, 1e-8}, laguerre_orthonormality},
        {{"bessel-derivative", "Bessel derivative against differences", 9, 1e-9}, bessel_derivative},
        {{"gamma-values", "gamma function at pinned arguments", 9, 1e-13}, gamma_values},
        {{"kernel-3d-consistency", "3+1 kernel at dx3 = 0 against the promoted 2+1 kernel", 0, 1e-12}, kernel_3d_consistency},
        {{"anticausal-conjugation", "scalar Delta^cbar = -(Delta^c)* at integer flux", 0, 1e-8}, anticausal_conjugation},
        {{"spacelike-commutator", "Delta^c = Delta^cbar outside the light cones", 0, 1e-8}, spacelike_commutator},
        {{"truncation-monotone", "oracle residuals do not grow with truncation", 0, 1.0}, truncation_monotone},
    };
    return e;
}

}  // namespace

void validate(const VerifyOptions& opt) {
    for (const auto& [id, tol] : opt.tolerances) {
        find(id);
        if (!std::isfinite(tol) || !(tol > 0.0))
            fail(ErrorKind::Validation, "tolerance for '" + id + "' must be a positive finite number");
    }
    if (opt.threads < 1) fail(ErrorKind::Validation, "threads must be at least 1");
}

const std::vector<CheckInfo>& catalog() {
    static const std::vector<CheckInfo> c = [] {
        std::vector<CheckInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return c;
}

const CheckInfo& find(const std::string& id) {
    for (const auto& c : catalog())
        if (c.id == id) return c;
    fail(ErrorKind::Validation, "unknown check '" + id + "'");
}

std::vector<CheckResult> run(const std::string& id, const VerifyOptions& opt) {
    validate(opt);
    const Entry* entry = nullptr;
    for (const auto& e : entries())
        if (e.info.id == id) entry = &e;
    if (!entry) fail(ErrorKind::Validation, "unknown check '" + id + "'");
    const auto it = opt.tolerances.find(id);
    const Ctx ctx{id, it != opt.tolerances.end() ? it->second : entry->info.tolerance, entry->info.lower_bound};
    try {
        return entry->fn(ctx);
    } catch (const Error& e) {
        CheckResult r = row(ctx, {{"error", e.what()}}, std::numeric_limits<double>::infinity());
        r.pass = false;
        return {r};
    }
}

std::vector<CheckResult> run_suite(const std::vector<std::string>& ids, const VerifyOptions& opt) {
    validate(opt);
    std::vector<std::string> todo;
    if (ids.empty()) {
        for (const auto& c : catalog()) todo.push_back(c.id);
    } else {
        for (const auto& id : ids) find(id);
        for (const auto& c : catalog())
            if (std::find(ids.begin(), ids.end(), c.id) != ids.end()) todo.push_back(c.id);
    }
    std::vector<std::vector<CheckResult>> parts(todo.size());
    if (opt.threads <= 1) {
        for (size_t k = 0; k < todo.size(); ++k) parts[k] = run(todo[k], opt);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::future<void>> workers;
        for (int t = 0; t < opt.threads; ++t)
            workers.push_back(std::async(std::launch::async, [&] {
                for (size_t k = next++; k < todo.size(); k = next++) parts[k] = run(todo[k], opt);
            }));
        for (auto& w : workers) w.get();
    }
    std::vector<CheckResult> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

json to_json(const CheckResult& r) {
    json j;
    j["check"] = r.check;
    j["parameters"] = r.parameters;
    if (std::isfinite(r.residual))
        j["residual"] = r.residual;
    else
        j["residual"] = nullptr;
    j["tolerance"] = r.tolerance;
    j["bound"] = r.lower_bound ? "min" : "max";
    j["pass"] = r.pass;
    return j;
}

}  // namespace msgf::checks
