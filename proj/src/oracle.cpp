#include "msgf/oracle.hpp"

#include <cmath>
#include <string>

#include "msgf/specfun.hpp"

namespace msgf::oracle {

namespace {

const cplx I(0.0, 1.0);

double frob(const KernelMatrix& m) { return m.norm(); }

// Applies a damped evaluation at eta (and eta/2 when extrapolating).
template <class F>
SumResult with_damping(const TruncationSpec& t, const F& eval) {
    if (t.extrapolation == Extrapolation::None || t.damping == 0.0) return eval(t.damping);
    const SumResult a = eval(t.damping);
    const SumResult b = eval(0.5 * t.damping);
    return {2.0 * b.value - a.value, 2.0 * b.tail + a.tail};
}

// Shifts dx0 into the half plane where the branch factor decays.
cplx damp(cplx dx0, double eta, double direction) { return dx0 - I * (direction * eta); }

}  // namespace

void validate(const TruncationSpec& t) {
    if (t.m_max < 0 || t.l_max < 0) fail(ErrorKind::Validation, "truncation limits must be nonnegative");
    if (!(t.damping >= 0.0)) fail(ErrorKind::Validation, "damping must be nonnegative");
}

std::vector<cplx> transverse_bilinears(int m_max, int l, int sigma, const ReducedCoordinates& rc,
                                       const FieldConfiguration& cfg, Extension ext) {
    const double alpha = radial_order(l, sigma, cfg, ext);
    const auto a = specfun::laguerre_fn_sequence(m_max, alpha, rc.rho);
    const auto b = specfun::laguerre_fn_sequence(m_max, alpha, rc.rho_prime);
    const cplx ph = cfg.gamma() / (2.0 * kPi) * std::exp(I * double(spin_shifted_l(l, sigma) - cfg.l0) * rc.dphi);
    std::vector<cplx> out(m_max + 1);
    for (int m = 0; m <= m_max; ++m) out[m] = ph * a[m] * b[m];
    return out;
}

SumResult mode_sum_kernel(const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                          Extension ext, const TruncationSpec& trunc) {
    validate(trunc);
    const int n = cfg.spinor_size();
    SumResult out{KernelMatrix::Zero(n, n), 0.0};
    const cplx sq = sqrt_s(s);
    cplx pref = I * std::exp(I * (0.25 * kPi)) / (2.0 * std::sqrt(kPi) * sq) *
                std::exp(-I * cfg.M * cfg.M * s.s - I * rc.dx0 * rc.dx0 / (4.0 * s.s));
    if (cfg.dim == Dimension::D3plus1)
        pref *= std::exp(-I * (0.25 * kPi) + I * rc.dx3 * rc.dx3 / (4.0 * s.s)) / (2.0 * std::sqrt(kPi) * sq);
    for (int sigma : {+1, -1}) {
        cplx acc(0.0, 0.0);
        for (int l = -trunc.l_max; l <= trunc.l_max; ++l) {
            const auto phi = transverse_bilinears(trunc.m_max, l, sigma, rc, cfg, ext);
            const double w0 = omega_spectrum(ModeIndex{0, l, sigma, std::nullopt}, cfg, ext);
            const cplx step = std::exp(-2.0 * I * cfg.gamma() * s.s);
            cplx e = std::exp(-I * w0 * s.s);
            for (int m = 0; m <= trunc.m_max; ++m, e *= step) acc += e * phi[m];
            out.tail += std::abs(pref * phi[trunc.m_max] * (e / step));
        }
        out.value += pref * acc * gamma_algebra::xi(sigma, cfg.dim);
    }
    return out;
}

SumResult mode_sum_delta(Side side, const ReducedCoordinates& rc, const FieldConfiguration& cfg, Extension ext,
                         const TruncationSpec& trunc) {
    validate(trunc);
    if (cfg.dim == Dimension::D3plus1)
        fail(ErrorKind::Domain, "mode_sum_delta: the p3 integral is not summed; use the 2+1 reduction");
    // i sum e^{-i|eps| dx0}/(2|eps|) (causal, Re dx0 > 0) or e^{+i|eps| dx0} (anticausal); dx0 -> -dx0 otherwise.
    const double fwd = rc.dx0.real() >= 0.0 ? 1.0 : -1.0;
    const double sgn = side == Side::Causal ? fwd : -fwd;
    auto eval = [&](double eta) {
        const cplx dx0 = damp(rc.dx0, eta, sgn);
        const int n = cfg.spinor_size();
        SumResult out{KernelMatrix::Zero(n, n), 0.0};
        for (int sigma : {+1, -1}) {
            cplx acc(0.0, 0.0);
            for (int l = -trunc.l_max; l <= trunc.l_max; ++l) {
                const auto phi = transverse_bilinears(trunc.m_max, l, sigma, rc, cfg, ext);
                cplx last(0.0, 0.0);
                for (int m = 0; m <= trunc.m_max; ++m) {
                    const double w = omega_spectrum(ModeIndex{m, l, sigma, std::nullopt}, cfg, ext);
                    const double e = std::sqrt(cfg.M * cfg.M + w);
                    last = std::exp(-I * sgn * e * dx0) / (2.0 * e) * phi[m];
                    acc += last;
                }
                out.tail += std::abs(last);
            }
            out.value += I * acc * gamma_algebra::xi(sigma, cfg.dim);
        }
        return out;
    };
    if (std::abs(damp(rc.dx0, trunc.damping, sgn).imag()) == 0.0)
        fail(ErrorKind::Domain, "mode_sum_delta: the sum needs complex time (damping or complex dx0)");
    return with_damping(trunc, eval);
}

namespace {

// sum +-i psi(x) psibar(x') over 2+1 spinors N m (Gamma P + s M) u; `flip` applies sigma1 on both sides.
SumResult spinor_sum(Branch which, double mass_sign, bool flip, const SpacetimePoint& p, const SpacetimePoint& pp,
                     const FieldConfiguration& cfg, Extension ext, const TruncationSpec& trunc) {
    validate(trunc);
    if (cfg.dim != Dimension::D2plus1) fail(ErrorKind::Domain, "spinor mode sums are implemented in 2+1");
    // S^-: positive energies, dx0 -> dx0 - i eta; S^+: negative energies, dx0 + i eta.
    const Branch branch = which == Branch::Minus ? Branch::Plus : Branch::Minus;
    const cplx lead = which == Branch::Minus ? I : -I;
    const double h = std::min(fd_step(cfg, p.r, {}), fd_step(cfg, pp.r, {}));
    const KernelMatrix s1 = gamma_algebra::pauli(1);
    const KernelMatrix g0 = gamma_algebra::gamma(0, cfg.dim);
    auto spinor = [&](int m, int l, int sigma, double eps, const SpacetimePoint& q) {
        auto field = [&](double x1, double x2) {
            return transverse_solution(m, l, sigma, cfg, ext, std::hypot(x1, x2), std::atan2(x2, x1));
        };
        const double x1 = q.r * std::cos(q.phi), x2 = q.r * std::sin(q.phi);
        SpinorValue v = apply_transverse(field, cfg, x1, x2, h);
        v += (eps * g0 + mass_sign * cfg.M * gamma_algebra::identity(cfg.dim)) * field(x1, x2);
        return SpinorValue(flip ? SpinorValue(s1 * v) : v);
    };
    auto eval = [&](double eta) {
        const cplx dx0 = cplx(p.x0 - pp.x0) - I * (which == Branch::Minus ? eta : -eta);
        SumResult out{KernelMatrix::Zero(2, 2), 0.0};
        for (int l = -trunc.l_max; l <= trunc.l_max; ++l) {
            double shell = 0.0;
            for (int sigma : {-1, +1}) {
                for (int m = 0; m <= trunc.m_max; ++m) {
                    const double w = omega_spectrum(ModeIndex{m, l, sigma, std::nullopt}, cfg, ext);
                    // sigma = +1 enters only through its zero modes; the rest duplicate sigma = -1.
                    if (sigma > 0 && w != 0.0) continue;
                    const double eps = energy(w, std::nullopt, cfg.M, branch);
                    const double n2 = 2.0 * eps * (eps + sigma * mass_sign * cfg.M);
                    if (n2 == 0.0) continue;
                    const SpinorValue a = spinor(m, l, sigma, eps, p);
                    const SpinorValue b = spinor(m, l, sigma, eps, pp);
                    const KernelMatrix term = std::exp(-I * eps * dx0) / n2 * (a * (b.adjoint() * g0));
                    out.value += term;
                    if (m == trunc.m_max) shell += frob(term);
                }
            }
            out.tail += shell;
        }
        out.value *= lead;
        return out;
    };
    return with_damping(trunc, eval);
}

}  // namespace

SumResult mode_sum_Smp(Branch which, const SpacetimePoint& p, const SpacetimePoint& pp, const FieldConfiguration& cfg,
                       Extension ext, const TruncationSpec& trunc) {
    return spinor_sum(which, 1.0, false, p, pp, cfg, ext, trunc);
}

SumResult mode_sum_spin_down(const SpacetimePoint& p, const SpacetimePoint& pp, const FieldConfiguration& cfg,
                             Extension ext, const TruncationSpec& trunc) {
    return spinor_sum(Branch::Minus, -1.0, true, p, pp, cfg, ext, trunc);
}

IdentityResult verify_sum_identity(double alpha, double rho, double rhop, cplx gamma_s, int m_max) {
    if (!(gamma_s.imag() < 0.0)) fail(ErrorKind::Domain, "sum identity needs Im(gamma s) < 0");
    if (m_max < 0) fail(ErrorKind::Validation, "m_max must be nonnegative");
    const auto a = specfun::laguerre_fn_sequence(m_max, alpha, rho);
    const auto b = specfun::laguerre_fn_sequence(m_max, alpha, rhop);
    IdentityResult out;
    const cplx step = std::exp(-2.0 * I * gamma_s);
    cplx e(1.0, 0.0), term;
    for (int m = 0; m <= m_max; ++m, e *= step) {
        term = e * a[m] * b[m];
        out.lhs += term;
    }
    out.tail = std::abs(term);
    const BesselArgument arg = bessel_argument(1.0, ProperTime{gamma_s, Side::Causal}, rho, rhop);
    const cplx log_r = 0.5 * I * (rho + rhop) * arg.cot + I * (alpha + 1.0) * gamma_s - arg.log_sin -
                       I * (0.5 * kPi * alpha) + std::fabs(arg.z.imag());
    cplx j;
    if (rho * rhop == 0.0)
        j = alpha == 0.0 ? cplx(1.0) : cplx(0.0);
    else
        j = bessel_jc_scaled(alpha, arg);
    out.rhs = std::exp(log_r) * j / (2.0 * I);
    const double scale = std::abs(out.rhs);
    out.residual = std::abs(out.lhs - out.rhs) / (scale > 0.0 ? scale : 1.0);
    return out;
}

double verify_bilinear(const ModeClass& mc, const FieldConfiguration& cfg, Extension ext, const SpacetimePoint& p,
                       const SpacetimePoint& pp, Branch branch) {
    const ModeIndex lower{mc.m, mc.l, -1, mc.p3};
    const double w = omega_spectrum(lower, cfg, ext);
    if (w == 0.0) fail(ErrorKind::Domain, "bilinear relation needs omega != 0");
    const int partner = ladder_partner_m(lower, cfg, ext);
    if (partner < 0) fail(ErrorKind::Domain, "mode class has no opposite-spin partner");
    const ModeIndex upper{partner, mc.l, +1, mc.p3};
    const Dimension dim = cfg.dim;
    const double eps = energy(w, mc.p3, cfg.M, branch);
    const double p3 = mc.p3.value_or(0.0);
    const int n = cfg.spinor_size();

    KernelMatrix lhs = KernelMatrix::Zero(n, n);
    auto add_pair = [&](const ModeIndex& mi) {
        const SpinorValue a = dirac_spinor(mi, cfg, ext, p, branch);
        const SpinorValue b = dirac_spinor(mi, cfg, ext, pp, branch);
        lhs += a * dirac_bar(b, dim);
    };
    add_pair(lower);
    if (dim == Dimension::D3plus1) add_pair(upper);

    // RHS: (gamma P + M) acting on x of (1/2 eps) e^{-i eps dx0} sum_sigma phi_sigma Xi_sigma.
    const cplx time = std::exp(-I * eps * (p.x0 - pp.x0)) *
                      (dim == Dimension::D3plus1 ? std::exp(-I * p3 * (p.x3 - pp.x3)) / (2.0 * kPi) : cplx(1.0));
    auto G = [&](double x1, double x2) {
        const SpacetimePoint q{p.x0, std::hypot(x1, x2), std::atan2(x2, x1), p.x3};
        KernelMatrix g = KernelMatrix::Zero(n, n);
        for (const ModeIndex& mi : {lower, upper}) {
            const SpinorValue u = transverse_solution(mi.m, mi.l, mi.sigma, cfg, ext, q.r, q.phi);
            const SpinorValue v = transverse_solution(mi.m, mi.l, mi.sigma, cfg, ext, pp.r, pp.phi);
            const int k = mi.sigma > 0 ? 0 : 1;
            g += u(k) * std::conj(v(k)) * gamma_algebra::xi(mi.sigma, dim);
        }
        return KernelMatrix(time / (2.0 * eps) * g);
    };
    const double h = fd_step(cfg, p.r, {});
    const double x1 = p.r * std::cos(p.phi), x2 = p.r * std::sin(p.phi);
    const auto a = potentials_cartesian(cfg, x1, x2);
    auto d = [&](double dx, double dy) { return G(x1 + dx, x2 + dy); };
    const KernelMatrix d1 = (8.0 * (d(h, 0) - d(-h, 0)) - (d(2 * h, 0) - d(-2 * h, 0))) / (12.0 * h);
    const KernelMatrix d2 = (8.0 * (d(0, h) - d(0, -h)) - (d(0, 2 * h) - d(0, -2 * h))) / (12.0 * h);
    const KernelMatrix g0 = G(x1, x2);
    KernelMatrix rhs = gamma_algebra::gamma(1, dim) * (I * d1 + a.eA[1] * g0) +
                       gamma_algebra::gamma(2, dim) * (I * d2 + a.eA[2] * g0) +
                       (eps * gamma_algebra::gamma(0, dim) + cfg.M * gamma_algebra::identity(dim)) * g0;
    if (dim == Dimension::D3plus1) rhs += p3 * (gamma_algebra::gamma(3, dim) * g0);
    return frob(lhs - rhs) / std::max(frob(rhs), 1e-300);
}

double verify_scalar_correspondence(int l, const ProperTime& s, const ReducedCoordinates& rc,
                                    const FieldConfiguration& cfg, Extension ext) {
    FieldConfiguration c2 = cfg;
    c2.dim = Dimension::D2plus1;
    const KernelMatrix f = f_partial(l, s, rc, c2, ext);
    const cplx spinor = f(1, 1) * std::exp(-I * cfg.eB * s.s);
    const cplx scalar = f_scalar_partial(l, s, rc, c2);
    const double scale = std::abs(scalar);
    return std::abs(spinor - scalar) / (scale > 0.0 ? scale : 1.0);
}

cplx nonrel_mode_sum(int l, const NonrelKind& kind, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                     Extension ext, cplx tau, int m_max) {
    if (!(tau.imag() < 0.0)) fail(ErrorKind::Domain, "nonrel mode sum needs Im tau < 0");
    const SpacetimePoint x{0.0, std::sqrt(2.0 * rc.rho / cfg.gamma()), rc.dphi, 0.0};
    const SpacetimePoint xp{0.0, std::sqrt(2.0 * rc.rho_prime / cfg.gamma()), 0.0, 0.0};
    cplx sum(0.0, 0.0);
    for (int m = 0; m <= m_max; ++m) {
        const ModeIndex mi{m, l, -1, std::nullopt};
        const double E = nonrel_energy(m, l, cfg, ext, kind);
        sum += nonrel_mode(mi, cfg, ext, kind, x) * std::conj(nonrel_mode(mi, cfg, ext, kind, xp)) *
               std::exp(-I * E * (2.0 * cfg.M) * tau);
    }
    return I * sum;
}

}  // namespace msgf::oracle
