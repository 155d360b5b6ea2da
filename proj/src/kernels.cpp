#include "msgf/kernels.hpp"

#include <cmath>
#include <string>

#include "msgf/quadrature.hpp"
#include "msgf/specfun.hpp"

namespace msgf {

namespace {

const cplx I(0.0, 1.0);
const double kLn2 = std::log(2.0);

// Below this exponent the whole kernel underflows; Bessel factors are skipped.
constexpr double kUnderflowExponent = -700.0;

cplx minus_i_pow(double nu) { return std::polar(1.0, -0.5 * kPi * nu); }

// Everything needed to evaluate the kernels at one proper time.
struct Context {
    double gamma = 0.0;
    ProperTime s;
    BesselArgument arg;
    cplx log_pref;      // log of A(s) (2+1) or D(s) (3+1)
    double scale = 0.0; // |Im z|: Bessel factors are carried scaled by e^{-scale}
    bool underflow = false;
};

Context make_context(const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                     Dimension dim) {
    Context c;
    c.gamma = cfg.gamma();
    c.s = s;
    c.arg = bessel_argument(c.gamma, s, rc.rho, rc.rho_prime);
    const cplx sq = sqrt_s(s);
    const cplx common = -I * cfg.M * cfg.M * s.s - I * double(cfg.l0) * rc.dphi +
                        0.5 * I * (rc.rho + rc.rho_prime) * c.arg.cot - c.arg.log_sin;
    if (dim == Dimension::D2plus1) {
        c.log_pref = std::log(c.gamma / (8.0 * std::pow(kPi, 1.5))) - std::log(sq) + I * (0.25 * kPi) -
                     I * rc.dx0 * rc.dx0 / (4.0 * s.s) + common;
    } else {
        c.log_pref = std::log(c.gamma / (16.0 * kPi * kPi)) - 2.0 * std::log(sq) +
                     (I / (4.0 * s.s)) * (rc.dx3 * rc.dx3 - rc.dx0 * rc.dx0) + common;
    }
    c.scale = std::fabs(c.arg.z.imag());
    c.underflow = (c.log_pref + c.scale).real() < kUnderflowExponent;
    return c;
}

cplx jc_scaled(double nu, const Context& c) { return bessel_jc_scaled(nu, c.arg); }

cplx yc_scaled(cplx eta, double mu, const Context& c) { return y_sheet_scaled(c.arg, eta, mu); }

// Phi_{l,sigma} e^{-i sigma eB s}, Bessel factor scaled.
cplx partial_scaled(int l, int sigma, const Context& c, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                    Extension ext) {
    const int ls = spin_shifted_l(l, sigma);
    const double alpha = radial_order(l, sigma, cfg, ext);
    const double nu = ls + cfg.mu;
    const cplx ph = std::exp(I * double(ls) * rc.dphi - I * (nu + sigma) * cfg.eB * c.s.s);
    return ph * minus_i_pow(alpha) * jc_scaled(alpha, c);
}

KernelMatrix assemble_spin(cplx plus, cplx minus, Dimension dim) {
    return plus * gamma_algebra::xi(+1, dim) + minus * gamma_algebra::xi(-1, dim);
}

// Xi_{+1}, Xi_{-1} coefficients of f_nc divided by the scaled prefactor.
std::pair<cplx, cplx> noncritical_scaled(const Context& c, const ReducedCoordinates& rc,
                                         const FieldConfiguration& cfg) {
    const double mu = cfg.mu;
    const cplx eta = rc.dphi - cfg.eB * c.s.s;
    const cplx ys = yc_scaled(eta, mu, c) + yc_scaled(-eta, -mu, c);
    const cplx extra = minus_i_pow(mu) * jc_scaled(mu, c) - std::exp(-I * eta) * minus_i_pow(1.0 - mu) * jc_scaled(1.0 - mu, c);
    const cplx base = std::exp(-I * mu * cfg.eB * c.s.s);
    const cplx zee = std::exp(-I * cfg.eB * c.s.s);
    return {base * zee * (ys + extra), base / zee * ys};
}

std::pair<cplx, cplx> critical_scaled(const Context& c, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                                      Extension ext) {
    return {partial_scaled(0, +1, c, rc, cfg, ext), partial_scaled(0, -1, c, rc, cfg, ext)};
}

cplx pref_scaled(const Context& c) { return std::exp(c.log_pref + c.scale); }

cplx y_scaled_series(cplx z, cplx eta, double mu, int l_max, bool adaptive, double* tail, int* terms) {
    cplx sum(0.0, 0.0);
    double last = 0.0;
    int l = 1;
    const double az = std::abs(z);
    if (az == 0.0) {
        if (tail) *tail = 0.0;
        if (terms) *terms = adaptive ? 1 : l_max;
        return sum;
    }
    int cap = adaptive ? 500 : l_max;
    int small_run = 0;
    for (; l <= cap; ++l) {
        const cplx term = std::exp(I * eta * double(l)) * minus_i_pow(l + mu) * specfun::bessel_j_scaled(l + mu, z);
        sum += term;
        last = std::abs(term);
        if (adaptive && l > az + 2.0) {
            small_run = last < 1e-14 * std::abs(sum) ? small_run + 1 : 0;
            if (small_run >= 2) break;
        }
    }
    if (l > cap) l = cap;
    if (tail) *tail = last;
    if (terms) *terms = l;
    return sum;
}

cplx y_integral_scaled(cplx z, cplx eta, double mu, double abs_tol, double rel_tol) {
    if (std::abs(z) == 0.0) return {0.0, 0.0};
    const double p = 1.0 / (1.0 + std::min(mu, 0.0));
    const cplx ce = std::cos(eta);
    const cplx ie = -I * std::exp(I * eta);
    const double sz = std::fabs(z.imag());
    auto f = [&](double t) -> cplx {
        const double tp = std::pow(t, p);
        const cplx y = z * tp;
        const cplx dy = z * (p * tp / t);
        const cplx w = std::exp(I * (y - z) * ce - sz + std::fabs(y.imag()));
        return w * (ie * specfun::bessel_j_scaled(mu, y) + specfun::bessel_j_scaled(1.0 + mu, y)) * dy;
    };
    // Seed one panel per oscillation pair of the integrand.
    const double cycles = std::abs(z) * (1.0 + std::abs(ce)) / (2.0 * kPi);
    const int n0 = std::clamp(static_cast<int>(std::ceil(cycles / 2.0)), 1, 4000);
    auto res = quad::integrate(f, 0.0, 1.0, abs_tol, rel_tol, 4000 + 4 * n0, n0);
    if (!res.converged)
        fail(ErrorKind::Convergence, "y_integral: quadrature stopped at error " + std::to_string(res.error));
    return 0.5 * minus_i_pow(mu) * res.value;
}

}  // namespace

ReducedCoordinates reduce(const SpacetimePoint& p, const SpacetimePoint& pp, const FieldConfiguration& cfg,
                          double damping) {
    const double g = cfg.gamma();
    ReducedCoordinates rc;
    rc.r = p.r;
    rc.r_prime = pp.r;
    rc.rho = 0.5 * g * p.r * p.r;
    rc.rho_prime = 0.5 * g * pp.r * pp.r;
    rc.dphi = p.phi - pp.phi;
    rc.dx0 = cplx(p.x0 - pp.x0, -damping);
    rc.dx3 = p.x3 - pp.x3;
    return rc;
}

cplx sqrt_s(const ProperTime& s) {
    if (s.s == 0.0) fail(ErrorKind::Domain, "proper time must be nonzero");
    if (s.side == Side::Causal) return std::sqrt(s.s);
    return -I * std::sqrt(-s.s);
}

BesselArgument bessel_argument(double gamma, const ProperTime& s, double rho, double rho_prime) {
    if (s.s == 0.0) fail(ErrorKind::Domain, "proper time must be nonzero");
    const cplx x = gamma * s.s;
    BesselArgument out;
    if (x.imag() <= 0.0) {
        const cplx q = std::exp(-2.0 * I * x);
        out.log_sin = I * x + std::log(1.0 - q) - I * (0.5 * kPi) - kLn2;
        out.cot = I * (1.0 + q) / (1.0 - q);
    } else {
        const cplx q = std::exp(2.0 * I * x);
        out.log_sin = -I * x + std::log(1.0 - q) + I * (0.5 * kPi) - kLn2;
        if (s.side == Side::Anticausal) out.log_sin -= 2.0 * kPi * I;
        out.cot = -I * (1.0 + q) / (1.0 - q);
    }
    if (std::abs(x) > 1.0 && std::exp(out.log_sin.real()) < kPoleGuard)
        fail(ErrorKind::Pole, "proper time within the pole guard of sin(eB s)");
    if (rho * rho_prime == 0.0) {
        out.z = 0.0;
        out.sheet = 0;
        return out;
    }
    const cplx logz = 0.5 * std::log(rho * rho_prime) - out.log_sin;
    out.z = std::exp(logz);
    out.sheet = static_cast<int>(std::lround((logz.imag() - std::arg(out.z)) / (2.0 * kPi)));
    return out;
}

cplx prefactor_A(const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg) {
    return std::exp(make_context(s, rc, cfg, Dimension::D2plus1).log_pref);
}

cplx prefactor_D(const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg) {
    return std::exp(make_context(s, rc, cfg, Dimension::D3plus1).log_pref);
}

cplx phi_factor(int l, int sigma, const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                Extension ext) {
    const Context c = make_context(s, rc, cfg, Dimension::D2plus1);
    const cplx zee = std::exp(I * double(sigma) * cfg.eB * s.s);
    return partial_scaled(l, sigma, c, rc, cfg, ext) * zee * std::exp(c.scale);
}

YSum y_series(cplx z, cplx eta, double mu, int l_max) {
    if (l_max < 1) fail(ErrorKind::Domain, "y_series: l_max must be at least 1");
    YSum out;
    const double sc = std::exp(std::fabs(z.imag()));
    out.value = y_scaled_series(z, eta, mu, l_max, false, &out.tail, &out.terms) * sc;
    out.tail *= sc;
    return out;
}

YSum y_series_adaptive(cplx z, cplx eta, double mu) {
    YSum out;
    const double sc = std::exp(std::fabs(z.imag()));
    out.value = y_scaled_series(z, eta, mu, 500, true, &out.tail, &out.terms) * sc;
    out.tail *= sc;
    return out;
}

cplx y_integral(cplx z, cplx eta, double mu, double tol) {
    const double sc = std::fabs(z.imag());
    return y_integral_scaled(z, eta, mu, tol * std::exp(-sc), 1e-14) * std::exp(sc);
}

cplx y_function_scaled(cplx z, cplx eta, double mu) {
    if (std::abs(z) <= 8.0) return y_scaled_series(z, eta, mu, 500, true, nullptr, nullptr);
    return y_integral_scaled(z, eta, mu, 1e-14, 1e-12);
}

cplx bessel_jc_scaled(double nu, const BesselArgument& arg) {
    if (nu <= -1.0) {
        if (nu != -1.0) fail(ErrorKind::Domain, "Bessel order below -1");
        return -bessel_jc_scaled(1.0, arg);
    }
    cplx v = specfun::bessel_j_scaled(nu, arg.z);
    if (arg.sheet != 0) v *= std::polar(1.0, 2.0 * kPi * arg.sheet * nu);
    return v;
}

cplx y_sheet_scaled(const BesselArgument& arg, cplx eta, double mu) {
    cplx v = y_function_scaled(arg.z, eta, mu);
    if (arg.sheet != 0) v *= std::polar(1.0, 2.0 * kPi * arg.sheet * mu);
    return v;
}

cplx y_function(cplx z, cplx eta, double mu) { return y_function_scaled(z, eta, mu) * std::exp(std::fabs(z.imag())); }

KernelMatrix f_partial(int l, const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                       Extension ext) {
    const Context c = make_context(s, rc, cfg, cfg.dim);
    if (c.underflow) return KernelMatrix::Zero(cfg.spinor_size(), cfg.spinor_size());
    const cplx pref = pref_scaled(c);
    return assemble_spin(pref * partial_scaled(l, +1, c, rc, cfg, ext), pref * partial_scaled(l, -1, c, rc, cfg, ext),
                         cfg.dim);
}

KernelMatrix f_noncritical(const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg) {
    const Context c = make_context(s, rc, cfg, cfg.dim);
    if (c.underflow) return KernelMatrix::Zero(cfg.spinor_size(), cfg.spinor_size());
    const auto [p, m] = noncritical_scaled(c, rc, cfg);
    const cplx pref = pref_scaled(c);
    return assemble_spin(pref * p, pref * m, cfg.dim);
}

KernelMatrix f_critical(const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                        Extension ext) {
    const Context c = make_context(s, rc, cfg, cfg.dim);
    if (c.underflow) return KernelMatrix::Zero(cfg.spinor_size(), cfg.spinor_size());
    const auto [p, m] = critical_scaled(c, rc, cfg, ext);
    const cplx pref = pref_scaled(c);
    return assemble_spin(pref * p, pref * m, cfg.dim);
}

KernelMatrix f_total(const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                     Extension ext) {
    const Context c = make_context(s, rc, cfg, cfg.dim);
    if (c.underflow) return KernelMatrix::Zero(cfg.spinor_size(), cfg.spinor_size());
    const auto [np, nm] = noncritical_scaled(c, rc, cfg);
    const auto [cp, cm] = critical_scaled(c, rc, cfg, ext);
    const cplx pref = pref_scaled(c);
    return assemble_spin(pref * (np + cp), pref * (nm + cm), cfg.dim);
}

KernelMatrix f_uniform(const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg) {
    const Context c = make_context(s, rc, cfg, cfg.dim);
    const cplx eta = rc.dphi - cfg.eB * s.s;
    const cplx base = std::exp(c.log_pref - I * c.arg.z * std::cos(eta));
    const cplx zee = std::exp(-I * cfg.eB * s.s);
    return assemble_spin(base * zee, base / zee, cfg.dim);
}

cplx f_scalar(const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg, int D,
              std::span<const double> extra) {
    if (D < 2) fail(ErrorKind::Domain, "f_scalar: at least two spatial dimensions");
    const Context c = make_context(s, rc, cfg, Dimension::D2plus1);
    cplx log_pref = c.log_pref;
    if (D > 2) {
        double sum = 0.0;
        if (extra.empty()) {
            sum = rc.dx3 * rc.dx3;
        } else {
            if (static_cast<int>(extra.size()) != D - 2)
                fail(ErrorKind::Domain, "f_scalar: need D-2 extra separations");
            for (double d : extra) sum += d * d;
        }
        const double k = 0.5 * (D - 2);
        log_pref += (I / (4.0 * s.s)) * sum - I * (0.5 * kPi * k) - k * std::log(4.0 * kPi) -
                    double(D - 2) * std::log(sqrt_s(s));
    }
    if ((log_pref + c.scale).real() < kUnderflowExponent) return {0.0, 0.0};
    const double mu = cfg.mu;
    const cplx eta = rc.dphi - cfg.eB * s.s;
    const cplx bracket =
        minus_i_pow(mu) * jc_scaled(mu, c) + yc_scaled(eta, mu, c) + yc_scaled(-eta, -mu, c);
    return std::exp(log_pref + c.scale) * std::exp(-I * mu * cfg.eB * s.s) * bracket;
}

cplx f_scalar_partial(int l, const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg) {
    const Context c = make_context(s, rc, cfg, Dimension::D2plus1);
    if (c.underflow) return {0.0, 0.0};
    const double nu = l + cfg.mu;
    const double a = std::fabs(nu);
    const cplx ph = std::exp(I * double(l) * rc.dphi - I * nu * cfg.eB * s.s);
    return pref_scaled(c) * ph * minus_i_pow(a) * jc_scaled(a, c);
}

}  // namespace msgf
