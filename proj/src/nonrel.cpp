#include "msgf/nonrel.hpp"

#include <cmath>

#include "msgf/specfun.hpp"

namespace msgf {

namespace {

const cplx I(0.0, 1.0);

constexpr double kUnderflowExponent = -700.0;

cplx minus_i_pow(double nu) { return std::polar(1.0, -0.5 * kPi * nu); }

// Spin-down kinds are spin-up kinds of the other species with dphi -> -dphi.
struct Reduced {
    bool upper;     // particle-up formula (sigma = +1 radial data)
    double orient;  // +1, or -1 for the reflected angle
};

Reduced classify(const NonrelKind& kind) {
    const bool particle = kind.species == Species::Particle;
    const bool up = kind.spin == Spin::Up;
    return {particle == up, up ? 1.0 : -1.0};
}

int radial_sigma(const Reduced& k) { return k.upper ? +1 : -1; }

struct Amplitude {
    BesselArgument arg;
    cplx log_pref;
    double scale = 0.0;
    bool underflow = false;
};

Amplitude amplitude(cplx tau, const ReducedCoordinates& rc, const FieldConfiguration& cfg) {
    const double g = cfg.gamma();
    Amplitude a;
    a.arg = bessel_argument(g, ProperTime{tau, Side::Causal}, rc.rho, rc.rho_prime);
    a.log_pref = std::log(g / (4.0 * kPi)) - a.arg.log_sin + 0.5 * I * (rc.rho + rc.rho_prime) * a.arg.cot;
    a.scale = std::fabs(a.arg.z.imag());
    a.underflow = (a.log_pref + a.scale).real() < kUnderflowExponent;
    return a;
}

void require_tau(cplx tau) {
    if (tau == 0.0) fail(ErrorKind::Domain, "tau must be nonzero");
    if (tau.imag() > 0.0) fail(ErrorKind::Domain, "tau must not have a positive imaginary part");
}

// Partial wave divided by the scaled amplitude, angle already oriented.
cplx partial_scaled(int l, const Reduced& k, double dphi, const Amplitude& a, const FieldConfiguration& cfg,
                    Extension ext, cplx tau) {
    const int sigma = radial_sigma(k);
    const double alpha = radial_order(l, sigma, cfg, ext);
    const int ls = spin_shifted_l(l, sigma);
    const double nu = ls + cfg.mu;
    const double ang = k.upper ? (ls - cfg.l0) * dphi : -(l - cfg.l0) * dphi;
    return std::exp(I * ang - I * cfg.eB * (nu + sigma) * tau) * minus_i_pow(alpha) *
           bessel_jc_scaled(alpha, a.arg);
}

cplx noncritical_scaled(const Reduced& k, double dphi, const Amplitude& a, const FieldConfiguration& cfg, cplx tau) {
    const double mu = cfg.mu;
    const cplx bt = cfg.eB * tau;
    if (k.upper) {
        const cplx eta = dphi - bt;
        const cplx bracket = minus_i_pow(mu) * bessel_jc_scaled(mu, a.arg) -
                             std::exp(-I * eta) * minus_i_pow(1.0 - mu) * bessel_jc_scaled(1.0 - mu, a.arg) +
                             y_sheet_scaled(a.arg, eta, mu) + y_sheet_scaled(a.arg, -eta, -mu);
        return std::exp(-I * double(cfg.l0) * dphi - I * (1.0 + mu) * bt) * bracket;
    }
    const cplx bracket = y_sheet_scaled(a.arg, -dphi - bt, mu) + y_sheet_scaled(a.arg, dphi + bt, -mu);
    return std::exp(I * double(cfg.l0) * dphi + I * (1.0 - mu) * bt) * bracket;
}

cplx scaled_pref(const Amplitude& a) { return std::exp(a.log_pref + a.scale); }

// Fourth-order second and first differences along one axis.
template <class F>
std::pair<cplx, cplx> diffs(const F& f, double h) {
    const cplx f0 = f(0.0), p1 = f(h), m1 = f(-h), p2 = f(2.0 * h), m2 = f(-2.0 * h);
    const cplx d1 = (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h);
    const cplx d2 = (-p2 + 16.0 * p1 - 30.0 * f0 + 16.0 * m1 - m2) / (12.0 * h * h);
    return {d1, d2};
}

}  // namespace

double nonrel_energy(int m, int l, const FieldConfiguration& cfg, Extension ext, const NonrelKind& kind) {
    const Reduced k = classify(kind);
    return omega_spectrum(ModeIndex{m, l, radial_sigma(k), std::nullopt}, cfg, ext) / (2.0 * cfg.M);
}

cplx nonrel_mode(const ModeIndex& mode, const FieldConfiguration& cfg, Extension ext, const NonrelKind& kind,
                 const SpacetimePoint& p) {
    const Reduced k = classify(kind);
    const int sigma = radial_sigma(k);
    const double alpha = radial_order(mode.l, sigma, cfg, ext);
    if (alpha < 0.0 && !(p.r > 0.0)) fail(ErrorKind::Axis, "irregular mode is singular on the axis");
    const double g = cfg.gamma();
    const double radial = specfun::laguerre_fn({mode.m, alpha}, 0.5 * g * p.r * p.r);
    const double phi = k.orient * p.phi;
    const double ang = k.upper ? (spin_shifted_l(mode.l, sigma) - cfg.l0) * phi : -(mode.l - cfg.l0) * phi;
    const double E = nonrel_energy(mode.m, mode.l, cfg, ext, kind);
    return std::sqrt(g / (2.0 * kPi)) * radial * std::exp(I * (ang - E * p.x0));
}

cplx nonrel_amplitude(cplx tau, const ReducedCoordinates& rc, const FieldConfiguration& cfg) {
    require_tau(tau);
    return std::exp(amplitude(tau, rc, cfg).log_pref);
}

cplx nonrel_Sl(int l, const NonrelKind& kind, const ReducedCoordinates& rc, const FieldConfiguration& cfg, cplx tau,
               Extension ext) {
    require_tau(tau);
    const Reduced k = classify(kind);
    const Amplitude a = amplitude(tau, rc, cfg);
    if (a.underflow) return {0.0, 0.0};
    return scaled_pref(a) * partial_scaled(l, k, k.orient * rc.dphi, a, cfg, ext, tau);
}

cplx nonrel_noncritical(const NonrelKind& kind, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                        cplx tau) {
    require_tau(tau);
    const Reduced k = classify(kind);
    const Amplitude a = amplitude(tau, rc, cfg);
    if (a.underflow) return {0.0, 0.0};
    return scaled_pref(a) * noncritical_scaled(k, k.orient * rc.dphi, a, cfg, tau);
}

cplx nonrel_kernel(const NonrelKind& kind, const ReducedCoordinates& rc, const FieldConfiguration& cfg, cplx tau,
                   Extension ext) {
    require_tau(tau);
    const Reduced k = classify(kind);
    const Amplitude a = amplitude(tau, rc, cfg);
    if (a.underflow) return {0.0, 0.0};
    const double dphi = k.orient * rc.dphi;
    return scaled_pref(a) * (noncritical_scaled(k, dphi, a, cfg, tau) + partial_scaled(0, k, dphi, a, cfg, ext, tau));
}

cplx nonrel_retarded(const NonrelKind& kind, const ReducedCoordinates& rc, const FieldConfiguration& cfg, double tau,
                     Extension ext) {
    if (!(tau > 0.0)) fail(ErrorKind::Domain, "retarded function is supported on tau > 0");
    return nonrel_kernel(kind, rc, cfg, tau, ext);
}

cplx nonrel_retarded_lsum(const NonrelKind& kind, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                          cplx tau, Extension ext, int l_window) {
    if (l_window < 0) fail(ErrorKind::Validation, "l_window must be nonnegative");
    require_tau(tau);
    const Reduced k = classify(kind);
    const Amplitude a = amplitude(tau, rc, cfg);
    if (a.underflow) return {0.0, 0.0};
    const double dphi = k.orient * rc.dphi;
    cplx sum(0.0, 0.0);
    for (int l = -l_window; l <= l_window; ++l) sum += partial_scaled(l, k, dphi, a, cfg, ext, tau);
    return scaled_pref(a) * sum;
}

cplx apply_nonrel_hamiltonian(const std::function<cplx(double, double)>& f, const NonrelKind& kind,
                              const FieldConfiguration& cfg, double x1, double x2, double h) {
    const Reduced k = classify(kind);
    const double q = kind.species == Species::Particle ? 1.0 : -1.0;
    const double zeeman = k.upper ? 1.0 : -1.0;
    const auto a = potentials_cartesian(cfg, x1, x2);
    const cplx f0 = f(x1, x2);
    const auto [d1, dd1] = diffs([&](double d) { return f(x1 + d, x2); }, h);
    const auto [d2, dd2] = diffs([&](double d) { return f(x1, x2 + d); }, h);
    // (q i d + A)^2 f = -f'' + 2 i q A f' + i q (dA) f + A^2 f; div A = 0 here.
    const cplx lap = dd1 + dd2;
    const cplx drift = 2.0 * I * q * (a.eA[1] * d1 + a.eA[2] * d2);
    const double a2 = a.eA[1] * a.eA[1] + a.eA[2] * a.eA[2];
    return -lap + drift + (a2 + zeeman * cfg.eB) * f0;
}

}  // namespace msgf
