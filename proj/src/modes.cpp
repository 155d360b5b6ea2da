#include "msgf/modes.hpp"

#include <cmath>
#include <string>

#include "msgf/specfun.hpp"

namespace msgf {

namespace {

const cplx I(0.0, 1.0);

KernelMatrix zeros(int n) { return KernelMatrix::Zero(n, n); }

void require_p3(const ModeIndex& mode, const FieldConfiguration& cfg) {
    if (cfg.dim == Dimension::D3plus1 && !mode.p3)
        fail(ErrorKind::Domain, "mode index needs p3 in 3+1");
    if (cfg.dim == Dimension::D2plus1 && mode.p3)
        fail(ErrorKind::Domain, "mode index carries p3 in 2+1");
}

void require_mode(const ModeIndex& mode) {
    if (mode.m < 0) fail(ErrorKind::Domain, "radial quantum number must be nonnegative");
    if (mode.sigma != 1 && mode.sigma != -1) fail(ErrorKind::Domain, "sigma must be +1 or -1");
}

// Fourth-order central difference of a spinor field along one Cartesian axis.
template <class F>
SpinorValue central_diff(const F& f, double h) {
    return (8.0 * (f(h) - f(-h)) - (f(2.0 * h) - f(-2.0 * h))) / (12.0 * h);
}

}  // namespace

FieldConfiguration FieldConfiguration::make(double eB, int l0, double mu, double M, Dimension dim) {
    FieldConfiguration cfg{eB, l0, mu, M, dim};
    validate(cfg);
    return cfg;
}

void validate(const FieldConfiguration& cfg) {
    if (!std::isfinite(cfg.eB) || cfg.eB == 0.0) fail(ErrorKind::Validation, "eB must be finite and nonzero");
    if (!(cfg.mu >= 0.0 && cfg.mu < 1.0)) fail(ErrorKind::Validation, "mu must lie in [0, 1)");
    if (!(cfg.M > 0.0) || !std::isfinite(cfg.M)) fail(ErrorKind::Validation, "M must be positive");
}

namespace gamma_algebra {

int size(Dimension dim) { return dim == Dimension::D2plus1 ? 2 : 4; }

KernelMatrix identity(Dimension dim) {
    const int n = size(dim);
    return KernelMatrix::Identity(n, n);
}

KernelMatrix pauli(int k) {
    KernelMatrix s = zeros(2);
    switch (k) {
        case 1: s(0, 1) = 1.0; s(1, 0) = 1.0; break;
        case 2: s(0, 1) = -I; s(1, 0) = I; break;
        case 3: s(0, 0) = 1.0; s(1, 1) = -1.0; break;
        default: fail(ErrorKind::Domain, "pauli index must be 1..3");
    }
    return s;
}

double metric(int nu) { return nu == 0 ? 1.0 : -1.0; }

KernelMatrix gamma(int nu, Dimension dim) {
    if (dim == Dimension::D2plus1) {
        switch (nu) {
            case 0: return pauli(3);
            case 1: return I * pauli(2);
            case 2: return -I * pauli(1);
            default: fail(ErrorKind::Domain, "2+1 gamma index must be 0..2");
        }
    }
    KernelMatrix g = zeros(4);
    if (nu == 0) {
        g.diagonal() << 1.0, 1.0, -1.0, -1.0;
        return g;
    }
    if (nu < 1 || nu > 3) fail(ErrorKind::Domain, "3+1 gamma index must be 0..3");
    const KernelMatrix s = pauli(nu);
    g.block(0, 2, 2, 2) = s;
    g.block(2, 0, 2, 2) = -s;
    return g;
}

KernelMatrix sigma3(Dimension dim) {
    if (dim == Dimension::D2plus1) return pauli(3);
    KernelMatrix g = zeros(4);
    g.diagonal() << 1.0, -1.0, 1.0, -1.0;
    return g;
}

KernelMatrix xi(int sigma, Dimension dim) {
    return 0.5 * (identity(dim) + double(sigma) * sigma3(dim));
}

}  // namespace gamma_algebra

CovariantPotential potentials_cartesian(const FieldConfiguration& cfg, double x1, double x2) {
    const double r2 = x1 * x1 + x2 * x2;
    if (r2 == 0.0) fail(ErrorKind::Axis, "potentials are singular on the solenoid axis");
    const double c = cfg.l0 + cfg.mu + 0.5 * cfg.eB * r2;
    CovariantPotential a;
    a.eA[1] = c * x2 / r2;
    a.eA[2] = -c * x1 / r2;
    return a;
}

CovariantPotential potentials(const FieldConfiguration& cfg, const SpacetimePoint& p) {
    if (!(p.r > 0.0)) fail(ErrorKind::Axis, "potentials are singular on the solenoid axis");
    return potentials_cartesian(cfg, p.r * std::cos(p.phi), p.r * std::sin(p.phi));
}

double radial_order(int l, int sigma, const FieldConfiguration& cfg, Extension ext) {
    if (l == 0) {
        if (ext == Extension::MinusHalfPi && sigma < 0) return -cfg.mu;
        if (ext == Extension::PlusHalfPi && sigma > 0) return cfg.mu - 1.0;
    }
    return std::fabs(cfg.mu + spin_shifted_l(l, sigma));
}

bool is_irregular(int l, int sigma, const FieldConfiguration& cfg, Extension ext) {
    return radial_order(l, sigma, cfg, ext) < 0.0;
}

double omega_spectrum(const ModeIndex& mode, const FieldConfiguration& cfg, Extension ext) {
    require_mode(mode);
    const double alpha = radial_order(mode.l, mode.sigma, cfg, ext);
    const double nu = cfg.mu + spin_shifted_l(mode.l, mode.sigma);
    const double w = cfg.gamma() * (2.0 * mode.m + 1.0 + alpha) + cfg.eB * (nu + mode.sigma);
    // Exact zeros come out as tiny rounding residue; clamp.
    return std::fabs(w) < 1e-13 * (1.0 + cfg.gamma() * (mode.m + 1.0 + std::fabs(nu))) ? 0.0 : w;
}

double energy(double omega, std::optional<double> p3, double M, Branch branch) {
    if (omega < 0.0) fail(ErrorKind::Domain, "omega must be nonnegative");
    const double p = p3 ? *p3 : 0.0;
    const double e = std::sqrt(M * M + p * p + omega);
    return branch == Branch::Plus ? e : -e;
}

int ladder_partner_m(const ModeIndex& mode, const FieldConfiguration& cfg, Extension ext) {
    require_mode(mode);
    const double a_minus = radial_order(mode.l, -1, cfg, ext);
    const double a_plus = radial_order(mode.l, +1, cfg, ext);
    const double shift = 0.5 * (a_minus - a_plus - cfg.eB / cfg.gamma());
    const double target = mode.sigma < 0 ? mode.m + shift : mode.m - shift;
    const double rounded = std::round(target);
    if (std::fabs(target - rounded) > 1e-9 || rounded < 0.0) return -1;
    return static_cast<int>(rounded);
}

cplx ladder_coefficient(int l, const FieldConfiguration& cfg, Extension ext) {
    const double nu = cfg.mu + l;
    const double a = radial_order(l, -1, cfg, ext);
    const cplx c = std::fabs(a - nu) < 1e-14 ? I : -I;
    // The 3+1 stack (u, sigma3 u) flips the sign in the standard representation.
    return cfg.dim == Dimension::D2plus1 ? c : -c;
}

SpinorValue transverse_solution(int m, int l, int sigma, const FieldConfiguration& cfg, Extension ext,
                                double r, double phi) {
    if (m < 0) fail(ErrorKind::Domain, "radial quantum number must be nonnegative");
    if (r < 0.0) fail(ErrorKind::Domain, "r must be nonnegative");
    const double g = cfg.gamma();
    const double alpha = radial_order(l, sigma, cfg, ext);
    const double rho = 0.5 * g * r * r;
    const double radial = specfun::laguerre_fn({m, alpha}, rho);
    const cplx ang = std::polar(std::sqrt(g / (2.0 * kPi)), phi * (spin_shifted_l(l, sigma) - cfg.l0));
    SpinorValue u = SpinorValue::Zero(2);
    u(sigma > 0 ? 0 : 1) = ang * radial;
    return u;
}

SpinorValue squared_solution(const ModeIndex& mode, const FieldConfiguration& cfg, Extension ext,
                             const SpacetimePoint& p, Branch branch) {
    require_mode(mode);
    require_p3(mode, cfg);
    const double w = omega_spectrum(mode, cfg, ext);
    const double eps = energy(w, mode.p3, cfg.M, branch);
    const SpinorValue u = transverse_solution(mode.m, mode.l, mode.sigma, cfg, ext, p.r, p.phi);
    if (cfg.dim == Dimension::D2plus1) return std::exp(-I * eps * p.x0) * u;
    const double p3 = *mode.p3;
    const cplx ph = std::exp(-I * (eps * p.x0 + p3 * p.x3)) / std::sqrt(2.0 * kPi);
    SpinorValue U(4);
    U << u(0), u(1), u(0), -u(1);
    return ph * U;
}

double fd_step(const FieldConfiguration& cfg, double r, const FdOptions& fd) {
    double h = fd.h;
    if (h <= 0.0) h = fd.h_relative * std::min(r, 1.0 / std::sqrt(cfg.gamma()));
    if (!(r > 10.0 * h)) fail(ErrorKind::Axis, "finite-difference stencil reaches the solenoid axis");
    return h;
}

SpinorValue apply_transverse(const std::function<SpinorValue(double, double)>& field,
                             const FieldConfiguration& cfg, double x1, double x2, double h) {
    const SpinorValue f0 = field(x1, x2);
    const auto a = potentials_cartesian(cfg, x1, x2);
    const SpinorValue d1 = central_diff([&](double d) { return field(x1 + d, x2); }, h);
    const SpinorValue d2 = central_diff([&](double d) { return field(x1, x2 + d); }, h);
    const SpinorValue p1 = I * d1 + a.eA[1] * f0;
    const SpinorValue p2 = I * d2 + a.eA[2] * f0;
    return gamma_algebra::gamma(1, cfg.dim) * p1 + gamma_algebra::gamma(2, cfg.dim) * p2;
}

namespace {

// Transverse spinor as a function of Cartesian position: u (2+1) or (u, sigma3 u) (3+1).
std::function<SpinorValue(double, double)> transverse_field(const ModeIndex& mode, const FieldConfiguration& cfg,
                                                            Extension ext) {
    return [mode, cfg, ext](double x1, double x2) {
        const double r = std::hypot(x1, x2);
        const SpinorValue u = transverse_solution(mode.m, mode.l, mode.sigma, cfg, ext, r, std::atan2(x2, x1));
        if (cfg.dim == Dimension::D2plus1) return u;
        SpinorValue U(4);
        U << u(0), u(1), u(0), -u(1);
        return U;
    };
}

// (gamma^0 eps + gamma^3 p3 + M) f + gamma.P_perp f; f carries no x0/x3 dependence.
SpinorValue dirac_plus(const std::function<SpinorValue(double, double)>& field, const FieldConfiguration& cfg,
                       double eps, double p3, double mass_sign, double x1, double x2, double h) {
    SpinorValue out = apply_transverse(field, cfg, x1, x2, h);
    const SpinorValue f0 = field(x1, x2);
    out += (eps * gamma_algebra::gamma(0, cfg.dim) + mass_sign * cfg.M * gamma_algebra::identity(cfg.dim)) * f0;
    if (cfg.dim == Dimension::D3plus1) out += p3 * (gamma_algebra::gamma(3, cfg.dim) * f0);
    return out;
}

// 2+1: |(Gamma P + M) u_sigma|^2 = 2 eps (eps + sigma M); zero marks a vanishing spinor.
double norm_square(double eps, double M, double p3, int sigma, Dimension dim) {
    return dim == Dimension::D2plus1 ? 2.0 * eps * (eps + sigma * M) : 4.0 * eps * (eps + p3);
}

}  // namespace

SpinorValue dirac_spinor(const ModeIndex& mode, const FieldConfiguration& cfg, Extension ext,
                         const SpacetimePoint& p, Branch branch, const FdOptions& fd) {
    require_mode(mode);
    require_p3(mode, cfg);
    const double h = fd_step(cfg, p.r, fd);
    const double w = omega_spectrum(mode, cfg, ext);
    const double eps = energy(w, mode.p3, cfg.M, branch);
    const double p3 = mode.p3.value_or(0.0);
    const int n = cfg.spinor_size();
    const double n2 = norm_square(eps, cfg.M, p3, mode.sigma, cfg.dim);
    if (n2 == 0.0) return SpinorValue::Zero(n);
    const auto field = transverse_field(mode, cfg, ext);
    const double x1 = p.r * std::cos(p.phi);
    const double x2 = p.r * std::sin(p.phi);
    SpinorValue psi = dirac_plus(field, cfg, eps, p3, 1.0, x1, x2, h);
    cplx phase = std::exp(-I * eps * p.x0);
    if (cfg.dim == Dimension::D3plus1) phase *= std::exp(-I * p3 * p.x3) / std::sqrt(2.0 * kPi);
    return phase * psi / std::sqrt(n2);
}

Eigen::Matrix<cplx, 1, Eigen::Dynamic, Eigen::RowMajor, 1, 4> dirac_bar(const SpinorValue& psi, Dimension dim) {
    return psi.adjoint() * gamma_algebra::gamma(0, dim);
}

double ladder_check(const ModeIndex& mode, const FieldConfiguration& cfg, Extension ext, const SpacetimePoint& p,
                    const FdOptions& fd) {
    require_mode(mode);
    const double w = omega_spectrum(mode, cfg, ext);
    if (w == 0.0) fail(ErrorKind::Domain, "ladder relation undefined for omega = 0");
    const int partner = ladder_partner_m(mode, cfg, ext);
    if (partner < 0) fail(ErrorKind::Domain, "no ladder partner for this mode");
    const double h = fd_step(cfg, p.r, fd);
    const double x1 = p.r * std::cos(p.phi);
    const double x2 = p.r * std::sin(p.phi);
    const SpinorValue lhs = apply_transverse(transverse_field(mode, cfg, ext), cfg, x1, x2, h);
    ModeIndex other = mode;
    other.m = partner;
    other.sigma = -mode.sigma;
    const SpinorValue rhs =
        ladder_coefficient(mode.l, cfg, ext) * std::sqrt(w) * transverse_field(other, cfg, ext)(x1, x2);
    return (lhs - rhs).norm() / std::max(rhs.norm(), 1e-300);
}

double dirac_residual(const ModeIndex& mode, const FieldConfiguration& cfg, Extension ext, const SpacetimePoint& p,
                      Branch branch, const FdOptions& fd) {
    const double h = fd_step(cfg, p.r, fd);
    const double w = omega_spectrum(mode, cfg, ext);
    const double eps = energy(w, mode.p3, cfg.M, branch);
    const double p3 = mode.p3.value_or(0.0);
    // Transverse part of psi, then (gamma P - M) on top of it; phases cancel in the ratio.
    auto psi_field = [&](double x1, double x2) {
        const SpacetimePoint q{0.0, std::hypot(x1, x2), std::atan2(x2, x1), 0.0};
        FdOptions inner = fd;
        inner.h = h;
        return dirac_spinor(mode, cfg, ext, q, branch, inner);
    };
    const double x1 = p.r * std::cos(p.phi);
    const double x2 = p.r * std::sin(p.phi);
    const SpinorValue psi = psi_field(x1, x2);
    const double scale = psi.norm();
    if (scale == 0.0) return 0.0;
    // Wider outer stencil so the nested differences do not share nodes.
    const SpinorValue res = dirac_plus(psi_field, cfg, eps, p3, -1.0, x1, x2, 2.5 * h);
    return res.norm() / scale;
}

}  // namespace msgf
