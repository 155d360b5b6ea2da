#include "msgf/specfun.hpp"

#include <array>
#include <cmath>
#include <string>

namespace msgf::specfun {

namespace {

using lcplx = std::complex<long double>;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kSeriesRadius = 17.0;
constexpr double kHankelMaxOrder = 2.5;

double lanczos_sum(double xm1) {
    double a = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (xm1 + double(i));
    return a;
}

void check_order(double nu) {
    if (!(nu > -1.0)) fail(ErrorKind::Domain, "bessel_j: order must exceed -1, got " + std::to_string(nu));
}

// Ascending series; returns J_nu(z) e^{-|Im z|}.
cplx series_scaled(double nu, cplx zd) {
    const lcplx z(zd.real(), zd.imag());
    const lcplx half = z / 2.0L;
    const lcplx q = -half * half;
    const lcplx lead = std::exp(static_cast<long double>(nu) * std::log(half) -
                                static_cast<long double>(std::lgamma(static_cast<long double>(nu) + 1.0L)) -
                                std::fabs(static_cast<long double>(zd.imag())));
    lcplx term(1.0L, 0.0L);
    lcplx sum(1.0L, 0.0L);
    for (int k = 1; k < 400; ++k) {
        term *= q / (static_cast<long double>(k) * (static_cast<long double>(nu) + k));
        sum += term;
        if (std::abs(term) < 1e-20L * std::abs(sum) && k > 2) break;
    }
    const lcplx r = lead * sum;
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

// Hankel expansion for Re w >= 0, |w| > 17; scaled by e^{-|Im w|}.
cplx hankel_scaled(double nu, cplx w) {
    const double mu4 = 4.0 * nu * nu;
    cplx p(1.0, 0.0), q(0.0, 0.0);
    cplx term(1.0, 0.0);
    double last = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu4 - odd * odd) / (8.0 * k) / w;
        const double mag = std::abs(term);
        if (mag > last && k > 2) break;
        last = mag;
        // k odd feeds Q, k even feeds P, alternating signs in pairs.
        const int r = k % 4;
        if (r == 1) q += term;
        else if (r == 2) p -= term;
        else if (r == 3) q -= term;
        else p += term;
        if (mag < 1e-17) break;
    }
    const cplx i(0.0, 1.0);
    const cplx chi = w - (0.5 * nu + 0.25) * kPi;
    const double sc = std::fabs(w.imag());
    const cplx ep = std::exp(i * chi - sc);
    const cplx em = std::exp(-i * chi - sc);
    const cplx pref = std::sqrt(2.0 / (kPi * w));
    return pref * 0.5 * ((p + i * q) * ep + (p - i * q) * em);
}

// Backward recurrence for large order, normalized by Hankel values of the
// two lowest orders; w in the closed right half plane, |w| > 17.
cplx miller_scaled(double nu, cplx w) {
    const int n_nu = static_cast<int>(std::floor(nu));
    const double nu0 = nu - n_nu;
    const double aw = std::abs(w);
    const int n_top = std::max(n_nu, static_cast<int>(aw)) + 60 + static_cast<int>(4.0 * std::sqrt(aw));
    cplx f_next(0.0, 0.0);
    cplx f(1e-30, 0.0);
    cplx at_nu(0.0, 0.0), f1(0.0, 0.0), f0(0.0, 0.0);
    for (int n = n_top; n >= 1; --n) {
        const cplx f_prev = (2.0 * (nu0 + n) / w) * f - f_next;
        f_next = f;
        f = f_prev;
        // f now holds order nu0 + n - 1
        if (n - 1 == n_nu) at_nu = f;
        if (n - 1 == 1) f1 = f;
        if (std::abs(f) > 1e200) {
            f *= 1e-200;
            f_next *= 1e-200;
            at_nu *= 1e-200;
            f1 *= 1e-200;
        }
    }
    f0 = f;
    if (n_nu == 0) at_nu = f0;
    const cplx j0 = hankel_scaled(nu0, w);
    const cplx j1 = hankel_scaled(nu0 + 1.0, w);
    const cplx c = std::abs(j0) >= std::abs(j1) ? j0 / f0 : j1 / f1;
    return c * at_nu;
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) fail(ErrorKind::Domain, "gamma_fn: argument must be positive");
    if (x < 0.5) return gamma_fn(x + 1.0) / x;
    const double xm1 = x - 1.0;
    const double t = xm1 + kLanczosG + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, xm1 + 0.5) * std::exp(-t) * lanczos_sum(xm1);
}

double log_gamma(double x) {
    if (!(x > 0.0)) fail(ErrorKind::Domain, "log_gamma: argument must be positive");
    if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
    const double xm1 = x - 1.0;
    const double t = xm1 + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (xm1 + 0.5) * std::log(t) - t + std::log(lanczos_sum(xm1));
}

double laguerre_poly(int m, double alpha, double x) {
    if (m < 0) fail(ErrorKind::Domain, "laguerre_poly: m must be nonnegative");
    if (m == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + alpha - x;
    for (int k = 2; k <= m; ++k) {
        const double next = ((2.0 * k - 1.0 + alpha - x) * cur - (k - 1.0 + alpha) * prev) / k;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> laguerre_fn_sequence(int m_max, double alpha, double x) {
    if (m_max < 0) fail(ErrorKind::Domain, "laguerre_fn: m must be nonnegative");
    if (!(alpha >= -1.0)) fail(ErrorKind::Domain, "laguerre_fn: alpha must be at least -1");
    if (x < 0.0) fail(ErrorKind::Domain, "laguerre_fn: x must be nonnegative");
    std::vector<double> out(static_cast<std::size_t>(m_max) + 1, 0.0);
    if (alpha == -1.0) {
        // I_{m-1,m} = -I_{m,m-1}; the m = 0 member vanishes.
        if (m_max == 0) return out;
        const auto up = laguerre_fn_sequence(m_max - 1, 1.0, x);
        for (int k = 1; k <= m_max; ++k) out[k] = -up[k - 1];
        return out;
    }
    if (x == 0.0) {
        if (alpha < 0.0) fail(ErrorKind::Axis, "laguerre_fn: irregular function diverges at x = 0");
        if (alpha > 0.0) return out;
        // alpha = 0: I_{m,m}(0) = L_m(0) = 1
        for (auto& v : out) v = 1.0;
        return out;
    }
    // Normalized recurrence: I_k = c_k e^{-x/2} x^{alpha/2} L_k with
    // c_k / c_{k-1} = sqrt(k / (k + alpha)).
    out[0] = std::exp(-0.5 * x + 0.5 * alpha * std::log(x) - 0.5 * log_gamma(alpha + 1.0));
    if (m_max == 0) return out;
    double r_prev = std::sqrt(1.0 / (1.0 + alpha));
    out[1] = r_prev * (1.0 + alpha - x) * out[0];
    for (int k = 2; k <= m_max; ++k) {
        const double r = std::sqrt(k / (k + alpha));
        out[k] = ((2.0 * k - 1.0 + alpha - x) * r * out[k - 1] - (k - 1.0 + alpha) * r * r_prev * out[k - 2]) / k;
        r_prev = r;
    }
    return out;
}

double laguerre_fn(LaguerreIndex idx, double x) {
    return laguerre_fn_sequence(idx.m, idx.alpha, x).back();
}

cplx bessel_j_scaled(double nu, cplx z) {
    check_order(nu);
    const double az = std::abs(z);
    if (!(az <= kBesselZMax)) fail(ErrorKind::Domain, "bessel_j: |z| outside the supported window");
    if (az == 0.0) {
        if (nu == 0.0) return {1.0, 0.0};
        if (nu > 0.0) return {0.0, 0.0};
        fail(ErrorKind::Axis, "bessel_j: negative order diverges at z = 0");
    }
    if (az <= kSeriesRadius) return series_scaled(nu, z);

    // Reflect into the right half plane; z on the negative axis counts as arg = +pi.
    cplx w = z;
    cplx phase(1.0, 0.0);
    if (z.real() < 0.0) {
        w = -z;
        const double sgn = z.imag() >= 0.0 ? 1.0 : -1.0;
        phase = std::polar(1.0, sgn * kPi * nu);
    }
    const cplx v = nu < kHankelMaxOrder ? hankel_scaled(nu, w) : miller_scaled(nu, w);
    return phase * v;
}

cplx bessel_j(double nu, cplx z) {
    const cplx v = bessel_j_scaled(nu, z);
    return v * std::exp(std::fabs(z.imag()));
}

cplx bessel_j_sheet(double nu, cplx z, int sheet) {
    const cplx v = bessel_j(nu, z);
    if (sheet == 0) return v;
    return v * std::polar(1.0, 2.0 * kPi * sheet * nu);
}

BesselValue bessel_j_flagged(double nu, cplx z) {
    BesselValue out{bessel_j(nu, z), false};
    if (std::abs(z) > 0.0) out.near_branch_cut = kPi - std::fabs(std::arg(z)) < 1e-12;
    return out;
}

cplx bessel_j_derivative(double nu, cplx z) {
    if (nu - 1.0 > -1.0) return 0.5 * (bessel_j(nu - 1.0, z) - bessel_j(nu + 1.0, z));
    if (std::abs(z) == 0.0) fail(ErrorKind::Axis, "bessel_j_derivative: order too low at z = 0");
    // J_{nu-1} eliminated through the three-term recurrence.
    return (nu / z) * bessel_j(nu, z) - bessel_j(nu + 1.0, z);
}

}  // namespace msgf::specfun
