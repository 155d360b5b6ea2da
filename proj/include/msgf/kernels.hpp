#pragma once

#include <span>

#include "msgf/modes.hpp"

namespace msgf {

/// Quantities every kernel consumes. dx0 may carry a small imaginary part
/// (complex-time damping used by the mode-sum comparisons).
struct ReducedCoordinates {
    double rho = 0.0;
    double rho_prime = 0.0;
    double r = 0.0;
    double r_prime = 0.0;
    double dphi = 0.0;  // raw phi - phi'
    cplx dx0 = 0.0;
    double dx3 = 0.0;
};

/// `damping` shifts dx0 -> dx0 - i damping.
ReducedCoordinates reduce(const SpacetimePoint& p, const SpacetimePoint& p_prime, const FieldConfiguration& cfg,
                          double damping = 0.0);

enum class Side { Causal, Anticausal };

/// Proper time; `side` fixes the sheet of sqrt(s) and of log sin(gamma s)
/// (anticausal: negative s read as |s| e^{-i pi}).
struct ProperTime {
    cplx s;
    Side side = Side::Causal;
};

inline constexpr double kPoleGuard = 1e-8;

/// Continuous-sheet data of z = sqrt(rho rho') / sin(gamma s).
struct BesselArgument {
    cplx z;           // principal value
    int sheet = 0;    // arg z + 2 pi sheet is the continuous argument
    cplx log_sin;     // continuous log sin(gamma s)
    cplx cot;         // cot(gamma s)
};

/// Throws Pole when |sin(gamma s)| < kPoleGuard.
BesselArgument bessel_argument(double gamma, const ProperTime& s, double rho, double rho_prime);

/// sqrt(s) on the branch selected by the side.
cplx sqrt_s(const ProperTime& s);

cplx prefactor_A(const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg);
cplx prefactor_D(const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg);

/// Angular factor of the (l, sigma) partial wave; the l = 0 orders follow `ext`.
cplx phi_factor(int l, int sigma, const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                Extension ext = Extension::MinusHalfPi);

struct YSum {
    cplx value;
    double tail = 0.0;  // magnitude of the last term kept
    int terms = 0;
};

/// Partial sum of Y through l_max.
YSum y_series(cplx z, cplx eta, double mu, int l_max);
/// Sum with l_max grown until the last term < 1e-14 |sum| (cap 500).
YSum y_series_adaptive(cplx z, cplx eta, double mu);
/// Segment integral from 0 to z; tolerance is absolute on the result.
cplx y_integral(cplx z, cplx eta, double mu, double tol = 1e-12);
/// J_nu on the continuous sheet of `arg`, scaled by e^{-|Im z|}; order -1 is read as -J_1.
cplx bessel_jc_scaled(double nu, const BesselArgument& arg);
/// Y on the continuous sheet of `arg`, scaled by e^{-|Im z|}.
cplx y_sheet_scaled(const BesselArgument& arg, cplx eta, double mu);

/// Series for |z| <= 8, integral beyond.
cplx y_function(cplx z, cplx eta, double mu);

/// Exponentially scaled variants: value * e^{-|Im z|}.
cplx y_function_scaled(cplx z, cplx eta, double mu);

/// Single partial wave f_l (both spins), any l.
KernelMatrix f_partial(int l, const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                       Extension ext);

KernelMatrix f_noncritical(const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg);
KernelMatrix f_critical(const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                        Extension ext);
KernelMatrix f_total(const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                     Extension ext);
KernelMatrix f_uniform(const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg);

/// Klein-Gordon kernel with D spatial dimensions. Extra separations dx_3..dx_D
/// come from `extra`; when empty, rc.dx3 is used for k = 3 and zero beyond.
cplx f_scalar(const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg, int D = 2,
              std::span<const double> extra = {});
/// Single scalar partial wave, 2 spatial dimensions.
cplx f_scalar_partial(int l, const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg);

}  // namespace msgf
