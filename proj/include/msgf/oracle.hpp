#pragma once

#include "msgf/kernels.hpp"
#include "msgf/nonrel.hpp"

namespace msgf::oracle {

enum class Extrapolation { None, TwoPointLinear };

/// Truncation of brute-force sums. `damping` is the imaginary shift eta
/// applied as dx0 -> dx0 -+ i eta (or tau -> tau - i eta); TwoPointLinear
/// evaluates at eta and eta/2 and returns 2 V(eta/2) - V(eta).
struct TruncationSpec {
    int m_max = 300;
    int l_max = 40;
    double damping = 0.0;
    Extrapolation extrapolation = Extrapolation::None;
};

void validate(const TruncationSpec& t);

struct SumResult {
    KernelMatrix value;
    double tail = 0.0;  // magnitude of the last radial shell
};

/// phi_{m,l,sigma}(x_perp, x'_perp) for m = 0..m_max (independent of the kernels module).
std::vector<cplx> transverse_bilinears(int m_max, int l, int sigma, const ReducedCoordinates& rc,
                                       const FieldConfiguration& cfg, Extension ext);

/// sum_m e^{-i omega s} phi Xi with the proper-time prefactor: the brute-force kernel f.
SumResult mode_sum_kernel(const ProperTime& s, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                          Extension ext, const TruncationSpec& trunc);

/// Delta^c or Delta^cbar as a mode sum; dx0 (after damping) must sit in the half plane
/// where the sum converges: Im dx0 Re dx0 < 0 for Delta^c, > 0 for Delta^cbar.
SumResult mode_sum_delta(Side side, const ReducedCoordinates& rc, const FieldConfiguration& cfg, Extension ext,
                         const TruncationSpec& trunc);

/// S^-+ = +-i sum psi psibar over Dirac spinors (2+1); `branch` Minus gives S^-.
/// Time damping: dx0 -> dx0 - i eta for S^-, dx0 + i eta for S^+.
SumResult mode_sum_Smp(Branch which, const SpacetimePoint& p, const SpacetimePoint& p_prime,
                       const FieldConfiguration& cfg, Extension ext, const TruncationSpec& trunc);

/// Spin-down S^- built from psi = N sigma1 (Gamma P - M) u_{-1} (2+1).
SumResult mode_sum_spin_down(const SpacetimePoint& p, const SpacetimePoint& p_prime, const FieldConfiguration& cfg,
                             Extension ext, const TruncationSpec& trunc);

struct IdentityResult {
    cplx lhs;
    cplx rhs;
    double residual = 0.0;
    double tail = 0.0;
};

/// Laguerre-Bessel summation identity over m.
IdentityResult verify_sum_identity(double alpha, double rho, double rho_prime, cplx gamma_s, int m_max);

struct ModeClass {
    int m = 0;
    int l = 0;
    std::optional<double> p3;
};

/// Relative residual of the bilinear relation for one (m, l) class.
double verify_bilinear(const ModeClass& mc, const FieldConfiguration& cfg, Extension ext, const SpacetimePoint& p,
                       const SpacetimePoint& p_prime, Branch branch);

/// Scalar partial wave against the Xi_{-1} coefficient of the spinor one.
double verify_scalar_correspondence(int l, const ProperTime& s, const ReducedCoordinates& rc,
                                    const FieldConfiguration& cfg, Extension ext = Extension::PlusHalfPi);

/// i sum_m phi(x) phi*(x') e^{-i omega tau} for one nonrelativistic partial wave.
cplx nonrel_mode_sum(int l, const NonrelKind& kind, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                     Extension ext, cplx tau, int m_max);

}  // namespace msgf::oracle
