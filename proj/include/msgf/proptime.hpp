#pragma once

#include <functional>
#include <vector>

#include "msgf/kernels.hpp"

namespace msgf {

enum class ContourKind { RotatedRay, ShiftedLine };

/// Integration path in the proper-time plane. Both kinds start with a short
/// leg out of s = 0 whose direction damps the e^{-i w / 4s} singularity, then
/// RotatedRay follows s = t e^{-i theta}, ShiftedLine follows s = t - i delta up
/// to 3.5 pi / gamma and finishes on a rotated tail. The anticausal path is the
/// mirror image s -> -conj(s).
struct ContourSpec {
    ContourKind kind = ContourKind::RotatedRay;
    double theta = 0.35;
    double delta = 0.1;
    double T = 0.0;          // 0: chosen so that e^{-M^2 T sin theta} <= 1e-13
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    int max_panels = 4000;
};

void validate(const ContourSpec& c);

enum class PropagatorKind { Causal, Anticausal, Commutation, Retarded, Advanced };

template <class V>
struct IntegrationResult {
    V value{};
    double error_estimate = 0.0;
    int evaluations = 0;
};

/// One smooth piece of the path: s(t) and ds/dt for t in [0, 1].
struct ContourPiece {
    std::function<cplx(double)> s;
    std::function<cplx(double)> ds;
};

/// Exponents whose small-s behavior the initial leg has to damp:
/// dx0^2 - |dx_perp|^2 - dx3^2 and dx0^2 - (r + r')^2 - dx3^2.
std::pair<cplx, cplx> light_cone_exponents(const ReducedCoordinates& rc);

/// Direction arg s of the initial leg; Domain error when no direction damps both exponents
/// (real separations between the direct and the diffracted light cone).
double initial_direction(Side side, const ReducedCoordinates& rc);

std::vector<ContourPiece> build_contour(Side side, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                                        const ContourSpec& spec);

/// Integral of any matrix kernel along the contour for the given side.
IntegrationResult<KernelMatrix> integrate_kernel(const std::function<KernelMatrix(const ProperTime&)>& f, Side side,
                                                 const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                                                 const ContourSpec& spec);

/// Delta^c = int_0^inf f ds.
IntegrationResult<KernelMatrix> integrate_causal(const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                                                 Extension ext, const ContourSpec& spec = {});
/// Delta^cbar = int_{-0}^{-inf} f ds.
IntegrationResult<KernelMatrix> integrate_anticausal(const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                                                     Extension ext, const ContourSpec& spec = {});
/// Scalar (Klein-Gordon) function with D spatial dimensions.
IntegrationResult<cplx> integrate_scalar(Side side, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                                         int D = 2, const ContourSpec& spec = {});

/// Delta sampled at x and at x +- h e_nu, x +- 2h e_nu (Cartesian, nu = 0..dim-1).
struct Stencil {
    SpacetimePoint center;
    double h = 0.0;
    Dimension dim = Dimension::D2plus1;
    KernelMatrix value;
    std::vector<std::array<KernelMatrix, 4>> offsets;  // per axis: -2h, -h, +h, +2h
};

using DeltaField = std::function<KernelMatrix(const SpacetimePoint&)>;

/// Samples `delta` on the stencil; `threads` > 1 evaluates points concurrently.
Stencil sample_stencil(const DeltaField& delta, const SpacetimePoint& x, double h, Dimension dim, int threads = 1);

enum class MassSign { PlusM, MinusM };

/// (gamma^nu P_nu +- M) Delta at the stencil center, P_nu = i d_nu + eA_nu.
KernelMatrix apply_dirac_operator(const Stencil& st, const FieldConfiguration& cfg, MassSign sign);

/// -sigma1 (Gamma P - M) Delta sigma1 (2+1 only).
KernelMatrix spin_down_propagator(const Stencil& st, const FieldConfiguration& cfg);

/// Step-function combinations; dx0 = 0 is a Domain error.
KernelMatrix assemble(PropagatorKind kind, const KernelMatrix& S_causal, const KernelMatrix& S_anticausal,
                      double dx0);

struct PropagatorOptions {
    ContourSpec contour;
    double h = 1e-2;
    double damping = 0.0;  // |dx0| -> |dx0| - i damping (causal), + i damping (anticausal)
    bool spin_down = false;
    int threads = 1;
};

struct PropagatorValue {
    KernelMatrix value;
    double error_estimate = 0.0;
    int evaluations = 0;
};

/// S^c, S^cbar, S, S^ret or S^adv at (x, x').
PropagatorValue propagator(PropagatorKind kind, const SpacetimePoint& x, const SpacetimePoint& x_prime,
                           const FieldConfiguration& cfg, Extension ext, const PropagatorOptions& opt = {});

}  // namespace msgf
