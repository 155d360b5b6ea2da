#pragma once

#include <functional>

#include "msgf/kernels.hpp"

namespace msgf {

enum class Species { Particle, Antiparticle };
enum class Spin { Up, Down };

struct NonrelKind {
    Species species = Species::Particle;
    Spin spin = Spin::Up;
};

/// tau = dx0 / 2M.
inline double nonrel_tau(double dx0, double M) { return dx0 / (2.0 * M); }

/// E = omega / 2M of the wavefunction with quantum numbers (m, l).
double nonrel_energy(int m, int l, const FieldConfiguration& cfg, Extension ext, const NonrelKind& kind);

/// Schroedinger wavefunction (+-)phi_{m,l}(x); mode.sigma is ignored.
cplx nonrel_mode(const ModeIndex& mode, const FieldConfiguration& cfg, Extension ext, const NonrelKind& kind,
                 const SpacetimePoint& p);

/// A_nr = gamma / (4 pi sin(gamma tau)) exp[(i/2)(rho + rho') cot(gamma tau)].
cplx nonrel_amplitude(cplx tau, const ReducedCoordinates& rc, const FieldConfiguration& cfg);

/// Partial wave S_l; tau may carry a negative imaginary part.
cplx nonrel_Sl(int l, const NonrelKind& kind, const ReducedCoordinates& rc, const FieldConfiguration& cfg, cplx tau,
               Extension ext);

/// Closed sum over l != 0.
cplx nonrel_noncritical(const NonrelKind& kind, const ReducedCoordinates& rc, const FieldConfiguration& cfg, cplx tau);

/// Full kernel sum_l S_l in closed form, any tau with Im tau <= 0.
cplx nonrel_kernel(const NonrelKind& kind, const ReducedCoordinates& rc, const FieldConfiguration& cfg, cplx tau,
                   Extension ext);

/// Retarded Green function at tau > 0 (closed form): the kernel restricted to positive tau.
cplx nonrel_retarded(const NonrelKind& kind, const ReducedCoordinates& rc, const FieldConfiguration& cfg, double tau,
                     Extension ext);

/// Same quantity by direct summation over |l| <= l_window.
cplx nonrel_retarded_lsum(const NonrelKind& kind, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                          cplx tau, Extension ext, int l_window);

/// Pauli-type Hamiltonian H f = sum_k (q i d_k + eA_k)^2 f + s eB f at (x1, x2),
/// q = +1 for particles, -1 for antiparticles, s the Zeeman sign of the kind;
/// 4th-order differences with step h.
cplx apply_nonrel_hamiltonian(const std::function<cplx(double, double)>& f, const NonrelKind& kind,
                              const FieldConfiguration& cfg, double x1, double x2, double h);

}  // namespace msgf
