#pragma once

#include <array>
#include <functional>
#include <optional>

#include "msgf/types.hpp"

namespace msgf {

enum class Dimension { D2plus1, D3plus1 };
enum class Extension { MinusHalfPi, PlusHalfPi };
enum class Branch { Plus, Minus };

/// Physical parameters: signed eB, flux split l0 + mu, mass, dimension.
struct FieldConfiguration {
    double eB = 1.0;
    int l0 = 0;
    double mu = 0.0;
    double M = 1.0;
    Dimension dim = Dimension::D2plus1;

    /// Checked constructor; throws Validation on eB = 0, mu outside [0,1) or M <= 0.
    static FieldConfiguration make(double eB, int l0, double mu, double M,
                                   Dimension dim = Dimension::D2plus1);

    double gamma() const { return eB < 0.0 ? -eB : eB; }
    int sgnB() const { return eB > 0.0 ? 1 : -1; }
    int spinor_size() const { return dim == Dimension::D2plus1 ? 2 : 4; }
};

void validate(const FieldConfiguration& cfg);

struct ModeIndex {
    int m = 0;
    int l = 0;
    int sigma = -1;
    std::optional<double> p3;  // 3+1 only
};

struct SpacetimePoint {
    double x0 = 0.0;
    double r = 0.0;
    double phi = 0.0;
    double x3 = 0.0;
};

/// Gamma matrices, projectors and spin matrices for either dimension.
namespace gamma_algebra {
KernelMatrix identity(Dimension dim);
/// Contravariant gamma^nu; nu = 0..2 in 2+1, 0..3 in 3+1.
KernelMatrix gamma(int nu, Dimension dim);
KernelMatrix sigma3(Dimension dim);  // sigma^3 or Sigma^3 = diag(sigma^3, sigma^3)
KernelMatrix xi(int sigma, Dimension dim);
KernelMatrix pauli(int k);  // sigma^1..3, 2x2
double metric(int nu);      // diag(+1, -1, -1, -1)
int size(Dimension dim);
}  // namespace gamma_algebra

/// Covariant components eA_0..eA_3 (Cartesian), eA_0 = eA_3 = 0.
struct CovariantPotential {
    std::array<double, 4> eA{};
};

CovariantPotential potentials(const FieldConfiguration& cfg, const SpacetimePoint& p);
CovariantPotential potentials_cartesian(const FieldConfiguration& cfg, double x1, double x2);

/// l - (1 + sigma)/2.
inline int spin_shifted_l(int l, int sigma) { return sigma > 0 ? l - 1 : l; }

/// Radial order alpha in I_{m+alpha,m}; negative for irregular critical modes.
double radial_order(int l, int sigma, const FieldConfiguration& cfg, Extension ext);
bool is_irregular(int l, int sigma, const FieldConfiguration& cfg, Extension ext);

double omega_spectrum(const ModeIndex& mode, const FieldConfiguration& cfg, Extension ext);
double energy(double omega, std::optional<double> p3, double M, Branch branch);

/// Radial index of the opposite-spin state with the same (l, omega), or -1.
int ladder_partner_m(const ModeIndex& mode, const FieldConfiguration& cfg, Extension ext);
/// Coefficient c in Gamma.P_perp u_{m,l,s} = c sqrt(omega) u_{m'',l,-s}; +-i.
cplx ladder_coefficient(int l, const FieldConfiguration& cfg, Extension ext);

/// u_{m,l,sigma}(x_perp): time independent 2-spinor.
SpinorValue transverse_solution(int m, int l, int sigma, const FieldConfiguration& cfg, Extension ext,
                                double r, double phi);

/// +-u (2+1) or +-U (3+1) including the time (and x3) dependence.
SpinorValue squared_solution(const ModeIndex& mode, const FieldConfiguration& cfg, Extension ext,
                             const SpacetimePoint& p, Branch branch);

struct FdOptions {
    double h = 0.0;          // 0 selects h = 2e-3 * min(r, 1/sqrt(gamma))
    double h_relative = 2e-3;
};

double fd_step(const FieldConfiguration& cfg, double r, const FdOptions& fd);

/// Gamma^1 P_1 + Gamma^2 P_2 applied to a transverse spinor field by 4th-order differences.
SpinorValue apply_transverse(const std::function<SpinorValue(double, double)>& field,
                             const FieldConfiguration& cfg, double x1, double x2, double h);

/// Normalized Dirac spinor N (gamma P + M) u. In 2+1 sigma = -1 is the usual
/// choice; sigma = +1 covers the zero modes of negative eB.
SpinorValue dirac_spinor(const ModeIndex& mode, const FieldConfiguration& cfg, Extension ext,
                         const SpacetimePoint& p, Branch branch, const FdOptions& fd = {});

/// Dirac conjugate psi^dagger gamma^0.
Eigen::Matrix<cplx, 1, Eigen::Dynamic, Eigen::RowMajor, 1, 4> dirac_bar(const SpinorValue& psi, Dimension dim);

/// Relative residual of the ladder relation for the given mode.
double ladder_check(const ModeIndex& mode, const FieldConfiguration& cfg, Extension ext,
                    const SpacetimePoint& p, const FdOptions& fd = {});

/// Relative residual |(gamma P - M) psi| / |psi| of a Dirac spinor.
double dirac_residual(const ModeIndex& mode, const FieldConfiguration& cfg, Extension ext,
                      const SpacetimePoint& p, Branch branch, const FdOptions& fd = {});

}  // namespace msgf
