#pragma once

#include <vector>

#include "msgf/types.hpp"

namespace msgf::specfun {

/// Largest |z| accepted by the Bessel routines.
inline constexpr double kBesselZMax = 1.0e5;

struct LaguerreIndex {
    int m = 0;
    double alpha = 0.0;
};

double gamma_fn(double x);
double log_gamma(double x);

/// L_m^alpha(x) by the three-term recurrence in m.
double laguerre_poly(int m, double alpha, double x);

/// I_{m+alpha,m}(x) = sqrt(m!/Gamma(m+alpha+1)) e^{-x/2} x^{alpha/2} L_m^alpha(x).
double laguerre_fn(LaguerreIndex idx, double x);

/// I_{k+alpha,k}(x) for k = 0..m_max in one upward sweep.
std::vector<double> laguerre_fn_sequence(int m_max, double alpha, double x);

/// J_nu(z) on the principal branch, nu > -1.
cplx bessel_j(double nu, cplx z);

/// J_nu(z) e^{-|Im z|}; never overflows inside the supported window.
cplx bessel_j_scaled(double nu, cplx z);

/// J_nu on the sheet arg z + 2 pi k: e^{2 pi i k nu} J_nu(z).
cplx bessel_j_sheet(double nu, cplx z, int sheet);

struct BesselValue {
    cplx value;
    bool near_branch_cut = false;  // arg z within 1e-12 of +-pi
};

BesselValue bessel_j_flagged(double nu, cplx z);

/// Derivative by the recurrence (J_{nu-1} - J_{nu+1})/2; needs nu > 0 or nu = 0.
cplx bessel_j_derivative(double nu, cplx z);

}  // namespace msgf::specfun
