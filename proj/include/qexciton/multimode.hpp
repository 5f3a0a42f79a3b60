#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include "qexciton/cubic.hpp"
#include "qexciton/spectrum.hpp"

namespace qexc
{

// One cavity mode coupled with a common constant g to two q-deformed exciton
// modes. Energies in eV.
struct TwoModeParams
{
    double omega = 0.0;
    double omega_ex1 = 0.0;
    double omega_ex2 = 0.0;
    double g = 0.0;
    double gamma_ex1 = 0.0;
    double gamma_ex2 = 0.0;
    double gamma_ph = 0.0;
    double q1 = 1.0;
    double q2 = 1.0;
    int n1 = 0;
    int n2 = 0;
    double alpha_sq = 0.0;
    double scale = 1.0;

    void validate() const;

    bool operator==(const TwoModeParams&) const = default;
};

// Mode matrix acting on (u, x, v):
//   [[c, 0, g], [0, d, g], [g k1, g k2, w - i g_ph]],
//   c = w_ex1 k(n1) - i g_ex1,  d = w_ex2 k(n2) - i g_ex2.
std::array<std::array<std::complex<double>, 3>, 3> three_mode_matrix(const TwoModeParams& p);

// det(Omega - M) as a monic cubic, expanded around the mean diagonal entry:
//   (Omega - c)(Omega - d)(Omega - w + i g_ph) - g^2 k2 (Omega - c) - g^2 k1 (Omega - d).
ShiftedCubic characteristic_cubic(const TwoModeParams& p);

// The three branch frequencies, ascending by (Re, Im).
CubicRoots three_mode_roots(const TwoModeParams& p);

enum class CoefficientForm
{
    eigenvector,   // null vector of (M - Omega), normalised u^2 k1 + x^2 k2 + v^2 = 1
    closed_form,   // u = g P / A, x = g^3 k1 / A, v = -(c - Omega) P / A
};

struct ThreeModeCoefficients
{
    std::complex<double> u;   // exciton 1
    std::complex<double> x;   // exciton 2
    std::complex<double> v;   // photon
};

// Coefficients of branch index 0..2 (in root order). Both forms share the
// normalisation u^2 k1 + x^2 k2 + v^2 = 1 and agree up to an overall sign.
// The eigenvector form fixes the sign so that its largest component has a
// positive real part. Throws DegenerateBranchError when A = 0 or the closed
// form drowns in rounding (g = 0), or when no normalisable eigenvector exists.
ThreeModeCoefficients three_mode_coefficients(const TwoModeParams& p, std::size_t branch,
                                              CoefficientForm form = CoefficientForm::eigenvector);

struct ThreeModeBranch
{
    std::complex<double> omega_c;
    ThreeModeCoefficients coefficients;
    double gamma_branch = 0.0;
};

// Width default is Gamma_k = -Im(Omega_k); mean_damping uses
// ((g_ex1 + g_ex2)/2 + g_ph)/2 for all three branches.
std::array<ThreeModeBranch, 3> three_mode_branches(const TwoModeParams& p,
                                                   WidthMode width = WidthMode::branch_imag,
                                                   CoefficientForm form = CoefficientForm::eigenvector);

// S(w) = |alpha|^2 A / pi * sum_k |v_k|^2 Gamma_k / (Gamma_k^2 + (w - Re Omega_k)^2)
SpectrumSeries two_exciton_spectrum(const TwoModeParams& p, const EnergyGrid& grid,
                                    WidthMode width = WidthMode::branch_imag,
                                    CoefficientForm form = CoefficientForm::eigenvector);

} // namespace qexc
