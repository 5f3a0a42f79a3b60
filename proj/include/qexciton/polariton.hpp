#pragma once

#include <array>
#include <complex>

#include "qexciton/spectrum.hpp"

namespace qexc
{

using cplx = std::complex<double>;

// One exciton mode coupled to one cavity mode. Energies in eV (hbar = 1).
struct SystemParams
{
    double omega = 0.0;      // cavity mode
    double omega_ex = 0.0;   // exciton
    double g = 0.0;          // exciton-photon coupling
    double gamma_ex = 0.0;   // exciton damping
    double gamma_ph = 0.0;   // photon damping
    double alpha_sq = 0.0;   // |alpha|^2 of the initial coherent cavity state
    double scale = 1.0;      // geometric factor A(r) of the detected field

    // Throws DomainError on non-finite energies, g < 0, negative dampings,
    // negative alpha_sq or non-positive scale.
    void validate() const;

    bool operator==(const SystemParams&) const = default;
};

// Branch 1 carries the "+" root of the quadratic (larger real part).
enum class Branch
{
    upper = 0,
    lower = 1,
};

inline constexpr std::array<Branch, 2> kBranches{Branch::upper, Branch::lower};

struct HopfieldCoefficients
{
    cplx u;   // exciton amplitude
    cplx v;   // photon amplitude
};

struct PolaritonBranch
{
    cplx omega_c;               // complex eigenfrequency, Im <= 0 for decaying modes
    cplx u;
    cplx v;
    double gamma_branch = 0.0;  // Lorentzian half width used in the spectrum
};

// Complex branch frequencies {Omega_+, Omega_-} for exciton occupation n:
//   Omega = [w_ex k + w - i(g_ex + g_ph)]/2 +- sqrt([w_ex k - w - i(g_ex - g_ph)]^2 + 4 g^2 k)/2
// i.e. the eigenvalues of [[w_ex k - i g_ex, g], [g k, w - i g_ph]].
std::array<cplx, 2> polariton_spectrum(const SystemParams& p, double q, int n);

// Hopfield coefficients of one branch, normalised so that u^2 k + v^2 = 1
// (|u|^2 k + |v|^2 = 1 without damping). The moduli follow the closed form
//   u = sqrt((w - i g_ph - Omega) / (k D)),  v = -sqrt((w_ex k - i g_ex - Omega) / D),
//   D = w - 2 Omega + w_ex k - i(g_ex + g_ph),
// with the relative sign of v chosen so that (u, v) solves the eigenproblem.
// Throws DegenerateBranchError at an exceptional point (D = 0).
HopfieldCoefficients hopfield_coefficients(const SystemParams& p, double q, int n, Branch branch);

PolaritonBranch polariton_branch(const SystemParams& p, double q, int n, Branch branch,
                                 WidthMode width = WidthMode::mean_damping);

// Resonance fluorescence spectrum for a coherent initial cavity state:
//   S(w) = A |alpha|^2 / pi * sum_i |v_i|^2 Gamma_i / ((w - Re Omega_i)^2 + Gamma_i^2)
// with Gamma_i = (g_ex + g_ph)/2 by default. Throws ZeroLinewidthError if a
// width vanishes.
SpectrumSeries emission_spectrum(const SystemParams& p, double q, int n, const EnergyGrid& grid,
                                 WidthMode width = WidthMode::mean_damping);

namespace detail
{

// Shared by the boson and s-deformed polariton solvers. For the pair of
// coupled modes a = w_ex k - i g_ex and b = w - i g_ph with coupling g^2 k,
// returns the detunings X = b - Omega, Y = a - Omega of the requested branch.
// The smaller of the two is recovered from X Y = g^2 k to avoid cancellation.
struct BranchDetunings
{
    cplx omega;   // branch eigenfrequency
    cplx x;       // b - Omega
    cplx y;       // a - Omega
};

BranchDetunings branch_detunings(const SystemParams& p, double k, Branch branch);

// (u, v) from the detunings, scaled by sqrt(norm) (norm = 1 for boson
// polaritons, M(n_k) for s-deformed ones).
HopfieldCoefficients coefficients_from_detunings(const BranchDetunings& det, double k, double g, double norm);

} // namespace detail

} // namespace qexc
