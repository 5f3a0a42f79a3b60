#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "qexciton/spectrum.hpp"

namespace qexc
{

// Driven q-deformed exciton in a lossless cavity, probed by a monochromatic
// field. Energies in eV.
struct ResponseParams
{
    double omega = 0.0;       // cavity mode
    double omega_ex = 0.0;    // exciton
    double g = 0.0;           // exciton-photon coupling
    double q = 1.0;
    double dipole = 1.0;      // |d_vc . E0|, arbitrary units
    double eta = 50e-6;       // adiabatic switching / line broadening
    std::optional<int> n_max; // series truncation; empty selects it automatically
    EnergyGrid grid;          // probe energies
    bool normalize = true;    // divide by the q = 1 peak modulus (see below)

    // Throws DomainError unless eta > 0, n_max >= 1, q > 0, omega_ex > 0,
    // 0 <= g < omega_ex (the n-series diverges otherwise).
    void validate() const;

    bool operator==(const ResponseParams&) const = default;
};

// Largest relative tail of the n-series that is accepted.
inline constexpr double kTruncationBound = 1e-10;

struct SusceptibilitySeries
{
    std::vector<double> grid;
    std::vector<std::complex<double>> chi1;
    std::vector<double> alpha1;                 // Im chi1
    std::vector<std::complex<double>> chi3;
    std::vector<double> alpha3;                 // Im chi3, output at 3 omega
    int terms_used = 0;                         // n = 0 .. terms_used - 1
    double truncation_error = 0.0;              // estimated relative tail
};

// L(n) = [n]_q [ 1/((w - w_ex k(n-1) + i eta)(w - w_ex k(n+1) + i eta))
//              + 1/((w - w_ex k(n+2) + i eta)(w - w_ex k(n) + i eta)) ]
// with w the cavity frequency; the time-dependent phases are taken at t = t0.
std::complex<double> L_function(double q, int n, double omega, double omega_ex, double eta);

// One term of the dipole density: amplitude * prod_j R(frequencies[j], probe),
// R(W, w) = 1 / (W - w - i eta). The number of frequencies is the order in
// the driving field.
struct DipoleTerm
{
    int order = 0;
    std::complex<double> amplitude;
    std::vector<double> frequencies;
};

// All terms of the dipole-density expansion carried by photon number n,
// amplitudes including the weight g^{2n}/n! h_1(n)! sqrt(f_q(n)!) e^{-g^2 L(n)/2}
// and powers of the dipole. Two linear and four cubic terms per n.
std::vector<DipoleTerm> dipole_density_terms(const ResponseParams& p, int n);

std::complex<double> resonance(double transition, double probe, double eta);

// Sum of the terms of the given field order at every probe energy, in raw
// (unnormalised) units, with n = 0 .. n_terms - 1.
std::vector<std::complex<double>> response_of_order(const ResponseParams& p, int order, int n_terms);

// Second order in the field; the expansion has no such terms.
std::vector<std::complex<double>> quadratic_response(const ResponseParams& p);

// Linear and third-order parts. With normalize set, chi1 is divided by
// |chi1| at w = w_ex for q = 1 and unit dipole (the peak of alpha1 there),
// chi3 likewise by its own q = 1 value at w = w_ex. Throws TruncationError if
// the tail estimate exceeds kTruncationBound.
SusceptibilitySeries susceptibility(const ResponseParams& p);
SusceptibilitySeries linear_susceptibility(const ResponseParams& p);
SusceptibilitySeries third_order_absorption(const ResponseParams& p);

} // namespace qexc
