#pragma once

#include <array>

#include "qexciton/polariton.hpp"

namespace qexc
{

// Polariton operators obeying an s-deformed algebra with commutator
// M(n_k) = s/(s+1) (s^{n_k} + s^{-(n_k+1)}). Every branch frequency is the
// boson-polariton one divided by M(n_k).

// {Omega'_+, Omega'_-} with Omega'_k M(n_k) = Omega_k.
std::array<cplx, 2> deformed_polariton_spectrum(const SystemParams& p, double q, int n, double s, int n_k);

// Coefficients normalised to u^2 k + v^2 = M(n_k):
//   u = -sqrt(M (w - i g_ph - Omega' M) / (k D)),  v = sqrt(M (w_ex k - i g_ex - Omega' M) / D)
// with the relative sign fixed by the eigenproblem, as for boson polaritons.
HopfieldCoefficients deformed_hopfield_coefficients(const SystemParams& p, double q, int n, double s, int n_k,
                                                    Branch branch);

PolaritonBranch deformed_polariton_branch(const SystemParams& p, double q, int n, double s, int n_k,
                                          Branch branch, WidthMode width = WidthMode::mean_damping);

// S(w) = A |alpha|^2 (|v_1|^2 + |v_2|^2) / pi * sum_i |v_i|^2 Gamma_i / ((w - Re(Omega'_i M))^2 + Gamma_i^2)
SpectrumSeries deformed_emission_spectrum(const SystemParams& p, double q, int n, double s, int n_k,
                                          const EnergyGrid& grid, WidthMode width = WidthMode::mean_damping);

} // namespace qexc
