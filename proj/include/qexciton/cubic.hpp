#pragma once

#include <array>
#include <complex>

namespace qexc
{

// Monic cubic in Omega written around a shift s:
//   P(Omega) = z^3 + c2 z^2 + c1 z + c0,  z = Omega - s.
// Keeping the expansion point near the roots keeps the coefficients on the
// scale of the root spread rather than of the absolute energies.
struct ShiftedCubic
{
    std::complex<double> shift{};
    std::complex<double> c2{};
    std::complex<double> c1{};
    std::complex<double> c0{};

    std::complex<double> operator()(std::complex<double> omega) const;
    std::complex<double> derivative(std::complex<double> omega) const;

    // Coefficients {a2, a1, a0} of the same polynomial expanded around 0.
    std::array<std::complex<double>, 3> monic_coefficients() const;
};

struct CubicRoots
{
    std::array<std::complex<double>, 3> roots{};      // ascending by (Re, Im)
    std::array<double, 3> residuals{};                // |P(root)|
    bool degenerate = false;                          // discriminant below 1e-12 relative
};

// Cardano with a cancellation-free choice of cube root, one Newton step per
// root (kept only if it lowers the residual), then ordering by (Re, Im).
// Throws NumericalError if a residual exceeds 1e-9 R^3 afterwards, where R is
// the root-scale bound max(|c2|, |c1|^(1/2), |c0|^(1/3)) of the shifted cubic.
CubicRoots solve_cubic(const ShiftedCubic& cubic);

// Convenience overload for Omega^3 + a2 Omega^2 + a1 Omega + a0.
CubicRoots solve_cubic(std::complex<double> a2, std::complex<double> a1, std::complex<double> a0);

// Strict weak ordering used for every root and eigenvalue list in the library.
bool ascending_re_im(std::complex<double> a, std::complex<double> b);

} // namespace qexc
