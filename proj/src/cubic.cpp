#include "qexciton/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qexciton/errors.hpp"

namespace qexc
{

namespace
{

using cplx = std::complex<double>;

constexpr double kResidualTolerance = 1e-9;
constexpr double kDegenerateTolerance = 1e-12;

cplx horner(const ShiftedCubic& p, cplx z)
{
    return ((z + p.c2) * z + p.c1) * z + p.c0;
}

cplx horner_derivative(const ShiftedCubic& p, cplx z)
{
    return (3.0 * z + 2.0 * p.c2) * z + p.c1;
}

} // namespace

cplx ShiftedCubic::operator()(cplx omega) const
{
    return horner(*this, omega - shift);
}

cplx ShiftedCubic::derivative(cplx omega) const
{
    return horner_derivative(*this, omega - shift);
}

std::array<cplx, 3> ShiftedCubic::monic_coefficients() const
{
    const cplx s = shift;
    return {c2 - 3.0 * s, 3.0 * s * s - 2.0 * c2 * s + c1, -s * s * s + c2 * s * s - c1 * s + c0};
}

bool ascending_re_im(cplx a, cplx b)
{
    if (a.real() != b.real())
    {
        return a.real() < b.real();
    }
    return a.imag() < b.imag();
}

CubicRoots solve_cubic(const ShiftedCubic& cubic)
{
    const cplx c2 = cubic.c2, c1 = cubic.c1, c0 = cubic.c0;
    for (cplx c : {c2, c1, c0})
    {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        {
            throw NumericalError("cubic has non-finite coefficients");
        }
    }

    // Depressed form y^3 + p y + r = 0 with z = y - c2/3.
    const cplx offset = c2 / 3.0;
    const cplx p = c1 - c2 * offset;
    const cplx r = 2.0 * offset * offset * offset - offset * c1 + c0;

    std::array<cplx, 3> z{};
    const cplx disc = std::sqrt(0.25 * r * r + p * p * p / 27.0);
    const cplx plus = -0.5 * r + disc;
    const cplx minus = -0.5 * r - disc;
    const cplx big = std::abs(plus) >= std::abs(minus) ? plus : minus;
    if (big == 0.0)
    {
        z.fill(-offset);
    }
    else
    {
        const cplx u = std::pow(big, 1.0 / 3.0);
        const cplx rotation = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
        cplx uj = u;
        for (auto& root : z)
        {
            root = uj - p / (3.0 * uj) - offset;
            uj *= rotation;
        }
    }

    CubicRoots result;
    for (std::size_t i = 0; i < 3; ++i)
    {
        cplx root = z[i];
        double residual = std::abs(horner(cubic, root));
        const cplx slope = horner_derivative(cubic, root);
        if (residual > 0.0 && slope != 0.0)
        {
            const cplx polished = root - horner(cubic, root) / slope;
            const double polished_residual = std::abs(horner(cubic, polished));
            if (polished_residual < residual)
            {
                root = polished;
                residual = polished_residual;
            }
        }
        result.roots[i] = root + cubic.shift;
        result.residuals[i] = residual;
    }

    const double scale = std::max({std::abs(c2), std::sqrt(std::abs(c1)), std::cbrt(std::abs(c0))});
    const double bound = kResidualTolerance * scale * scale * scale;
    for (double residual : result.residuals)
    {
        if (residual > bound)
        {
            throw NumericalError("cubic root residual " + std::to_string(residual) + " exceeds bound " +
                                 std::to_string(bound));
        }
    }

    // Discriminant of the depressed cubic is -(4 p^3 + 27 r^2).
    const cplx discriminant = 4.0 * p * p * p + 27.0 * r * r;
    const double reference = 4.0 * std::pow(std::abs(p), 3) + 27.0 * std::norm(r);
    result.degenerate = std::abs(discriminant) <= kDegenerateTolerance * reference;

    // Sort roots together with their residuals.
    std::array<std::size_t, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ascending_re_im(result.roots[a], result.roots[b]); });
    CubicRoots sorted = result;
    for (std::size_t i = 0; i < 3; ++i)
    {
        sorted.roots[i] = result.roots[order[i]];
        sorted.residuals[i] = result.residuals[order[i]];
    }
    return sorted;
}

CubicRoots solve_cubic(cplx a2, cplx a1, cplx a0)
{
    return solve_cubic(ShiftedCubic{cplx{}, a2, a1, a0});
}

} // namespace qexc
