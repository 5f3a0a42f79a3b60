#include "qexciton/polariton.hpp"

#include <cmath>
#include <numbers>

#include "qexciton/errors.hpp"
#include "qexciton/qalgebra.hpp"

namespace qexc
{

namespace
{

constexpr cplx I{0.0, 1.0};

// Relative cancellation in the discriminant beyond which two branches are
// treated as coalesced.
constexpr double kExceptionalPointTolerance = 1e-12;

void require_finite(double value, const char* name)
{
    if (!std::isfinite(value))
    {
        throw DomainError(std::string(name) + " must be finite");
    }
}

void require_occupation(int n)
{
    if (n < 0)
    {
        throw DomainError("exciton occupation n must be non-negative");
    }
}

} // namespace

void SystemParams::validate() const
{
    require_finite(omega, "omega");
    require_finite(omega_ex, "omega_ex");
    require_finite(g, "g");
    require_finite(gamma_ex, "gamma_ex");
    require_finite(gamma_ph, "gamma_ph");
    require_finite(alpha_sq, "alpha_sq");
    require_finite(scale, "scale");
    if (g < 0.0)
    {
        throw DomainError("coupling g must be non-negative");
    }
    if (gamma_ex < 0.0 || gamma_ph < 0.0)
    {
        throw DomainError("damping constants must be non-negative");
    }
    if (alpha_sq < 0.0)
    {
        throw DomainError("alpha_sq must be non-negative");
    }
    if (!(scale > 0.0))
    {
        throw DomainError("scale A(r) must be positive");
    }
}

namespace detail
{

BranchDetunings branch_detunings(const SystemParams& p, double k, Branch branch)
{
    const cplx a = p.omega_ex * k - I * p.gamma_ex;
    const cplx b = cplx(p.omega, -p.gamma_ph);
    const double coupling_sq = p.g * p.g * k;

    const cplx half_split = 0.5 * (a - b);
    const cplx root = std::sqrt(half_split * half_split + coupling_sq);
    const double sigma = branch == Branch::upper ? 1.0 : -1.0;

    // Y = a - Omega = delta - sigma r, X = b - Omega = -delta - sigma r, X Y = g^2 k.
    cplx y = half_split - sigma * root;
    cplx x = -half_split - sigma * root;
    BranchDetunings det;
    if (std::abs(y) <= std::abs(x))
    {
        if (x != 0.0)
        {
            y = coupling_sq / x;
        }
        det.omega = a - y;
    }
    else
    {
        x = coupling_sq / y;
        det.omega = b - x;
    }
    det.x = x;
    det.y = y;

    const double reference = std::norm(half_split) + coupling_sq;
    if (std::norm(root) <= kExceptionalPointTolerance * reference)
    {
        // Both branches coincide; flagged so callers needing coefficients can refuse.
        det.x = det.y = cplx(0.0, 0.0);
        det.omega = 0.5 * (a + b);
    }
    return det;
}

HopfieldCoefficients coefficients_from_detunings(const BranchDetunings& det, double k, double g, double norm)
{
    const cplx denominator = det.x + det.y;
    if (denominator == 0.0)
    {
        throw DegenerateBranchError("exceptional point: polariton branches coalesce, coefficients undefined");
    }
    HopfieldCoefficients c;
    c.u = std::sqrt(norm * det.x / (k * denominator));
    c.v = -std::sqrt(norm * det.y / denominator);
    // The square roots fix moduli only; take the sign of v that satisfies
    // (a - Omega) u + g v = 0.
    if (std::abs(det.y * c.u + g * c.v) > std::abs(det.y * c.u - g * c.v))
    {
        c.v = -c.v;
    }
    return c;
}

} // namespace detail

std::array<cplx, 2> polariton_spectrum(const SystemParams& p, double q, int n)
{
    p.validate();
    require_occupation(n);
    const double k = k_factor(q, n);
    return {detail::branch_detunings(p, k, Branch::upper).omega,
            detail::branch_detunings(p, k, Branch::lower).omega};
}

HopfieldCoefficients hopfield_coefficients(const SystemParams& p, double q, int n, Branch branch)
{
    p.validate();
    require_occupation(n);
    const double k = k_factor(q, n);
    return detail::coefficients_from_detunings(detail::branch_detunings(p, k, branch), k, p.g, 1.0);
}

PolaritonBranch polariton_branch(const SystemParams& p, double q, int n, Branch branch, WidthMode width)
{
    p.validate();
    require_occupation(n);
    const double k = k_factor(q, n);
    const auto det = detail::branch_detunings(p, k, branch);
    const auto c = detail::coefficients_from_detunings(det, k, p.g, 1.0);
    const double gamma = width == WidthMode::mean_damping ? 0.5 * (p.gamma_ex + p.gamma_ph) : -det.omega.imag();
    return PolaritonBranch{det.omega, c.u, c.v, gamma};
}

SpectrumSeries emission_spectrum(const SystemParams& p, double q, int n, const EnergyGrid& grid, WidthMode width)
{
    const double prefactor = p.scale * p.alpha_sq / std::numbers::pi;
    std::vector<LorentzianBranch> branches;
    for (Branch b : kBranches)
    {
        const auto pol = polariton_branch(p, q, n, b, width);
        branches.push_back({pol.omega_c.real(), pol.gamma_branch, prefactor * std::norm(pol.v)});
    }
    return sum_lorentzians(grid, std::move(branches));
}

} // namespace qexc
