#include "qexciton/multimode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "qexciton/errors.hpp"
#include "qexciton/qalgebra.hpp"

namespace qexc
{

namespace
{

using cplx = std::complex<double>;
using Vec3 = std::array<cplx, 3>;

constexpr cplx I{0.0, 1.0};
constexpr double kDegenerateTolerance = 1e-12;

struct ModeEntries
{
    double k1;
    double k2;
    cplx c;   // exciton 1 diagonal
    cplx d;   // exciton 2 diagonal
    cplx b;   // photon diagonal
};

ModeEntries mode_entries(const TwoModeParams& p)
{
    p.validate();
    const double k1 = k_factor(p.q1, p.n1);
    const double k2 = k_factor(p.q2, p.n2);
    return {k1, k2, p.omega_ex1 * k1 - I * p.gamma_ex1, p.omega_ex2 * k2 - I * p.gamma_ex2,
            cplx(p.omega, -p.gamma_ph)};
}

Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm_sq(const Vec3& a)
{
    return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
}

ThreeModeCoefficients eigenvector_coefficients(const ModeEntries& e, double g, cplx omega)
{
    const Vec3 r0{e.c - omega, 0.0, g};
    const Vec3 r1{0.0, e.d - omega, g};
    const Vec3 r2{g * e.k1, g * e.k2, e.b - omega};

    // Null vector of a rank-2 3x3 matrix: cross product of the two rows that
    // are furthest from parallel.
    const std::array<std::pair<const Vec3*, const Vec3*>, 3> pairs{{{&r0, &r1}, {&r1, &r2}, {&r0, &r2}}};
    Vec3 best{};
    double best_sine = -1.0;
    for (const auto& [a, b] : pairs)
    {
        const Vec3 candidate = cross(*a, *b);
        const double lengths = norm_sq(*a) * norm_sq(*b);
        const double sine = lengths > 0.0 ? norm_sq(candidate) / lengths : 0.0;
        if (sine > best_sine)
        {
            best = candidate;
            best_sine = sine;
        }
    }
    if (!(best_sine > kDegenerateTolerance * kDegenerateTolerance))
    {
        throw DegenerateBranchError("branch eigenspace is not one-dimensional");
    }
    const double size = norm_sq(best);

    const cplx bilinear = best[0] * best[0] * e.k1 + best[1] * best[1] * e.k2 + best[2] * best[2];
    if (!(std::abs(bilinear) > kDegenerateTolerance * size))
    {
        throw DegenerateBranchError("branch eigenvector is self-orthogonal (exceptional point)");
    }
    const cplx scale = std::sqrt(bilinear);
    for (auto& component : best)
    {
        component /= scale;
    }

    std::size_t largest = 0;
    for (std::size_t i = 1; i < 3; ++i)
    {
        if (std::abs(best[i]) > std::abs(best[largest]))
        {
            largest = i;
        }
    }
    const cplx lead = best[largest];
    if (lead.real() < 0.0 || (lead.real() == 0.0 && lead.imag() < 0.0))
    {
        for (auto& component : best)
        {
            component = -component;
        }
    }
    return {best[0], best[1], best[2]};
}

ThreeModeCoefficients closed_form_coefficients(const ModeEntries& e, double g, cplx omega)
{
    const cplx c_det = e.c - omega;
    const cplx p = (e.d - omega) * (e.b - omega) - g * g * e.k2;
    const double g3 = g * g * g;
    const Vec3 raw{g * p, cplx(g3 * e.k1), -c_det * p};

    // Each component is a product of three energy differences, each known to
    // about eps |omega|.
    const double scale = std::max({std::abs(c_det), std::abs(e.d - omega), std::abs(e.b - omega),
                                   g * std::sqrt(std::abs(e.k1)), g * std::sqrt(std::abs(e.k2))});
    const double noise = 1e3 * std::numeric_limits<double>::epsilon() * std::abs(omega) * scale * scale;
    const double size = norm_sq(raw);
    if (!(std::sqrt(size) > noise))
    {
        throw DegenerateBranchError("closed-form coefficients vanish to rounding for this branch");
    }
    const cplx a_sq = raw[0] * raw[0] * e.k1 + raw[1] * raw[1] * e.k2 + raw[2] * raw[2];
    if (!(std::abs(a_sq) > kDegenerateTolerance * size))
    {
        throw DegenerateBranchError("normaliser A vanishes for this branch");
    }
    const cplx a = std::sqrt(a_sq);
    return {raw[0] / a, raw[1] / a, raw[2] / a};
}

} // namespace

void TwoModeParams::validate() const
{
    for (double value : {omega, omega_ex1, omega_ex2, g, gamma_ex1, gamma_ex2, gamma_ph, alpha_sq, scale})
    {
        if (!std::isfinite(value))
        {
            throw DomainError("two-mode parameters must be finite");
        }
    }
    if (g < 0.0)
    {
        throw DomainError("coupling g must be non-negative");
    }
    if (gamma_ex1 < 0.0 || gamma_ex2 < 0.0 || gamma_ph < 0.0)
    {
        throw DomainError("damping constants must be non-negative");
    }
    if (!(q1 > 0.0) || !(q2 > 0.0))
    {
        throw DomainError("q1 and q2 must be positive");
    }
    if (n1 < 0 || n2 < 0)
    {
        throw DomainError("occupations n1 and n2 must be non-negative");
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

std::array<std::array<cplx, 3>, 3> three_mode_matrix(const TwoModeParams& p)
{
    const auto e = mode_entries(p);
    return {{{e.c, 0.0, p.g}, {0.0, e.d, p.g}, {p.g * e.k1, p.g * e.k2, e.b}}};
}

ShiftedCubic characteristic_cubic(const TwoModeParams& p)
{
    const auto e = mode_entries(p);
    const cplx shift = (e.c + e.d + e.b) / 3.0;
    const cplx c = e.c - shift;
    const cplx d = e.d - shift;
    const cplx b = e.b - shift;
    const double g_sq = p.g * p.g;
    ShiftedCubic cubic;
    cubic.shift = shift;
    cubic.c2 = -(c + d + b);
    cubic.c1 = c * d + c * b + d * b - g_sq * (e.k1 + e.k2);
    cubic.c0 = -c * d * b + g_sq * (e.k2 * c + e.k1 * d);
    return cubic;
}

CubicRoots three_mode_roots(const TwoModeParams& p)
{
    return solve_cubic(characteristic_cubic(p));
}

ThreeModeCoefficients three_mode_coefficients(const TwoModeParams& p, std::size_t branch, CoefficientForm form)
{
    if (branch > 2)
    {
        throw DomainError("two-mode branch index must be 0, 1 or 2");
    }
    const auto e = mode_entries(p);
    const cplx omega = three_mode_roots(p).roots[branch];
    return form == CoefficientForm::closed_form ? closed_form_coefficients(e, p.g, omega)
                                          : eigenvector_coefficients(e, p.g, omega);
}

std::array<ThreeModeBranch, 3> three_mode_branches(const TwoModeParams& p, WidthMode width, CoefficientForm form)
{
    const auto e = mode_entries(p);
    const auto roots = three_mode_roots(p);
    std::array<ThreeModeBranch, 3> branches;
    for (std::size_t i = 0; i < 3; ++i)
    {
        const cplx omega = roots.roots[i];
        branches[i].omega_c = omega;
        branches[i].coefficients = form == CoefficientForm::closed_form ? closed_form_coefficients(e, p.g, omega)
                                                                  : eigenvector_coefficients(e, p.g, omega);
        branches[i].gamma_branch = width == WidthMode::branch_imag
                                       ? -omega.imag()
                                       : 0.5 * (0.5 * (p.gamma_ex1 + p.gamma_ex2) + p.gamma_ph);
    }
    return branches;
}

SpectrumSeries two_exciton_spectrum(const TwoModeParams& p, const EnergyGrid& grid, WidthMode width,
                                    CoefficientForm form)
{
    const double prefactor = p.alpha_sq * p.scale / std::numbers::pi;
    std::vector<LorentzianBranch> lines;
    for (const auto& branch : three_mode_branches(p, width, form))
    {
        lines.push_back({branch.omega_c.real(), branch.gamma_branch, prefactor * std::norm(branch.coefficients.v)});
    }
    return sum_lorentzians(grid, std::move(lines));
}

} // namespace qexc
