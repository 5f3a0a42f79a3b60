#include "qexciton/qpolariton.hpp"

#include <numbers>

#include "qexciton/errors.hpp"
#include "qexciton/qalgebra.hpp"

namespace qexc
{

namespace
{

struct Deformation
{
    double k;
    double m;
};

Deformation evaluate(const SystemParams& p, double q, int n, double s, int n_k)
{
    p.validate();
    DeformationParams{q, s, n, n_k}.validate();
    return {k_factor(q, n), M_factor(s, n_k)};
}

} // namespace

std::array<cplx, 2> deformed_polariton_spectrum(const SystemParams& p, double q, int n, double s, int n_k)
{
    const auto d = evaluate(p, q, n, s, n_k);
    return {detail::branch_detunings(p, d.k, Branch::upper).omega / d.m,
            detail::branch_detunings(p, d.k, Branch::lower).omega / d.m};
}

HopfieldCoefficients deformed_hopfield_coefficients(const SystemParams& p, double q, int n, double s, int n_k,
                                                    Branch branch)
{
    const auto d = evaluate(p, q, n, s, n_k);
    auto c = detail::coefficients_from_detunings(detail::branch_detunings(p, d.k, branch), d.k, p.g, d.m);
    // Overall sign convention of the deformed coefficients: u carries the minus.
    return {-c.u, -c.v};
}

PolaritonBranch deformed_polariton_branch(const SystemParams& p, double q, int n, double s, int n_k, Branch branch,
                                          WidthMode width)
{
    const auto d = evaluate(p, q, n, s, n_k);
    const auto det = detail::branch_detunings(p, d.k, branch);
    const auto c = detail::coefficients_from_detunings(det, d.k, p.g, d.m);
    const cplx omega_prime = det.omega / d.m;
    // The spectrum is centred on Omega' M = Omega; its damping is that of Omega.
    const double gamma = width == WidthMode::mean_damping ? 0.5 * (p.gamma_ex + p.gamma_ph) : -det.omega.imag();
    return PolaritonBranch{omega_prime, -c.u, -c.v, gamma};
}

SpectrumSeries deformed_emission_spectrum(const SystemParams& p, double q, int n, double s, int n_k,
                                          const EnergyGrid& grid, WidthMode width)
{
    const double m = M_factor(s, n_k);
    std::array<PolaritonBranch, 2> pol{deformed_polariton_branch(p, q, n, s, n_k, Branch::upper, width),
                                       deformed_polariton_branch(p, q, n, s, n_k, Branch::lower, width)};
    const double photon_content = std::norm(pol[0].v) + std::norm(pol[1].v);
    const double prefactor = p.scale * p.alpha_sq * photon_content / std::numbers::pi;
    std::vector<LorentzianBranch> branches;
    for (const auto& b : pol)
    {
        branches.push_back({(b.omega_c * m).real(), b.gamma_branch, prefactor * std::norm(b.v)});
    }
    return sum_lorentzians(grid, std::move(branches));
}

} // namespace qexc
