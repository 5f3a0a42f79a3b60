#include <gtest/gtest.h>

#include <cmath>

#include "qexciton/qalgebra.hpp"
#include "qexciton/qpolariton.hpp"

using namespace qexc;

namespace
{

SystemParams fig2_params()
{
    SystemParams p;
    p.omega = p.omega_ex = 1.75;
    p.g = 200e-6;
    p.gamma_ex = 20e-6;
    p.gamma_ph = 40e-6;
    p.alpha_sq = 9.0;
    return p;
}

} // namespace

TEST(DeformedPolariton, FrequenciesDividedByM)
{
    const auto p = fig2_params();
    for (double s : {1.0, 1.007, 1.01})
    {
        for (int n_k : {0, 1, 4})
        {
            const double M = M_factor(s, n_k);
            const auto plain = polariton_spectrum(p, 1.0, 1);
            const auto deformed = deformed_polariton_spectrum(p, 1.0, 1, s, n_k);
            for (int i = 0; i < 2; ++i)
            {
                EXPECT_NEAR(std::abs(deformed[i] - plain[i] / M), 0.0, 1e-15);
            }
        }
    }
}

TEST(DeformedPolariton, UndeformedLimit)
{
    const auto p = fig2_params();
    const auto c = hopfield_coefficients(p, 1.01, 1, Branch::lower);
    const auto d = deformed_hopfield_coefficients(p, 1.01, 1, 1.0, 3, Branch::lower);
    // Same coefficients up to the global sign convention.
    EXPECT_NEAR(std::abs(d.u + c.u), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(d.v + c.v), 0.0, 1e-14);
}

TEST(DeformedPolariton, NormalizationIsM)
{
    SystemParams p = fig2_params();
    p.gamma_ex = p.gamma_ph = 0.0;
    for (double q : {1.0, 1.015})
    {
        const double k = k_factor(q, 1);
        for (double s : {0.99, 1.007, 1.01})
        {
            const double M = M_factor(s, 1);
            for (Branch b : kBranches)
            {
                const auto c = deformed_hopfield_coefficients(p, q, 1, s, 1, b);
                EXPECT_NEAR(std::norm(c.u) * k + std::norm(c.v), M, 1e-12);
            }
        }
    }
}

TEST(DeformedPolariton, UpperBranchSignConvention)
{
    SystemParams p = fig2_params();
    p.gamma_ex = p.gamma_ph = 0.0;
    p.omega_ex = 1.751;
    const auto c = deformed_hopfield_coefficients(p, 1.0, 0, 1.01, 1, Branch::upper);
    // u carries the minus sign; (u, v) still solves the mode equation.
    EXPECT_LT(c.u.real(), 0.0);
    const cplx omega = polariton_spectrum(p, 1.0, 0)[0];
    EXPECT_LT(std::abs((p.omega_ex - omega) * c.u + p.g * c.v), 1e-15);
}

TEST(DeformedEmission, PeaksDoNotMoveWithS)
{
    const auto p = fig2_params();
    const auto grid = EnergyGrid::linspace(1.749, 1.751, 4001);
    const auto reference = deformed_emission_spectrum(p, 1.0, 1, 1.0, 1, grid);
    double last_height = 0.0;
    for (double s : {1.0, 1.007, 1.01})
    {
        const auto series = deformed_emission_spectrum(p, 1.0, 1, s, 1, grid);
        for (std::size_t i = 0; i < 2; ++i)
        {
            EXPECT_NEAR(series.branches[i].center, reference.branches[i].center, 1e-15);
        }
        const auto peaks = find_local_maxima(series.grid, series.values);
        ASSERT_EQ(peaks.size(), 2u);
        EXPECT_GT(peaks[0].height, last_height);
        last_height = peaks[0].height;
    }
}

TEST(DeformedEmission, PrefactorIsPhotonWeight)
{
    const auto p = fig2_params();
    const auto grid = EnergyGrid::linspace(1.749, 1.751, 5);
    const auto series = deformed_emission_spectrum(p, 1.0, 1, 1.01, 1, grid);
    const auto v1 = deformed_hopfield_coefficients(p, 1.0, 1, 1.01, 1, Branch::upper).v;
    const auto v2 = deformed_hopfield_coefficients(p, 1.0, 1, 1.01, 1, Branch::lower).v;
    const double total = std::norm(v1) + std::norm(v2);
    EXPECT_NEAR(series.branches[0].weight, p.alpha_sq / M_PI * total * std::norm(v1), 1e-12);
}
