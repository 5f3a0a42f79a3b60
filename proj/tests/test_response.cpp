#include <gtest/gtest.h>

#include <cmath>

#include "qexciton/errors.hpp"
#include "qexciton/qalgebra.hpp"
#include "qexciton/response.hpp"

using namespace qexc;
using cplx = std::complex<double>;

namespace
{

ResponseParams absorption(double q, double eta = 50e-6)
{
    ResponseParams p;
    p.omega = 1.5;
    p.omega_ex = 1.574;
    p.g = 200e-6;
    p.q = q;
    p.eta = eta;
    p.grid = EnergyGrid::linspace(1.574 - 20 * eta, 1.574 + 20 * eta, 4001);
    return p;
}

double max_relative(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    double diff = 0.0, size = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        diff = std::max(diff, std::abs(a[i] - b[i]));
        size = std::max(size, std::abs(a[i]));
    }
    return diff / size;
}

} // namespace

TEST(LFunction, HighPrecisionReference)
{
    const cplx L = L_function(1.01, 2, 1.5, 1.574, 50e-6);
    EXPECT_NEAR(L.real(), 715.39906142002029425, 1e-9);
    EXPECT_NEAR(L.imag(), 0.95674745278944223668, 1e-11);
}

TEST(LFunction, VanishesAtZero)
{
    EXPECT_EQ(L_function(1.02, 0, 1.5, 1.574, 50e-6), cplx(0.0));
}

TEST(LFunction, DomainChecks)
{
    EXPECT_THROW(L_function(1.0, 1, 1.5, 1.574, 0.0), DomainError);
    EXPECT_THROW(L_function(1.0, -1, 1.5, 1.574, 1e-5), DomainError);
}

TEST(Resonance, SignConvention)
{
    // Im R > 0 at the line, a Lorentzian of half width eta.
    const cplx at = resonance(1.574, 1.574, 1e-4);
    EXPECT_NEAR(at.real(), 0.0, 1e-12);
    EXPECT_NEAR(at.imag(), 1e4, 1e-6);
    EXPECT_NEAR(std::abs(resonance(1.574, 1.574 + 1e-4, 1e-4)), 1e4 / std::sqrt(2.0), 1e-6);
}

TEST(DipoleTerms, StructurePerPhotonNumber)
{
    const auto p = absorption(1.01);
    for (int n : {0, 1, 5})
    {
        const auto terms = dipole_density_terms(p, n);
        ASSERT_EQ(terms.size(), 6u);
        int linear = 0, cubic = 0;
        for (const auto& t : terms)
        {
            EXPECT_EQ(static_cast<int>(t.frequencies.size()), t.order);
            linear += t.order == 1;
            cubic += t.order == 3;
        }
        EXPECT_EQ(linear, 2);
        EXPECT_EQ(cubic, 4);
    }
    EXPECT_THROW(dipole_density_terms(p, -1), DomainError);
}

TEST(DipoleTerms, AmplitudesScaleWithFieldOrder)
{
    auto p = absorption(1.0);
    const auto base = dipole_density_terms(p, 2);
    p.dipole = 2.0;
    const auto doubled = dipole_density_terms(p, 2);
    for (std::size_t i = 0; i < base.size(); ++i)
    {
        const double factor = std::pow(2.0, base[i].order);
        EXPECT_NEAR(std::abs(doubled[i].amplitude - factor * base[i].amplitude), 0.0,
                    1e-14 * std::abs(doubled[i].amplitude));
    }
}

TEST(Response, QuadraticOrderVanishes)
{
    for (double q : {0.99, 1.0, 1.01})
    {
        for (const auto& value : quadratic_response(absorption(q)))
        {
            EXPECT_EQ(value, cplx(0.0));
        }
    }
}

TEST(Response, NormalizedPeakAtUndeformedLine)
{
    const auto s = linear_susceptibility(absorption(1.0));
    const std::size_t centre = s.grid.size() / 2;
    EXPECT_NEAR(s.grid[centre], 1.574, 1e-15);
    EXPECT_NEAR(std::abs(s.chi1[centre]), 1.0, 1e-12);
    EXPECT_TRUE(s.chi3.empty());
    EXPECT_TRUE(s.alpha3.empty());
}

TEST(Response, LinearLineWidthIsTwoEta)
{
    for (double eta : {50e-6, 25e-6})
    {
        const auto s = linear_susceptibility(absorption(1.0, eta));
        const auto peaks = find_local_maxima(s.grid, s.alpha1);
        ASSERT_EQ(peaks.size(), 1u);
        EXPECT_NEAR(full_width_half_maximum(s.grid, s.alpha1, peaks[0].index) / (2 * eta), 1.0, 0.02);
    }
}

TEST(ResponseProperty, InversionSymmetry)
{
    for (double q : {0.98, 0.995, 1.01})
    {
        auto p = absorption(q);
        auto inverse = absorption(1.0 / q);
        const auto a = susceptibility(p);
        const auto b = susceptibility(inverse);
        EXPECT_LT(max_relative(a.chi1, b.chi1), 1e-12);
        EXPECT_LT(max_relative(a.chi3, b.chi3), 1e-12);
    }
}

TEST(ResponseProperty, TruncationStable)
{
    for (double q : {0.99, 1.0, 1.01})
    {
        auto p = absorption(q);
        const auto automatic = susceptibility(p);
        EXPECT_LE(automatic.truncation_error, kTruncationBound);
        p.n_max = automatic.terms_used - 1;
        const auto a = susceptibility(p);
        p.n_max = automatic.terms_used + 4;
        const auto b = susceptibility(p);
        EXPECT_LT(max_relative(a.chi1, b.chi1), 1e-10);
        EXPECT_LT(max_relative(a.chi3, b.chi3), 1e-10);
    }
}

TEST(Response, ShortSeriesRejected)
{
    // Strong coupling: the g^2n weights fall slowly and two terms are not enough.
    auto p = absorption(1.0);
    p.g = 0.05;
    p.n_max = 1;
    EXPECT_THROW(susceptibility(p), TruncationError);
    p.n_max.reset();
    EXPECT_NO_THROW(susceptibility(p));
    p.n_max = 1;
    EXPECT_THROW(susceptibility(p), TruncationError);
}

TEST(Response, StrongCouplingRejected)
{
    auto p = absorption(1.0);
    p.g = 2.0;
    EXPECT_THROW(susceptibility(p), DomainError);
}

TEST(ResponseParams, Validation)
{
    auto p = absorption(1.0);
    EXPECT_NO_THROW(p.validate());
    p.eta = 0.0;
    EXPECT_THROW(p.validate(), DomainError);
    p = absorption(1.0);
    p.n_max = 0;
    EXPECT_THROW(p.validate(), DomainError);
    p = absorption(1.0);
    p.q = -1.0;
    EXPECT_THROW(p.validate(), DomainError);
}
