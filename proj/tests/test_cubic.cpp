#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "qexciton/cubic.hpp"
#include "qexciton/errors.hpp"
#include "qexciton/oracle.hpp"

using namespace qexc;
using cplx = std::complex<double>;

namespace
{

std::array<cplx, 3> monic_from_roots(cplx a, cplx b, cplx c)
{
    return {-(a + b + c), a * b + a * c + b * c, -a * b * c};
}

} // namespace

TEST(Cubic, KnownRealRoots)
{
    const auto c = monic_from_roots(1.0, 2.0, 3.0);
    const auto r = solve_cubic(c[0], c[1], c[2]);
    EXPECT_NEAR(std::abs(r.roots[0] - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(r.roots[1] - 2.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(r.roots[2] - 3.0), 0.0, 1e-14);
    EXPECT_FALSE(r.degenerate);
}

TEST(Cubic, ComplexRootsSortedByRealThenImag)
{
    const cplx a{1.0, 0.5}, b{1.0, -0.5}, c{-2.0, 0.1};
    const auto m = monic_from_roots(a, b, c);
    const auto r = solve_cubic(m[0], m[1], m[2]);
    EXPECT_NEAR(std::abs(r.roots[0] - c), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(r.roots[1] - b), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(r.roots[2] - a), 0.0, 1e-13);
}

TEST(Cubic, TripleRootIsDegenerate)
{
    const auto m = monic_from_roots(0.5, 0.5, 0.5);
    const auto r = solve_cubic(m[0], m[1], m[2]);
    EXPECT_TRUE(r.degenerate);
    for (const auto& root : r.roots)
    {
        EXPECT_NEAR(std::abs(root - 0.5), 0.0, 1e-5);
    }
}

TEST(Cubic, ZeroPolynomial)
{
    const auto r = solve_cubic(0.0, 0.0, 0.0);
    for (const auto& root : r.roots)
    {
        EXPECT_EQ(root, cplx(0.0));
    }
}

TEST(Cubic, ShiftedMatchesUnshifted)
{
    const cplx s{1.75, -1e-4};
    const auto m = monic_from_roots(cplx(-2e-4, 1e-5), cplx(3e-4, 0.0), cplx(0.02, -2e-5));
    const ShiftedCubic cubic{s, m[0], m[1], m[2]};
    const auto r = solve_cubic(cubic);
    EXPECT_NEAR(std::abs(r.roots[0] - (s + cplx(-2e-4, 1e-5))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(r.roots[2] - (s + cplx(0.02, -2e-5))), 0.0, 1e-15);
    const auto a = cubic.monic_coefficients();
    for (const auto& root : r.roots)
    {
        const cplx direct = ((root + a[0]) * root + a[1]) * root + a[2];
        EXPECT_LT(std::abs(direct), 1e-12);
        EXPECT_LT(std::abs(cubic(root)), 1e-18);
    }
}

TEST(Cubic, NonFiniteRejected)
{
    EXPECT_THROW(solve_cubic(cplx(NAN, 0.0), 1.0, 1.0), NumericalError);
}

TEST(CubicProperty, MatchesCompanionEigenvalues)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 500; ++trial)
    {
        const cplx a2{u(rng), u(rng)}, a1{u(rng), u(rng)}, a0{u(rng), u(rng)};
        ComplexMatrix c = ComplexMatrix::Zero(3, 3);
        c(1, 0) = 1.0;
        c(2, 1) = 1.0;
        c(0, 2) = -a0;
        c(1, 2) = -a1;
        c(2, 2) = -a2;
        const auto eig = eig_small_complex(c).values;
        const auto r = solve_cubic(a2, a1, a0);
        if (r.degenerate)
        {
            continue;
        }
        for (std::size_t i = 0; i < 3; ++i)
        {
            EXPECT_NEAR(std::abs(r.roots[i] - eig[i]), 0.0, 1e-10) << trial;
        }
    }
}

TEST(CubicProperty, VietaIdentities)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 500; ++trial)
    {
        const cplx a2{u(rng), u(rng)}, a1{u(rng), u(rng)}, a0{u(rng), u(rng)};
        const auto r = solve_cubic(a2, a1, a0);
        const auto& z = r.roots;
        EXPECT_LT(std::abs(z[0] + z[1] + z[2] + a2), 1e-12 * (1 + std::abs(a2)));
        EXPECT_LT(std::abs(z[0] * z[1] + z[0] * z[2] + z[1] * z[2] - a1), 1e-11 * (1 + std::abs(a1)));
        EXPECT_LT(std::abs(z[0] * z[1] * z[2] + a0), 1e-11 * (1 + std::abs(a0)));
        EXPECT_TRUE(std::is_sorted(z.begin(), z.end(), ascending_re_im));
    }
}
