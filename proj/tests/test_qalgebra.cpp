#include <gtest/gtest.h>

#include <cmath>

#include "qexciton/errors.hpp"
#include "qexciton/qalgebra.hpp"

using namespace qexc;

// Reference values below come from tests/oracles/frozen_values.py (50-digit mpmath).

TEST(KFactor, HighPrecisionReference)
{
    EXPECT_NEAR(k_factor(1.015, 100), 2.3444941832464966093, 1e-13);
}

TEST(KFactor, UndeformedIsOne)
{
    for (int n : {-1, 0, 1, 7, 100, 1000})
    {
        EXPECT_DOUBLE_EQ(k_factor(1.0, n), 1.0) << n;
    }
}

TEST(KFactor, LowestLevelsAreOne)
{
    for (double q : {0.5, 0.9, 1.1, 2.0})
    {
        EXPECT_NEAR(k_factor(q, 0), 1.0, 1e-15);
        EXPECT_NEAR(k_factor(q, -1), 1.0, 1e-15);
    }
}

TEST(KFactor, RejectsNonPositiveQ)
{
    EXPECT_THROW(k_factor(0.0, 1), DomainError);
    EXPECT_THROW(k_factor(-1.0, 1), DomainError);
}

TEST(KFactor, MatchesPowerForm)
{
    for (double q : {0.8, 0.97, 1.02, 1.3})
    {
        for (int n : {0, 1, 2, 5, 20})
        {
            const double direct = q / (q + 1.0) * (std::pow(q, n) + std::pow(q, -(n + 1)));
            EXPECT_NEAR(k_factor(q, n), direct, 1e-13 * direct) << q << " " << n;
        }
    }
}

TEST(KFactorProperty, CommutatorOfNumberEigenvalues)
{
    for (double q = 0.8; q <= 1.25; q += 0.0173)
    {
        for (int n = 0; n <= 60; n += 3)
        {
            const double k = k_factor(q, n);
            EXPECT_NEAR(k, q_bracket(q, n + 1) - q_bracket(q, n), 1e-11 * k) << q << " " << n;
        }
    }
}

TEST(KFactorProperty, InvariantUnderInversion)
{
    for (double q = 0.8; q <= 1.25; q += 0.0211)
    {
        for (int n = 0; n <= 100; n += 7)
        {
            const double k = k_factor(q, n);
            EXPECT_NEAR(k_factor(1.0 / q, n), k, 1e-13 * k);
        }
    }
}

TEST(KFactorProperty, AtLeastOneAndGrowing)
{
    for (double q : {0.9, 0.99, 1.01, 1.1})
    {
        double previous = k_factor(q, 0);
        EXPECT_GE(previous, 1.0 - 1e-15);
        for (int n = 1; n < 50; ++n)
        {
            const double k = k_factor(q, n);
            EXPECT_GT(k, previous);
            previous = k;
        }
    }
}

TEST(KFactor, ContinuousAcrossUndeformedThreshold)
{
    const double near = 1.0 + 1e-9;
    EXPECT_NEAR(k_factor(near, 10), 1.0, 1e-12);
    EXPECT_NEAR(k_factor(1.0 + 0.5 * kUndeformedThreshold, 10), 1.0, 1e-15);
}

TEST(QBracket, HighPrecisionReference)
{
    EXPECT_NEAR(q_bracket(1.01, 3), 3.0003960494069208901, 1e-14);
}

TEST(QBracket, UndeformedIsN)
{
    for (int n = 0; n < 20; ++n)
    {
        EXPECT_DOUBLE_EQ(q_bracket(1.0, n), n);
    }
}

TEST(QBracket, FirstLevelsExact)
{
    for (double q : {0.7, 1.05, 1.5})
    {
        EXPECT_EQ(q_bracket(q, 0), 0.0);
        EXPECT_NEAR(q_bracket(q, 1), 1.0, 1e-15);
        EXPECT_NEAR(q_bracket(q, 2), q + 1.0 / q, 1e-14);
    }
}

TEST(QBracket, RejectsNegativeN)
{
    EXPECT_THROW(q_bracket(1.1, -1), DomainError);
}

TEST(QFactorial, HighPrecisionReference)
{
    EXPECT_NEAR(q_factorial(1.01, 3), 2.4497120581263473553, 1e-14);
    EXPECT_NEAR(std::pow(q_factorial(1.01, 3), 2), 6.0010891677296246437, 1e-13);
}

TEST(QFactorial, UndeformedIsRootFactorial)
{
    double factorial = 1.0;
    for (int n = 1; n <= 10; ++n)
    {
        factorial *= n;
        EXPECT_NEAR(q_factorial(1.0, n), std::sqrt(factorial), 1e-12 * std::sqrt(factorial));
    }
    EXPECT_EQ(q_factorial(1.3, 0), 1.0);
}

TEST(QFactorialProperty, RatioIsAmplitude)
{
    for (double q : {0.85, 0.99, 1.01, 1.2})
    {
        for (int n = 1; n <= 40; ++n)
        {
            EXPECT_NEAR(q_factorial(q, n) / q_factorial(q, n - 1), q_amplitude(q, n), 1e-12 * q_amplitude(q, n));
        }
    }
}

TEST(MFactor, SameFormAsK)
{
    for (double s : {0.95, 1.0, 1.007, 1.01})
    {
        for (int n = 0; n < 5; ++n)
        {
            EXPECT_DOUBLE_EQ(M_factor(s, n), k_factor(s, n));
        }
    }
}

TEST(DeformationParams, Validation)
{
    EXPECT_NO_THROW((DeformationParams{1.01, 1.0, 3, 0}.validate()));
    EXPECT_THROW((DeformationParams{0.0, 1.0, 0, 0}.validate()), DomainError);
    EXPECT_THROW((DeformationParams{1.0, -1.0, 0, 0}.validate()), DomainError);
    EXPECT_THROW((DeformationParams{1.0, 1.0, -1, 0}.validate()), DomainError);
    EXPECT_THROW((DeformationParams{1.0, 1.0, 0, -2}.validate()), DomainError);
}
