#include "qexciton/qalgebra.hpp"

#include <cmath>
#include <string>

#include "qexciton/errors.hpp"

namespace qexc
{

namespace
{

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value))
    {
        throw DomainError(std::string(name) + " must be positive and finite, got " + std::to_string(value));
    }
}

bool undeformed(double q)
{
    return std::abs(q - 1.0) < kUndeformedThreshold;
}

// |log q|. Every function here is even in log q, so folding the sign makes
// q and 1/q evaluate through identical arithmetic up to the rounding of 1/q.
double deformation_rapidity(double q)
{
    return std::abs(std::log(q));
}

} // namespace

void DeformationParams::validate() const
{
    require_positive(q, "q");
    require_positive(s, "s");
    if (n < 0 || n_k < 0)
    {
        throw DomainError("occupations n and n_k must be non-negative");
    }
}

double k_factor(double q, int n)
{
    require_positive(q, "q");
    if (undeformed(q))
    {
        return 1.0;
    }
#ifdef QEXC_MUTATION_K_FACTOR
    // Seeded mutation for the validation suite: q^{-(n+1)} -> q^{-n}.
    return q / (q + 1.0) * (std::pow(q, n) + std::pow(q, -n));
#else
    // q/(q+1) (q^n + q^{-n-1}) == cosh((n + 1/2) h) / cosh(h / 2), h = log q.
    const double h = deformation_rapidity(q);
    return std::cosh((n + 0.5) * h) / std::cosh(0.5 * h);
#endif
}

double q_bracket(double q, int n)
{
    require_positive(q, "q");
    if (n < 0)
    {
        throw DomainError("q_bracket requires n >= 0");
    }
    if (n == 0)
    {
        return 0.0;
    }
    if (undeformed(q))
    {
        return static_cast<double>(n);
    }
    const double h = deformation_rapidity(q);
    return std::sinh(n * h) / std::sinh(h);
}

double q_amplitude(double q, int n)
{
    return std::sqrt(q_bracket(q, n));
}

double q_factorial(double q, int n)
{
    require_positive(q, "q");
    if (n < 0)
    {
        throw DomainError("q_factorial requires n >= 0");
    }
    double product = 1.0;
    for (int m = 1; m <= n; ++m)
    {
        product *= q_amplitude(q, m);
    }
    return product;
}

double M_factor(double s, int n_k)
{
    require_positive(s, "s");
    return k_factor(s, n_k);
}

} // namespace qexc
