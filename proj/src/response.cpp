#include "qexciton/response.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "qexciton/errors.hpp"
#include "qexciton/qalgebra.hpp"

namespace qexc
{

namespace
{

using cplx = std::complex<double>;

constexpr cplx I{0.0, 1.0};
constexpr int kMaxTerms = 400;
constexpr double kNegligible = 1e-17;

// Weights of the n-series that depend on q only through k and [n]_q.
class SeriesFactors
{
public:
    SeriesFactors(double q, double omega_ex) : q_(q), omega_ex_(omega_ex) {}

    double k(int n) const { return k_factor(q_, n); }
    double f(int n) const { return q_amplitude(q_, n); }

    // prod_{m=1}^{n} f(m)
    double f_factorial(int n) const { return q_factorial(q_, n); }

    // h_i(n)! = prod_{m=1}^{n} 1 / (w_ex k(m + i))
    double h_factorial(int i, int n) const
    {
        double product = 1.0;
        for (int m = 1; m <= n; ++m)
        {
            product /= omega_ex_ * k(m + i);
        }
        return product;
    }

private:
    double q_;
    double omega_ex_;
};

// Common weight g^{2n}/n! h_1(n)! sqrt(f_q(n)!) exp(-g^2 L(n)/2), assembled in
// log space so that large exp(-g^2 L/2) factors do not overflow early.
cplx series_weight(const ResponseParams& p, const SeriesFactors& s, int n)
{
    if (n == 0)
    {
        return std::exp(-0.5 * p.g * p.g * L_function(p.q, 0, p.omega, p.omega_ex, p.eta));
    }
    if (p.g == 0.0)
    {
        return 0.0;
    }
    double log_magnitude = 2.0 * n * std::log(p.g) - std::lgamma(n + 1.0);
    for (int m = 1; m <= n; ++m)
    {
        log_magnitude -= std::log(p.omega_ex * s.k(m + 1));
        log_magnitude += 0.5 * std::log(s.f(m));
    }
    const cplx exponent = log_magnitude - 0.5 * p.g * p.g * L_function(p.q, n, p.omega, p.omega_ex, p.eta);
    return std::exp(exponent);
}

struct OrderBounds
{
    double linear = 0.0;
    double cubic = 0.0;
};

// Upper bound of |term| over all probe energies: |R| <= 1/eta.
OrderBounds term_bounds(const ResponseParams& p, int n)
{
    OrderBounds b;
    for (const auto& term : dipole_density_terms(p, n))
    {
        const double bound = std::abs(term.amplitude) * std::pow(1.0 / p.eta, term.order);
        (term.order == 1 ? b.linear : b.cubic) += bound;
    }
    return b;
}

struct Truncation
{
    int terms = 0;
    double relative_tail = 0.0;
};

double tail_estimate(double next, double after, double total)
{
    if (total == 0.0 || next == 0.0)
    {
        return 0.0;
    }
    const double ratio = after / next;
    if (!(ratio < 1.0))
    {
        return std::numeric_limits<double>::infinity();
    }
    return next / (1.0 - ratio) / total;
}

Truncation choose_truncation(const ResponseParams& p)
{
    OrderBounds total;
    int terms = 0;
    if (p.n_max)
    {
        terms = *p.n_max + 1;
        for (int n = 0; n < terms; ++n)
        {
            const auto b = term_bounds(p, n);
            total.linear += b.linear;
            total.cubic += b.cubic;
        }
    }
    else
    {
        int quiet = 0;
        for (int n = 0;; ++n)
        {
            if (n >= kMaxTerms)
            {
                throw TruncationError("n-series did not converge within " + std::to_string(kMaxTerms) + " terms");
            }
            const auto b = term_bounds(p, n);
            total.linear += b.linear;
            total.cubic += b.cubic;
            const bool negligible = b.linear <= kNegligible * total.linear && b.cubic <= kNegligible * total.cubic;
            quiet = negligible ? quiet + 1 : 0;
            if (n >= 2 && quiet >= 3)
            {
                terms = n + 1;
                break;
            }
        }
    }
    const auto next = term_bounds(p, terms);
    const auto after = term_bounds(p, terms + 1);
    Truncation t;
    t.terms = terms;
    t.relative_tail = std::max(tail_estimate(next.linear, after.linear, total.linear),
                               tail_estimate(next.cubic, after.cubic, total.cubic));
    return t;
}

ResponseParams undeformed_reference(const ResponseParams& p)
{
    ResponseParams ref = p;
    ref.q = 1.0;
    ref.dipole = 1.0;
    ref.n_max.reset();
    ref.grid = EnergyGrid(std::vector<double>{p.omega_ex});
    return ref;
}

enum class Parts
{
    linear = 1,
    cubic = 2,
    both = 3,
};

SusceptibilitySeries evaluate(const ResponseParams& p, Parts parts)
{
    p.validate();
    const auto truncation = choose_truncation(p);
    if (truncation.relative_tail > kTruncationBound)
    {
        throw TruncationError("n-series tail " + std::to_string(truncation.relative_tail) +
                              " exceeds the truncation bound at n_max = " + std::to_string(truncation.terms - 1));
    }

    SusceptibilitySeries out;
    out.grid.assign(p.grid.points().begin(), p.grid.points().end());
    out.terms_used = truncation.terms;
    out.truncation_error = truncation.relative_tail;

    const bool want_linear = static_cast<int>(parts) & 1;
    const bool want_cubic = static_cast<int>(parts) & 2;
    if (want_linear)
    {
        out.chi1 = response_of_order(p, 1, truncation.terms);
    }
    if (want_cubic)
    {
        out.chi3 = response_of_order(p, 3, truncation.terms);
    }

    if (p.normalize)
    {
        const auto ref = undeformed_reference(p);
        const int ref_terms = choose_truncation(ref).terms;
        if (want_linear)
        {
            const double scale = std::abs(response_of_order(ref, 1, ref_terms).front());
            for (auto& value : out.chi1)
            {
                value /= scale;
            }
        }
        if (want_cubic)
        {
            const double scale = std::abs(response_of_order(ref, 3, ref_terms).front());
            for (auto& value : out.chi3)
            {
                value /= scale;
            }
        }
    }

    for (const auto& value : out.chi1)
    {
        out.alpha1.push_back(value.imag());
    }
    for (const auto& value : out.chi3)
    {
        out.alpha3.push_back(value.imag());
    }
    return out;
}

} // namespace

void ResponseParams::validate() const
{
    for (double value : {omega, omega_ex, g, q, dipole, eta})
    {
        if (!std::isfinite(value))
        {
            throw DomainError("response parameters must be finite");
        }
    }
    if (!(eta > 0.0))
    {
        throw DomainError("eta must be positive");
    }
    if (!(q > 0.0))
    {
        throw DomainError("q must be positive");
    }
    if (!(omega_ex > 0.0))
    {
        throw DomainError("omega_ex must be positive");
    }
    if (g < 0.0)
    {
        throw DomainError("coupling g must be non-negative");
    }
    if (!(g < omega_ex))
    {
        throw DomainError("non-convergent configuration: the n-series requires g < omega_ex");
    }
    if (n_max && *n_max < 1)
    {
        throw DomainError("n_max must be at least 1");
    }
    if (grid.size() == 0)
    {
        throw DomainError("probe grid is empty");
    }
}

cplx L_function(double q, int n, double omega, double omega_ex, double eta)
{
    if (!(eta > 0.0))
    {
        throw DomainError("eta must be positive");
    }
    if (n < 0)
    {
        throw DomainError("L(n) requires n >= 0");
    }
    const double bracket = q_bracket(q, n);
    if (bracket == 0.0)
    {
        return 0.0;
    }
    auto denominator = [&](int m) { return omega - omega_ex * k_factor(q, m) + I * eta; };
    return bracket * (1.0 / (denominator(n - 1) * denominator(n + 1)) +
                      1.0 / (denominator(n + 2) * denominator(n)));
}

cplx resonance(double transition, double probe, double eta)
{
    return 1.0 / (transition - probe - I * eta);
}

std::vector<DipoleTerm> dipole_density_terms(const ResponseParams& p, int n)
{
    if (n < 0)
    {
        throw DomainError("photon number n must be non-negative");
    }
    const SeriesFactors s(p.q, p.omega_ex);
    const cplx weight = series_weight(p, s, n);
    const double w_ex = p.omega_ex;
    const double gg = p.g * p.g;
    const cplx decay_L0 = std::exp(-0.5 * gg * L_function(p.q, 0, p.omega, w_ex, p.eta));
    const cplx decay_L1 = std::exp(-0.5 * gg * L_function(p.q, 1, p.omega, w_ex, p.eta));

    // sqrt(f(m)! f(m))
    auto amplitude_root = [&](int m) { return std::sqrt(s.f_factorial(m) * s.f(m)); };
    auto root_f = [&](int m) { return std::sqrt(s.f(m)); };

    const double d1 = p.dipole;
    const double d3 = p.dipole * p.dipole * p.dipole;

    // Each time integral of the probe becomes -i R; the i/hbar and i/(2 hbar^3)
    // prefactors combine with (-i)^order into the real signs below.
    std::vector<DipoleTerm> terms;
    terms.push_back({1, d1 * weight * s.h_factorial(0, n + 1) * decay_L1 * amplitude_root(n + 1), {w_ex}});
    terms.push_back({1, -d1 * weight * root_f(n) * s.h_factorial(0, n) * decay_L0 * amplitude_root(n),
                     {w_ex * s.k(n - 1)}});

    const double k_next = s.k(n + 1);
    terms.push_back({3, -0.5 * d3 * weight * root_f(n + 1) * s.h_factorial(0, n + 2) * decay_L0 * amplitude_root(n + 2),
                     {w_ex, w_ex, -w_ex * k_next}});
    terms.push_back({3, -0.5 * d3 * weight * root_f(n) * s.h_factorial(0, n) * decay_L0 * amplitude_root(n),
                     {w_ex * s.k(n - 1), -w_ex, w_ex}});
    terms.push_back({3, 0.5 * d3 * weight * root_f(n + 1) * s.h_factorial(0, n + 1) * decay_L1 * amplitude_root(n + 1),
                     {-w_ex * k_next, w_ex * k_next, w_ex}});
    terms.push_back({3, 0.5 * d3 * weight * root_f(n) * s.h_factorial(0, n + 1) * decay_L1 * amplitude_root(n + 1),
                     {w_ex * k_next, -w_ex * k_next, w_ex}});
    return terms;
}

std::vector<cplx> response_of_order(const ResponseParams& p, int order, int n_terms)
{
    p.validate();
    std::vector<DipoleTerm> terms;
    for (int n = 0; n < n_terms; ++n)
    {
        for (auto& term : dipole_density_terms(p, n))
        {
            if (term.order == order)
            {
                terms.push_back(std::move(term));
            }
        }
    }
    std::vector<cplx> out(p.grid.size());
    for (std::size_t i = 0; i < p.grid.size(); ++i)
    {
        cplx total = 0.0;
        for (const auto& term : terms)
        {
            cplx product = term.amplitude;
            for (double frequency : term.frequencies)
            {
                product *= resonance(frequency, p.grid[i], p.eta);
            }
            total += product;
        }
        out[i] = total;
    }
    return out;
}

std::vector<cplx> quadratic_response(const ResponseParams& p)
{
    return response_of_order(p, 2, choose_truncation(p).terms);
}

SusceptibilitySeries susceptibility(const ResponseParams& p)
{
    return evaluate(p, Parts::both);
}

SusceptibilitySeries linear_susceptibility(const ResponseParams& p)
{
    return evaluate(p, Parts::linear);
}

SusceptibilitySeries third_order_absorption(const ResponseParams& p)
{
    return evaluate(p, Parts::cubic);
}

} // namespace qexc
