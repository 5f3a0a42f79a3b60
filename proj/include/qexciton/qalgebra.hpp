#pragma once

// Scalar evaluations of the q-deformed boson algebra
//
//   b_q b_q^+ - q^{-1} b_q^+ b_q = q^n,
//
// realised on number states through b_q^+ b_q |n> = [n]_q |n>. Operator-valued
// functions such as k(n) are evaluated at a caller-supplied occupation.

namespace qexc
{

// Occupations and deformation parameters at which operator-valued functions
// are evaluated. q deforms the exciton algebra, s the polariton algebra.
struct DeformationParams
{
    double q = 1.0;
    double s = 1.0;
    int n = 0;
    int n_k = 0;

    // Throws DomainError unless q > 0, s > 0, n >= 0, n_k >= 0.
    void validate() const;
};

// |q - 1| below this switches every function to its analytic q = 1 limit.
inline constexpr double kUndeformedThreshold = 1e-12;

/// Ordinary commutator [b_q, b_q^+] on |n>:
///   k(n) = q/(q+1) * (q^n + q^{-(n+1)}) = [n+1]_q - [n]_q.
/// Defined for every integer n; k(-1) = k(0) = 1. Throws DomainError for q <= 0.
double k_factor(double q, int n);

/// q-number [n]_q = (q^n - q^{-n}) / (q - q^{-1}); equals n at q = 1.
/// Throws DomainError for q <= 0 or n < 0.
double q_bracket(double q, int n);

/// f_q(n) = sqrt([n]_q), the matrix element <n-1| b_q |n>.
double q_amplitude(double q, int n);

/// prod_{m=1}^{n} f_q(m); empty product is 1. At q = 1 this is sqrt(n!).
double q_factorial(double q, int n);

/// Polariton commutator M(n_k) = s/(s+1) * (s^{n_k} + s^{-(n_k+1)}).
/// Same functional form as k_factor.
double M_factor(double s, int n_k);

} // namespace qexc
