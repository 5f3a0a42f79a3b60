#pragma once

#include <stdexcept>
#include <string>

namespace qexc
{

// Base of every error thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function (q <= 0, n < 0, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

// Exceptional point or otherwise coalescing branch: the coefficient formulas
// have a vanishing denominator.
class DegenerateBranchError : public Error
{
public:
    using Error::Error;
};

// Lorentzian with zero width requested.
class ZeroLinewidthError : public Error
{
public:
    using Error::Error;
};

// Iteration failure, residual bound violated after polishing, and similar.
class NumericalError : public Error
{
public:
    using Error::Error;
};

// Series truncation bound not met, or configuration for which the series
// does not converge.
class TruncationError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

// Malformed scenario configuration or CLI input.
class ConfigError : public Error
{
public:
    using Error::Error;
};

} // namespace qexc
