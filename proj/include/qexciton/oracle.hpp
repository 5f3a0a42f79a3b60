#pragma once

#include <complex>
#include <cstdint>
#include <exception>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qexciton/polariton.hpp"

namespace qexc
{

using ComplexMatrix = Eigen::MatrixXcd;

struct EigenDecomposition
{
    std::vector<std::complex<double>> values;   // ascending by (Re, Im)
    ComplexMatrix vectors;                      // column j belongs to values[j]; empty unless requested
    double max_residual = 0.0;                  // max_j |M v_j - l_j v_j| / (|M| |v_j|)
};

// Eigenvalues of a square complex matrix of dimension 1..64. Throws
// DomainError for empty, oversized or non-finite input and NumericalError if
// the solver fails or a relative residual exceeds 1e-10.
EigenDecomposition eig_small_complex(const ComplexMatrix& m, bool want_vectors = false);

// Where the phenomenological damping enters a fixed-excitation block.
enum class SectorDamping
{
    proportional,   // -i (g_ph n_ph + g_ex n_ex)
    constant,       // -i (g_ph [n_ph > 0] + g_ex [n_ex > 0])
};

// Block of the rotating-wave Hamiltonian with N = n_ph + n_ex fixed, in the
// basis |n_ph = N - m, n_ex = m>, m = 0..N.
struct SectorMatrix
{
    int N = 0;
    ComplexMatrix entries;
};

// Diagonal w (N - m) + w_ex [m]_q - i damping, off-diagonal
// g sqrt(N - m) sqrt([m + 1]_q) on both sides. Throws DomainError unless
// 1 <= N <= 63.
SectorMatrix build_sector(int N, double q, const SystemParams& p,
                          SectorDamping damping = SectorDamping::proportional);

// Per-draw random stream keyed by (seed, sweep tag, draw index). Uniforms are
// built from raw engine bits, so sequences agree across standard libraries.
class DrawStream
{
public:
    DrawStream(std::uint64_t seed, std::uint64_t tag, int draw);

    double uniform(double lo, double hi);
    int integer(int lo, int hi);   // inclusive
    bool chance(double p);
    // 1 with probability 1/4, otherwise uniform in [1 - spread, 1 + spread].
    double deformation(double spread);

private:
    std::mt19937_64 rng_;
};

struct CheckResult
{
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool asserted = true;        // informational entries never fail
    int worst_draw = -1;

    bool passed() const { return !asserted || max_deviation <= tolerance; }
};

// Accumulates the worst deviation of one named check over a sweep.
class Tracker
{
public:
    Tracker(std::string name, double tolerance, bool asserted = true);

    // NaN counts as an infinite deviation.
    void record(double deviation, int draw);

    // A closed form that throws on a draw fails that draw.
    template <typename F>
    void guarded(int draw, F&& compute)
    {
        try
        {
            record(compute(), draw);
        }
        catch (const std::exception&)
        {
            record(std::numeric_limits<double>::infinity(), draw);
        }
    }

    const CheckResult& result() const { return result_; }

private:
    CheckResult result_;
};

// Each sweep draws its own parameter stream from (seed, draw index), so the
// result does not depend on which sweeps run or in what order. Eigenvalue
// deviations are absolute, in eV.
std::vector<CheckResult> single_mode_checks(std::uint64_t seed, int draws);
std::vector<CheckResult> two_mode_checks(std::uint64_t seed, int draws);
std::vector<CheckResult> sector_checks(std::uint64_t seed, int draws);
std::vector<CheckResult> algebra_checks(std::uint64_t seed, int draws);

struct ValidationReport
{
    std::uint64_t seed = 0;
    int draws = 0;
    std::vector<CheckResult> checks;

    bool passed() const;
    // "key: value" lines, fixed formatting.
    std::string to_text() const;
};

// All sweeps above. Throws DomainError if draws < 1.
ValidationReport validate_closed_forms(std::uint64_t seed, int draws = 1000);

} // namespace qexc
