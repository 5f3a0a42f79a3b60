#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qexciton/multimode.hpp"
#include "qexciton/oracle.hpp"
#include "qexciton/polariton.hpp"
#include "qexciton/response.hpp"

namespace qexc
{

enum class ScenarioKind
{
    single,
    qpol,
    two_mode,
    absorption_linear,
    absorption_third,
};

std::string_view to_string(ScenarioKind kind);
// Throws ConfigError for an unknown name.
ScenarioKind parse_kind(std::string_view name);

// Parameters of the one-exciton scenarios; s and n_k only matter for qpol.
struct SingleModeBlock
{
    SystemParams system;
    double q = 1.0;
    int n = 0;
    double s = 1.0;
    int n_k = 0;
    WidthMode width = WidthMode::mean_damping;

    bool operator==(const SingleModeBlock&) const = default;
};

struct TwoModeBlock
{
    TwoModeParams params;
    WidthMode width = WidthMode::branch_imag;
    CoefficientForm form = CoefficientForm::eigenvector;

    bool operator==(const TwoModeBlock&) const = default;
};

struct GridSpec
{
    double start = 0.0;
    double stop = 0.0;
    std::size_t points = 0;

    bool operator==(const GridSpec&) const = default;
};

// The grid member of ResponseParams is unused here; GridSpec supplies it.
using ScenarioParams = std::variant<SingleModeBlock, TwoModeBlock, ResponseParams>;

struct ScenarioConfig
{
    ScenarioKind kind = ScenarioKind::single;
    ScenarioParams params;
    GridSpec grid;
    std::string output;   // file name, relative to the output directory

    bool operator==(const ScenarioConfig&) const = default;

    // Throws ConfigError unless points >= 2, start < stop, the parameter block
    // matches the kind and the block validates.
    void validate() const;
};

// Energy with an optional unit suffix: "1.75eV", "200meV", "200ueV", "200µeV".
// A bare number is taken in eV. Throws ConfigError.
double parse_energy(std::string_view text);
// "%.17g" followed by "eV"; parse_energy inverts it exactly.
std::string format_energy(double ev);

// JSON object {kind, params, grid: {start, stop, points}, output}. Energies
// may be numbers (eV) or suffixed strings. Unknown keys are rejected.
ScenarioConfig parse_config(std::string_view json_text);
std::string serialize_config(const ScenarioConfig& config);

struct Curve
{
    std::string column;            // "S", "alpha1" or "alpha3"
    std::vector<double> omega;
    std::vector<double> values;
};

// Throws ConfigError for an invalid config and the library error of the
// target module otherwise.
Curve run_scenario(const ScenarioConfig& config);

// Header "omega_eV,<column>", 17 significant digits, LF line endings.
std::string to_csv(const Curve& curve);
// Plain polyline plot of the curve.
std::string to_svg(const Curve& curve);

// Preset parameter sets fig1 .. fig6. Throws ConfigError otherwise.
std::vector<ScenarioConfig> preset(std::string_view name);

struct BatchOptions
{
    std::string out_dir = ".";
    unsigned threads = 1;
    bool svg = false;
    bool emit_config = false;
};

// Runs every scenario, writing <out_dir>/<output> (and the .svg / .json
// siblings on request). Scenarios are distributed over worker threads; the
// files do not depend on the thread count. Rethrows the first error in
// scenario order after all workers finish. Returns the written CSV paths.
std::vector<std::string> run_batch(const std::vector<ScenarioConfig>& configs, const BatchOptions& options);

// Response-function invariants over seeded random parameter sets: vanishing
// second order, q <-> 1/q symmetry, truncation stability.
std::vector<CheckResult> response_checks(std::uint64_t seed, int draws);

// validate_closed_forms plus response_checks.
ValidationReport full_validation(std::uint64_t seed, int draws);

} // namespace qexc
