#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qexc
{

// Strictly increasing list of probe energies (eV).
class EnergyGrid
{
public:
    EnergyGrid() = default;

    // Throws DomainError if empty, non-finite or not strictly increasing.
    explicit EnergyGrid(std::vector<double> points);

    // points >= 2 equally spaced samples on [start, stop], start < stop.
    static EnergyGrid linspace(double start, double stop, std::size_t points);

    std::span<const double> points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }

    bool operator==(const EnergyGrid&) const = default;

private:
    std::vector<double> points_;
};

// One branch of a spectrum: weight * width / ((w - center)^2 + width^2).
struct LorentzianBranch
{
    double center = 0.0;
    double width = 0.0;
    double weight = 0.0;

    double operator()(double omega) const;
    // Peak value weight / width.
    double peak() const { return weight / width; }
};

struct SpectrumSeries
{
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<LorentzianBranch> branches;
};

// How the per-branch Lorentzian width is chosen.
enum class WidthMode
{
    mean_damping,   // Gamma = mean of the exciton and photon damping constants
    branch_imag,    // Gamma_k = -Im(Omega_k)
};

// Sums the branches on the grid, branch order fixed (deterministic for any
// evaluation order of grid points). Throws ZeroLinewidthError if any branch
// has width <= 0.
SpectrumSeries sum_lorentzians(const EnergyGrid& grid, std::vector<LorentzianBranch> branches);

struct Peak
{
    std::size_t index = 0;   // grid index of the sampled maximum
    double position = 0.0;   // parabolic refinement through the 3 neighbouring samples
    double height = 0.0;     // sampled value at index
};

// Interior strict local maxima of values on grid, ordered by position.
std::vector<Peak> find_local_maxima(std::span<const double> grid, std::span<const double> values);

// Full width at half maximum around the sample peak_index, with linear
// interpolation at the half-height crossings. Returns a negative value if the
// curve does not fall to half height on both sides within the grid.
double full_width_half_maximum(std::span<const double> grid, std::span<const double> values,
                               std::size_t peak_index);

} // namespace qexc
