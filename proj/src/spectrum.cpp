#include "qexciton/spectrum.hpp"

#include <cmath>
#include <string>

#include "qexciton/errors.hpp"

namespace qexc
{

EnergyGrid::EnergyGrid(std::vector<double> points) : points_(std::move(points))
{
    if (points_.empty())
    {
        throw DomainError("energy grid is empty");
    }
    for (std::size_t i = 0; i < points_.size(); ++i)
    {
        if (!std::isfinite(points_[i]))
        {
            throw DomainError("energy grid contains a non-finite value");
        }
        if (i > 0 && !(points_[i] > points_[i - 1]))
        {
            throw DomainError("energy grid must be strictly increasing (index " + std::to_string(i) + ")");
        }
    }
}

EnergyGrid EnergyGrid::linspace(double start, double stop, std::size_t points)
{
    if (points < 2)
    {
        throw DomainError("grid needs at least 2 points");
    }
    if (!(start < stop))
    {
        throw DomainError("grid start must be below stop");
    }
    std::vector<double> values(points);
    const double span = stop - start;
    const double last = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
    {
        values[i] = start + span * (static_cast<double>(i) / last);
    }
    values.back() = stop;
    return EnergyGrid(std::move(values));
}

double LorentzianBranch::operator()(double omega) const
{
    const double detuning = omega - center;
    return weight * width / (detuning * detuning + width * width);
}

SpectrumSeries sum_lorentzians(const EnergyGrid& grid, std::vector<LorentzianBranch> branches)
{
    for (const auto& branch : branches)
    {
        if (!(branch.width > 0.0))
        {
            throw ZeroLinewidthError("zero linewidth; spectrum is a delta pair");
        }
    }
    SpectrumSeries series;
    series.grid.assign(grid.points().begin(), grid.points().end());
    series.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        double total = 0.0;
        for (const auto& branch : branches)
        {
            total += branch(grid[i]);
        }
        series.values[i] = total;
    }
    series.branches = std::move(branches);
    return series;
}

std::vector<Peak> find_local_maxima(std::span<const double> grid, std::span<const double> values)
{
    if (grid.size() != values.size())
    {
        throw DomainError("grid and values differ in length");
    }
    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
    {
        const double left = values[i - 1];
        const double mid = values[i];
        const double right = values[i + 1];
        if (!(mid > left && mid > right))
        {
            continue;
        }
        Peak peak{i, grid[i], mid};
        // Vertex of the parabola through the three samples (non-uniform spacing).
        const double x0 = grid[i - 1], x1 = grid[i], x2 = grid[i + 1];
        const double d01 = (mid - left) / (x1 - x0);
        const double d12 = (right - mid) / (x2 - x1);
        const double curvature = (d12 - d01) / (x2 - x0);
        if (curvature < 0.0)
        {
            const double vertex = 0.5 * (x0 + x1) - d01 / (2.0 * curvature);
            if (vertex > x0 && vertex < x2)
            {
                peak.position = vertex;
            }
        }
        peaks.push_back(peak);
    }
    return peaks;
}

double full_width_half_maximum(std::span<const double> grid, std::span<const double> values,
                               std::size_t peak_index)
{
    if (grid.size() != values.size() || peak_index >= values.size())
    {
        throw DomainError("invalid arguments to full_width_half_maximum");
    }
    const double half = 0.5 * values[peak_index];
    auto crossing = [&](std::size_t inside, std::size_t outside) {
        const double t = (values[inside] - half) / (values[inside] - values[outside]);
        return grid[inside] + t * (grid[outside] - grid[inside]);
    };

    double left = 0.0;
    bool found_left = false;
    for (std::size_t i = peak_index; i > 0; --i)
    {
        if (values[i - 1] <= half)
        {
            left = crossing(i, i - 1);
            found_left = true;
            break;
        }
    }
    double right = 0.0;
    bool found_right = false;
    for (std::size_t i = peak_index; i + 1 < values.size(); ++i)
    {
        if (values[i + 1] <= half)
        {
            right = crossing(i, i + 1);
            found_right = true;
            break;
        }
    }
    if (!found_left || !found_right)
    {
        return -1.0;
    }
    return right - left;
}

} // namespace qexc
