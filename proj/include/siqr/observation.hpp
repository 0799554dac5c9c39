#pragma once

#include "siqr/integrator.hpp"
#include "siqr/model.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace siqr {

/// Measured signals on a time grid: y1 = alpha * I (flow into quarantine,
/// individuals/day) and y2 = Q (quarantined population).
struct OutputSeries {
    std::vector<double> times;
    std::vector<double> y1;
    std::vector<double> y2;

    std::size_t size() const { return times.size(); }
};

/// Outputs and their time derivatives at one instant.
struct OutputJet {
    double t = 0.0;
    double y1 = 0.0;
    double dy1 = 0.0;
    double d2y1 = 0.0;
    double d3y1 = 0.0;
    double y2 = 0.0;
    double dy2 = 0.0;
    double d2y2 = 0.0;
};

/// Multiplicative Gaussian measurement noise: y -> y * (1 + relative_sigma * eta).
struct NoiseSpec {
    double relative_sigma = 0.05;
    std::uint64_t seed = 1;
};

OutputSeries observe(const Trajectory<4>& traj, double alpha);

/// Exact output derivatives at `state`, obtained by propagating Taylor
/// coefficients of the trajectory through the model vector field.
/// Throws DomainError for the full model when Q >= N.
OutputJet output_jets(const EpidemicState& state, const ModelParams& params, ModelKind kind, double t = 0.0);

/// Independent noise on y1 and y2; negative samples are clamped to 0.
/// Deterministic for a given seed.
OutputSeries add_noise(const OutputSeries& series, const NoiseSpec& spec);

/// Centered moving average with an odd window. Near the ends the average
/// runs over whatever part of the window lies inside the series. Non-finite
/// samples are skipped; a window with no finite sample yields NaN.
std::vector<double> moving_average(std::span<const double> values, std::size_t window);

} // namespace siqr
