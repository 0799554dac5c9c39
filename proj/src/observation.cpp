#include "siqr/observation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace siqr {

OutputSeries observe(const Trajectory<4>& traj, double alpha)
{
    OutputSeries out;
    out.times = traj.times;
    out.y1.reserve(traj.size());
    out.y2.reserve(traj.size());
    for (const auto& x : traj.states) {
        out.y1.push_back(alpha * x[1]);
        out.y2.push_back(x[2]);
    }
    return out;
}

OutputJet output_jets(const EpidemicState& state, const ModelParams& params, ModelKind kind, double t)
{
    // Third order in I gives y1 up to its third derivative; Q only needs two
    // but rides along at no extra cost.
    using Series = Taylor<3>;
    std::array<Series, 4> x{Series(state.S), Series(state.I), Series(state.Q), Series(state.R)};
    for (std::size_t k = 0; k < 3; ++k) {
        const auto f = siqr_field<Series>(kind, x, params);
        for (std::size_t c = 0; c < 4; ++c) {
            x[c][k + 1] = f[c][k] / static_cast<double>(k + 1);
        }
    }

    OutputJet jet;
    jet.t = t;
    jet.y1 = params.alpha * x[1].derivative(0);
    jet.dy1 = params.alpha * x[1].derivative(1);
    jet.d2y1 = params.alpha * x[1].derivative(2);
    jet.d3y1 = params.alpha * x[1].derivative(3);
    jet.y2 = x[2].derivative(0);
    jet.dy2 = x[2].derivative(1);
    jet.d2y2 = x[2].derivative(2);
    return jet;
}

OutputSeries add_noise(const OutputSeries& series, const NoiseSpec& spec)
{
    if (!(spec.relative_sigma >= 0.0)) {
        throw std::invalid_argument("noise relative_sigma must be >= 0");
    }
    OutputSeries out = series;
    if (spec.relative_sigma == 0.0) {
        return out;
    }

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> eta(0.0, spec.relative_sigma);
    auto perturb = [&](std::vector<double>& v) {
        for (double& y : v) {
            y = std::max(0.0, y * (1.0 + eta(rng)));
        }
    };
    perturb(out.y1);
    perturb(out.y2);
    return out;
}

std::vector<double> moving_average(std::span<const double> values, std::size_t window)
{
    if (window == 0 || window % 2 == 0) {
        throw std::invalid_argument("moving average window must be odd and >= 1");
    }
    if (values.size() < window) {
        throw std::invalid_argument("series is shorter than the moving average window");
    }

    const std::size_t half = window / 2;
    const std::size_t n = values.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n - 1, i + half);
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t j = lo; j <= hi; ++j) {
            if (std::isfinite(values[j])) {
                sum += values[j];
                ++count;
            }
        }
        out[i] = count > 0 ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

} // namespace siqr
