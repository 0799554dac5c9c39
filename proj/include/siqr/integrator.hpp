#pragma once

#include "siqr/errors.hpp"

#include <algorithm>
#include <array>
#include <concepts>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace siqr {

template <std::size_t Dim>
using Vec = std::array<double, Dim>;

/// Uniform time grid on [0, horizon]. The number of steps is horizon / dt
/// rounded to the nearest integer; the effective step is horizon / steps.
class IntegratorConfig {
public:
    IntegratorConfig(double dt, double horizon);

    double dt() const { return horizon_ / static_cast<double>(steps_); }
    double horizon() const { return horizon_; }
    std::size_t steps() const { return steps_; }
    double time(std::size_t i) const { return horizon_ * static_cast<double>(i) / static_cast<double>(steps_); }

private:
    double horizon_;
    std::size_t steps_;
};

template <std::size_t Dim>
struct Trajectory {
    std::vector<double> times;
    std::vector<Vec<Dim>> states;
    double dt = 0.0;

    std::size_t size() const { return times.size(); }
};

/// Samples of an exogenous signal with Dim components on a sorted time grid.
template <std::size_t Dim>
struct InputSeries {
    std::vector<double> times;
    std::vector<Vec<Dim>> values;

    /// Linear interpolation; t must lie inside [times.front(), times.back()].
    Vec<Dim> at(double t) const
    {
        auto hi = std::upper_bound(times.begin(), times.end(), t);
        if (hi == times.begin()) {
            return values.front();
        }
        if (hi == times.end()) {
            return values.back();
        }
        const auto j = static_cast<std::size_t>(hi - times.begin());
        const double t0 = times[j - 1];
        const double t1 = times[j];
        const double w = (t - t0) / (t1 - t0);
        Vec<Dim> out{};
        for (std::size_t k = 0; k < Dim; ++k) {
            out[k] = (1.0 - w) * values[j - 1][k] + w * values[j][k];
        }
        return out;
    }
};

namespace detail {

template <std::size_t Dim>
Vec<Dim> axpy(const Vec<Dim>& x, double a, const Vec<Dim>& y)
{
    Vec<Dim> out;
    for (std::size_t k = 0; k < Dim; ++k) {
        out[k] = x[k] + a * y[k];
    }
    return out;
}

template <std::size_t Dim>
Vec<Dim> rk4_combine(const Vec<Dim>& x, double dt, const Vec<Dim>& k1, const Vec<Dim>& k2, const Vec<Dim>& k3,
                     const Vec<Dim>& k4)
{
    Vec<Dim> out;
    for (std::size_t k = 0; k < Dim; ++k) {
        out[k] = x[k] + dt / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    }
    return out;
}

} // namespace detail

/// Classical RK4 on an autonomous field x' = f(x). A std::domain_error raised
/// by f is rethrown as IntegrationError carrying the step start time.
template <std::size_t Dim, class Field>
    requires std::invocable<const Field&, const Vec<Dim>&>
Trajectory<Dim> integrate(const Field& f, const Vec<Dim>& x0, const IntegratorConfig& cfg)
{
    Trajectory<Dim> traj;
    traj.dt = cfg.dt();
    traj.times.reserve(cfg.steps() + 1);
    traj.states.reserve(cfg.steps() + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(x0);

    const double h = cfg.dt();
    Vec<Dim> x = x0;
    for (std::size_t i = 0; i < cfg.steps(); ++i) {
        try {
            const Vec<Dim> k1 = f(x);
            const Vec<Dim> k2 = f(detail::axpy(x, h / 2.0, k1));
            const Vec<Dim> k3 = f(detail::axpy(x, h / 2.0, k2));
            const Vec<Dim> k4 = f(detail::axpy(x, h, k3));
            x = detail::rk4_combine(x, h, k1, k2, k3, k4);
        } catch (const std::domain_error& e) {
            throw IntegrationError(e.what(), cfg.time(i));
        }
        traj.times.push_back(cfg.time(i + 1));
        traj.states.push_back(x);
    }
    return traj;
}

/// RK4 on x' = f(x, u(t), t) where u is a sampled signal, linearly
/// interpolated at the stage times.
template <std::size_t Dim, std::size_t InDim, class Field>
    requires std::invocable<const Field&, const Vec<Dim>&, const Vec<InDim>&, double>
Trajectory<Dim> integrate_driven(const Field& f, const Vec<Dim>& x0, const InputSeries<InDim>& inputs,
                                 const IntegratorConfig& cfg)
{
    if (inputs.times.empty() || inputs.times.size() != inputs.values.size()) {
        throw std::invalid_argument("input series is empty or misaligned");
    }
    const double slack = 1e-9 * cfg.horizon();
    if (inputs.times.front() > slack || inputs.times.back() < cfg.horizon() - slack) {
        throw std::invalid_argument("input series does not cover [0, horizon]");
    }

    Trajectory<Dim> traj;
    traj.dt = cfg.dt();
    traj.times.reserve(cfg.steps() + 1);
    traj.states.reserve(cfg.steps() + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(x0);

    const double h = cfg.dt();
    Vec<Dim> x = x0;
    for (std::size_t i = 0; i < cfg.steps(); ++i) {
        const double t = cfg.time(i);
        try {
            const Vec<InDim> u0 = inputs.at(t);
            const Vec<InDim> um = inputs.at(t + h / 2.0);
            const Vec<InDim> u1 = inputs.at(t + h);
            const Vec<Dim> k1 = f(x, u0, t);
            const Vec<Dim> k2 = f(detail::axpy(x, h / 2.0, k1), um, t + h / 2.0);
            const Vec<Dim> k3 = f(detail::axpy(x, h / 2.0, k2), um, t + h / 2.0);
            const Vec<Dim> k4 = f(detail::axpy(x, h, k3), u1, t + h);
            x = detail::rk4_combine(x, h, k1, k2, k3, k4);
        } catch (const std::domain_error& e) {
            throw IntegrationError(e.what(), t);
        }
        traj.times.push_back(cfg.time(i + 1));
        traj.states.push_back(x);
    }
    return traj;
}

} // namespace siqr
