#pragma once

#include "siqr/integrator.hpp"
#include "siqr/model.hpp"
#include "siqr/observation.hpp"
#include "siqr/observer.hpp"

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace siqr {

/// Invalid configuration. `key()` names the offending entry when there is one.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key))
    {
    }

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Everything needed to simulate, measure, observe and identify one epidemic.
/// Defaults reproduce the reference experiment: N = 1e5, (alpha, beta, rho) =
/// (0.07, 0.4, 0.1), I0 = 10, Q0 = 5 over 10 days.
struct Scenario {
    ModelKind kind = ModelKind::Full;
    ModelParams params{0.4, 0.1, 0.07, 1e5};
    double I0 = 10.0;
    double Q0 = 5.0;
    double R0 = 0.0;
    double dt = 0.01;
    double horizon = 10.0;
    std::array<double, 4> lambda{1.0, 1.5, 2.0, 2.5};
    std::array<double, 3> mu{1.0 / 13000.0, 1.0 / 15000.0, 1.0 / 19000.0};
    NoiseSpec noise{0.05, 1};
    std::size_t smooth_window = 101;
    ObserverDefaults observer;
    std::string out_dir = ".";

    /// S0 is whatever remains of N after I0, Q0 and R0.
    EpidemicState initial_state() const { return {params.N - I0 - Q0 - R0, I0, Q0, R0}; }
    IntegratorConfig integrator() const { return {dt, horizon}; }

    /// Throws ConfigError naming the first violated key.
    void validate() const;
};

/// Parses a flat `key = value` document (one entry per line, `#` comments,
/// lists comma-separated, numbers may be written as a fraction `1/13000`).
/// Missing keys keep their defaults; unknown or repeated keys are errors.
///
/// Keys: model.kind, params.beta, params.rho, params.alpha, params.N,
/// init.I0, init.Q0, init.R0, sim.dt, sim.horizon, poles.lambda, poles.mu,
/// noise.relative_sigma, noise.seed, smooth.window, observer.delta0,
/// observer.rho0, observer.v0, observer.k0, out.dir.
Scenario parse_scenario(std::string_view text);

} // namespace siqr
