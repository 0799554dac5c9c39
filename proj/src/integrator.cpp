#include "siqr/integrator.hpp"

#include <cmath>

namespace siqr {

IntegratorConfig::IntegratorConfig(double dt, double horizon) : horizon_(horizon), steps_(0)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("integrator step dt must be a positive finite number");
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("integration horizon must be a positive finite number");
    }
    if (horizon < dt) {
        throw std::invalid_argument("integration horizon must be at least one step");
    }
    steps_ = static_cast<std::size_t>(std::llround(horizon / dt));
}

} // namespace siqr
