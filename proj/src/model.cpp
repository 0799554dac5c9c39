#include "siqr/model.hpp"

#include <stdexcept>
#include <string>

namespace siqr {

std::string_view to_string(ModelKind kind)
{
    return kind == ModelKind::Full ? "full" : "simplified";
}

void ModelParams::validate() const
{
    auto require_positive = [](double v, const char* name) {
        if (!(v > 0.0)) {
            throw std::invalid_argument(std::string("model parameter ") + name + " must be > 0");
        }
    };
    require_positive(beta, "beta");
    require_positive(rho, "rho");
    require_positive(alpha, "alpha");
    require_positive(N, "N");
}

double r0(const ModelParams& params)
{
    return params.beta / (params.rho + params.alpha);
}

AssumptionReport check_assumptions(const ModelParams& params)
{
    return {r0(params) > 1.0, params.alpha <= params.rho};
}

EpidemicState rhs(ModelKind kind, const EpidemicState& state, const ModelParams& params)
{
    return EpidemicState::from_array(siqr_field<double>(kind, state.to_array(), params));
}

} // namespace siqr
