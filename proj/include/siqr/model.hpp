#pragma once

#include "siqr/errors.hpp"
#include "siqr/taylor.hpp"

#include <array>
#include <string_view>

namespace siqr {

/// Which right-hand side to use. `Full` divides the force of infection by
/// the non-quarantined population N - Q, `Simplified` by N.
enum class ModelKind { Full, Simplified };

std::string_view to_string(ModelKind kind);

/// Rates are per day; N is the (constant) total population.
struct ModelParams {
    double beta = 0.0;  ///< infectivity
    double rho = 0.0;   ///< recovery rate, shared by I and Q
    double alpha = 0.0; ///< rate of placement in quarantine
    double N = 0.0;

    /// Throws std::invalid_argument unless all four fields are strictly positive.
    void validate() const;
};

struct EpidemicState {
    double S = 0.0;
    double I = 0.0;
    double Q = 0.0;
    double R = 0.0;

    double total() const { return S + I + Q + R; }
    std::array<double, 4> to_array() const { return {S, I, Q, R}; }
    static EpidemicState from_array(const std::array<double, 4>& x) { return {x[0], x[1], x[2], x[3]}; }
};

/// Reproduction number beta / (rho + alpha).
double r0(const ModelParams& params);

struct AssumptionReport {
    bool a1 = false; ///< R0 > 1: the epidemic can grow from a near disease-free state
    bool a2 = false; ///< alpha <= rho: required by the observer's root selection
};

AssumptionReport check_assumptions(const ModelParams& params);

/// SIQR vector field on (S, I, Q, R), generic over the scalar so that it can
/// be evaluated on Taylor series as well as doubles.
template <class T>
std::array<T, 4> siqr_field(ModelKind kind, const std::array<T, 4>& x, const ModelParams& p)
{
    const T& S = x[0];
    const T& I = x[1];
    const T& Q = x[2];

    T denom = T(p.N);
    if (kind == ModelKind::Full) {
        denom = T(p.N) - Q;
        if (!(constant_term(denom) > 0.0)) {
            throw DomainError("full SIQR model requires Q < N");
        }
    }

    const T infection = T(p.beta) * S * I / denom;
    const T recovery_I = T(p.rho) * I;
    const T recovery_Q = T(p.rho) * Q;
    const T quarantine = T(p.alpha) * I;
    return {
        -infection,
        infection - recovery_I - quarantine,
        quarantine - recovery_Q,
        recovery_I + recovery_Q,
    };
}

/// Time derivative (dS, dI, dQ, dR) of the chosen model variant.
EpidemicState rhs(ModelKind kind, const EpidemicState& state, const ModelParams& params);

} // namespace siqr
