#include "siqr/identifiability.hpp"

#include <cmath>
#include <stdexcept>

namespace siqr {

namespace {

// Derivatives of y1' / y1 from the y1 jet.
struct LogDerivative {
    double value;
    double d1;
    double d2;
};

LogDerivative log_derivative(const OutputJet& jet)
{
    if (!(jet.y1 > 0.0)) {
        throw SingularPointError("y1 must be positive: the outputs carry no information when I = 0");
    }
    const double r1 = jet.dy1 / jet.y1;
    const double r2 = jet.d2y1 / jet.y1;
    const double r3 = jet.d3y1 / jet.y1;
    return {r1, r2 - r1 * r1, r3 - 3.0 * r1 * r2 + 2.0 * r1 * r1 * r1};
}

void require_positive_flow(double y1_at_0)
{
    if (!(y1_at_0 > 0.0)) {
        throw std::invalid_argument("y1(0) must be positive to reconstruct the initial infected count");
    }
}

} // namespace

double recover_rho(const OutputJet& jet)
{
    if (!(jet.y2 > 0.0)) {
        throw SingularPointError("y2 = Q must be positive to identify rho");
    }
    return (jet.y1 - jet.dy2) / jet.y2;
}

FullChain full_chain(const OutputJet& jet, double N)
{
    const LogDerivative g = log_derivative(jet);
    FullChain c;
    c.h1 = g.value;
    c.dh1 = g.d1;
    c.h2 = (N - jet.y2) * g.d1;
    c.dh2 = -jet.dy2 * g.d1 + (N - jet.y2) * g.d2;
    c.quad_a = c.dh1;
    c.quad_b = c.h2 * c.h1 - c.dh2;
    c.quad_c = c.h2 * (-c.h1 * jet.dy2 + jet.d2y2);
    return c;
}

SimplifiedChain simplified_chain(const OutputJet& jet, double rho)
{
    const LogDerivative g = log_derivative(jet);
    return {g.value + rho, g.d1, g.d2};
}

std::vector<double> x_quadratic_roots(const FullChain& chain)
{
    const double a = chain.quad_a;
    const double b = chain.quad_b;
    const double c = chain.quad_c;
    if (a == 0.0 || !std::isfinite(a)) {
        throw DegenerateInputError("leading coefficient h1' of the X-quadratic vanishes");
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        throw DegenerateInputError("X-quadratic has a negative discriminant");
    }
    // Cancellation-free form: q = -(b + sign(b) sqrt(disc)) / 2, roots q/a and c/q.
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q == 0.0) {
        return {0.0, 0.0};
    }
    return {q / a, c / q};
}

FullRecovery recover_full_detailed(const OutputJet& jet_t, double y1_at_0, double N)
{
    require_positive_flow(y1_at_0);
    const double rho = recover_rho(jet_t);
    const FullChain chain = full_chain(jet_t, N);

    bool saw_negative = false;
    int admissible = 0;
    FullRecovery out;
    out.chain = chain;
    for (double x : x_quadratic_roots(chain)) {
        if (!(x < 0.0)) {
            continue;
        }
        saw_negative = true;
        const double alpha = chain.h2 / x - chain.h1 - rho;
        const double beta = alpha * (jet_t.dy2 - x) / jet_t.y1;
        if (alpha > 0.0 && beta > 0.0 && std::isfinite(alpha) && std::isfinite(beta)) {
            ++admissible;
            out.x = x;
            out.params = {rho, alpha, beta, y1_at_0 / alpha};
        }
    }
    if (!saw_negative) {
        throw RootSelectionError("X-quadratic has no negative real root");
    }
    if (admissible != 1) {
        throw RootSelectionError(admissible == 0 ? "no negative root gives positive alpha and beta"
                                                 : "two negative roots give admissible parameters");
    }
    return out;
}

RecoveredParams recover_full(const OutputJet& jet_t, double y1_at_0, double N)
{
    return recover_full_detailed(jet_t, y1_at_0, N).params;
}

RecoveredParams recover_simplified(const OutputJet& jet_t, double y1_at_0, double N)
{
    require_positive_flow(y1_at_0);
    const double rho = recover_rho(jet_t);
    const SimplifiedChain c = simplified_chain(jet_t, rho);
    if (!(c.dh1 < 0.0)) {
        throw RegimeError("h1' must be negative on a simplified-model trajectory");
    }
    const double beta_I = -N * (c.d2h1 / c.dh1 - c.h1 + rho);
    if (!(beta_I > 0.0)) {
        throw RegimeError("reconstructed beta * I is not positive");
    }
    const double alpha = -N * c.dh1 / beta_I - c.h1;
    const double beta = alpha * beta_I / jet_t.y1;
    return {rho, alpha, beta, y1_at_0 / alpha};
}

InitialInequalities check_initial_inequalities(const ModelParams& p, double epsilon)
{
    const double share = 1.0 - epsilon / p.N;
    InitialInequalities out;
    out.dh1_at_0 = (p.beta * epsilon / p.N) * (p.alpha - p.beta) * share;
    out.cterm_at_0 = p.alpha * p.beta * p.rho * epsilon * epsilon * (p.beta - p.alpha) * share;
    out.ok = out.dh1_at_0 < 0.0 && out.cterm_at_0 > 0.0;
    return out;
}

} // namespace siqr
