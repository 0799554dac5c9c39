#pragma once

#include "siqr/model.hpp"
#include "siqr/observation.hpp"

#include <vector>

namespace siqr {

/// Parameters and initial infected count reconstructed from output jets.
struct RecoveredParams {
    double rho = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double epsilon = 0.0;
};

/// Full-model auxiliary functions, with h1 = y1' / y1 and h2 = (N - y2) h1'.
struct FullChain {
    double h1 = 0.0;
    double dh1 = 0.0;
    double h2 = 0.0;
    double dh2 = 0.0;

    /// Coefficients of dh1 X^2 + (h2 h1 - dh2) X + h2 (-h1 y2' + y2'') = 0,
    /// whose relevant root is X = y2' - beta I.
    double quad_a = 0.0;
    double quad_b = 0.0;
    double quad_c = 0.0;
};

/// Simplified-model auxiliary functions, with h1 = y1' / y1 + rho. Note the
/// offset by rho compared with FullChain::h1.
struct SimplifiedChain {
    double h1 = 0.0;
    double dh1 = 0.0;
    double d2h1 = 0.0;
};

/// rho = (y1 - y2') / y2. Throws SingularPointError when y2 <= 0.
double recover_rho(const OutputJet& jet);

FullChain full_chain(const OutputJet& jet, double N);
SimplifiedChain simplified_chain(const OutputJet& jet, double rho);

/// Real roots of the X-quadratic, in no particular order. Throws
/// DegenerateInputError for a negative discriminant or a vanishing
/// leading coefficient.
std::vector<double> x_quadratic_roots(const FullChain& chain);

struct FullRecovery {
    RecoveredParams params;
    FullChain chain;
    double x = 0.0; ///< selected root, equal to y2' - beta I
};

/// Inverts the full model from a jet at t > 0 and the flow y1(0).
///
/// The negative root of the X-quadratic is used. When both roots are
/// negative (possible when Q(0) > 0) the root that yields positive alpha
/// and beta is kept; if that still leaves zero or two candidates a
/// RootSelectionError is thrown.
FullRecovery recover_full_detailed(const OutputJet& jet_t, double y1_at_0, double N);
RecoveredParams recover_full(const OutputJet& jet_t, double y1_at_0, double N);

/// Inverts the simplified model:
///   beta I = -N (h1'' / h1' - h1 + rho),  alpha = -N h1' / (beta I) - h1,
/// which follows from h1'' = h1' (h1 - rho) - (beta I / N) h1'.
/// Throws RegimeError when h1' >= 0.
RecoveredParams recover_simplified(const OutputJet& jet_t, double y1_at_0, double N);

struct InitialInequalities {
    double dh1_at_0 = 0.0;   ///< (beta eps / N)(alpha - beta)(1 - eps / N)
    double cterm_at_0 = 0.0; ///< alpha beta rho eps^2 (beta - alpha)(1 - eps / N)
    bool ok = false;         ///< dh1_at_0 < 0 and cterm_at_0 > 0
};

/// Signs of the quadratic's leading and constant coefficients at t = 0 for
/// the initial state (N - eps, eps, 0, 0).
InitialInequalities check_initial_inequalities(const ModelParams& params, double epsilon);

} // namespace siqr
