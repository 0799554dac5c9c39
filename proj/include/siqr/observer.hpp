#pragma once

#include "siqr/integrator.hpp"
#include "siqr/observation.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace siqr {

/// Elementary symmetric polynomial of order k in `values` (1 <= k <= n).
double sigma(std::span<const double> values, std::size_t k);

/// Observer gains placed from two pole vectors.
///
/// lambda (4 rates) sets the spectrum of the log-output block that tracks
/// delta = beta - alpha and rho; mu (3 rates) sets the spectrum of the block
/// tracking (y1, v, k), whose error dynamics are additionally scaled by y1(t).
struct GainSet {
    std::array<double, 4> lambda{};
    std::array<double, 3> mu{};
    std::array<double, 7> K{}; ///< K[0] is K1, ..., K[6] is K7
    double decay_bound = 0.0;  ///< min over all entries of lambda and mu
};

/// Throws std::invalid_argument for a non-positive pole.
GainSet gains(const std::array<double, 4>& lambda, const std::array<double, 3>& mu);

/// The seven observer variables.
struct ObserverState {
    double z1_hat = 0.0;    ///< log y1
    double z2_hat = 0.0;    ///< log y2
    double delta_hat = 0.0; ///< beta - alpha
    double rho_hat = 0.0;
    double y1_hat = 0.0;
    double v_hat = 0.0; ///< beta S / N - rho - alpha
    double k_hat = 0.0; ///< beta^2 / alpha

    Vec<7> to_array() const { return {z1_hat, z2_hat, delta_hat, rho_hat, y1_hat, v_hat, k_hat}; }
    static ObserverState from_array(const Vec<7>& x) { return {x[0], x[1], x[2], x[3], x[4], x[5], x[6]}; }
};

/// Initial guesses for the unmeasured observer variables.
struct ObserverDefaults {
    double delta0 = 0.2;
    double rho0 = 0.05;
    double v0 = 0.1;
    double k0 = 1.0;
};

/// Measured components start from the first sample (zero innovation), the
/// rest from `defaults`.
ObserverState initial_observer_state(double y1_0, double y2_0, const ObserverDefaults& defaults = {});

/// Observer vector field. Throws MeasurementGuardError unless y1, y2 > 0.
ObserverState observer_rhs(const ObserverState& x, double y1, double y2, const GainSet& gains, double N);

struct Estimate {
    double rho_hat = 0.0;
    double beta_hat = 0.0;
    double alpha_hat = 0.0;
    bool clamp_active = false; ///< k^2 - 4 delta k was negative and clamped to 0
    bool non_physical = false; ///< beta_hat <= 0 or alpha_hat <= 0
};

/// Maps (delta, k, rho) to (rho, beta, alpha) through the smaller root of
/// beta^2 - k beta + k delta = 0, with the discriminant clamped at 0.
Estimate estimate(const ObserverState& x);

/// Below this alpha_hat the infected estimate y1 / alpha_hat is reported missing.
inline constexpr double kAlphaFloor = 1e-6;

struct EstimateSeries {
    std::vector<double> times;
    std::vector<double> rho_hat;
    std::vector<double> beta_hat;
    std::vector<double> alpha_hat;
    std::vector<double> delta_hat;
    std::vector<double> k_hat;
    std::vector<double> I_hat; ///< NaN where alpha_hat <= kAlphaFloor
    std::vector<bool> clamp_active;
    std::vector<bool> non_physical;
};

struct ObserverRun {
    Trajectory<7> trajectory;
    EstimateSeries estimates;
};

/// Measurements with every non-positive sample replaced, so that the
/// observer can take logs and quotients.
struct GuardedSeries {
    OutputSeries series;
    std::size_t substitutions_y1 = 0;
    std::size_t substitutions_y2 = 0;
};

/// Replaces y <= 0 by the last strictly positive sample, or by the smallest
/// positive sample of the series when none precedes it. A series without
/// any positive sample cannot be guarded and throws MeasurementGuardError.
GuardedSeries guard_measurements(const OutputSeries& measurements);

/// Integrates the observer along `measurements` (which must be strictly
/// positive and cover the grid of `cfg`). Throws DivergenceError if the
/// state stops being finite.
ObserverRun run_observer(const OutputSeries& measurements, const GainSet& gains, double N,
                         const ObserverState& init, const IntegratorConfig& cfg);

Eigen::Matrix4d assemble_M1(const GainSet& gains);
Eigen::Matrix3d assemble_M2(const GainSet& gains, double N);

/// Coefficients [1, c1, ..., cn] of det(sI - M) for n <= 4, from sums of
/// principal minors. Throws std::invalid_argument for non-square or n > 4.
std::vector<double> char_poly(const Eigen::MatrixXd& M);

/// Coefficients [1, c1, ..., cn] of prod(s + r_i).
std::vector<double> poly_from_negated_roots(std::span<const double> roots);

struct PolePlacementReport {
    bool m1_ok = false;
    bool m2_ok = false;
    double max_coeff_error = 0.0; ///< largest relative coefficient mismatch over both blocks
};

/// Relative tolerance used to declare a block's characteristic polynomial correct.
inline constexpr double kPolePlacementTolerance = 1e-9;

/// Compares the characteristic polynomials of M1 and M2 built from `gains`
/// with prod(s + lambda_i) and prod(s + mu_j).
PolePlacementReport verify_pole_placement(const GainSet& gains, double N);
PolePlacementReport verify_pole_placement(const std::array<double, 4>& lambda, const std::array<double, 3>& mu,
                                          double N);

} // namespace siqr
