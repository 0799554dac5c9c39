#pragma once

#include "siqr/identifiability.hpp"
#include "siqr/observer.hpp"
#include "siqr/scenario.hpp"

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace siqr {

/// Noise-free trajectory of the scenario's model on its integration grid.
Trajectory<4> simulate(const Scenario& sc);

struct Measurements {
    OutputSeries clean;
    OutputSeries noisy; ///< equals `clean` when noise is disabled
};

Measurements measure(const Scenario& sc, const Trajectory<4>& truth, bool with_noise);

struct EstimationResult {
    Trajectory<4> truth;
    Measurements measurements;
    GuardedSeries guarded;
    GainSet gains;
    ObserverRun run;
    std::vector<double> I_hat_smoothed;
    double final_rel_error_rho = 0.0;
    double final_rel_error_beta = 0.0;
    double final_rel_error_alpha = 0.0;
};

/// simulate -> measure -> guard -> observe -> smooth the infected estimate.
EstimationResult run_estimation(const Scenario& sc, bool with_noise);

struct IdentifyResult {
    double t = 0.0;
    OutputJet jet;
    RecoveredParams recovered;
    RecoveredParams truth;
    double max_rel_error = 0.0;
};

/// Simulates the scenario up to `t` and inverts the exact output jet there
/// with the recovery formulas of the scenario's model variant.
IdentifyResult run_identify(const Scenario& sc, double t);

struct CheckResult {
    double r0 = 0.0;
    AssumptionReport assumptions;
    InitialInequalities inequalities;
    GainSet gains;
    PolePlacementReport poles;
};

/// Assumptions, initial-inequality signs (with epsilon = I0) and pole placement.
CheckResult run_check(const Scenario& sc);

/// Shortest decimal text that reads back to the same double; empty for NaN.
std::string format_number(double v);

void write_truth_csv(std::ostream& os, const Trajectory<4>& truth);
void write_measurements_csv(std::ostream& os, const Measurements& m);
void write_estimates_csv(std::ostream& os, const EstimationResult& r);

std::string format_summary(const Scenario& sc, const EstimationResult& r);
std::string format_identify(const IdentifyResult& r);
std::string format_check(const CheckResult& r);

} // namespace siqr
