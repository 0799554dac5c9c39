#include "siqr/pipeline.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace siqr {

Trajectory<4> simulate(const Scenario& sc)
{
    sc.validate();
    const auto field = [&](const Vec<4>& x) { return siqr_field<double>(sc.kind, x, sc.params); };
    return integrate<4>(field, sc.initial_state().to_array(), sc.integrator());
}

Measurements measure(const Scenario& sc, const Trajectory<4>& truth, bool with_noise)
{
    Measurements m;
    m.clean = observe(truth, sc.params.alpha);
    m.noisy = with_noise ? add_noise(m.clean, sc.noise) : m.clean;
    return m;
}

namespace {

double rel_error(double estimate, double truth)
{
    return std::abs(estimate - truth) / std::abs(truth);
}

} // namespace

EstimationResult run_estimation(const Scenario& sc, bool with_noise)
{
    EstimationResult r;
    r.truth = simulate(sc);
    r.measurements = measure(sc, r.truth, with_noise);
    r.guarded = guard_measurements(r.measurements.noisy);
    r.gains = gains(sc.lambda, sc.mu);

    const OutputSeries& y = r.guarded.series;
    const ObserverState init = initial_observer_state(y.y1.front(), y.y2.front(), sc.observer);
    r.run = run_observer(y, r.gains, sc.params.N, init, sc.integrator());
    r.I_hat_smoothed = moving_average(r.run.estimates.I_hat, sc.smooth_window);

    const EstimateSeries& es = r.run.estimates;
    r.final_rel_error_rho = rel_error(es.rho_hat.back(), sc.params.rho);
    r.final_rel_error_beta = rel_error(es.beta_hat.back(), sc.params.beta);
    r.final_rel_error_alpha = rel_error(es.alpha_hat.back(), sc.params.alpha);
    return r;
}

IdentifyResult run_identify(const Scenario& sc, double t)
{
    sc.validate();
    if (!(t > 0.0) || t > sc.horizon) {
        throw ConfigError("--t", "identification instant must satisfy 0 < t <= sim.horizon");
    }
    const auto field = [&](const Vec<4>& x) { return siqr_field<double>(sc.kind, x, sc.params); };
    const IntegratorConfig cfg(std::min(sc.dt, t), t);
    const Trajectory<4> traj = integrate<4>(field, sc.initial_state().to_array(), cfg);

    IdentifyResult r;
    r.t = t;
    r.jet = output_jets(EpidemicState::from_array(traj.states.back()), sc.params, sc.kind, t);
    const double y1_at_0 = sc.params.alpha * sc.I0;
    r.recovered = sc.kind == ModelKind::Full ? recover_full(r.jet, y1_at_0, sc.params.N)
                                             : recover_simplified(r.jet, y1_at_0, sc.params.N);
    r.truth = {sc.params.rho, sc.params.alpha, sc.params.beta, sc.I0};
    r.max_rel_error = std::max({rel_error(r.recovered.rho, r.truth.rho), rel_error(r.recovered.alpha, r.truth.alpha),
                                rel_error(r.recovered.beta, r.truth.beta),
                                rel_error(r.recovered.epsilon, r.truth.epsilon)});
    return r;
}

CheckResult run_check(const Scenario& sc)
{
    sc.validate();
    CheckResult r;
    r.r0 = r0(sc.params);
    r.assumptions = check_assumptions(sc.params);
    r.inequalities = check_initial_inequalities(sc.params, sc.I0);
    r.gains = gains(sc.lambda, sc.mu);
    r.poles = verify_pole_placement(r.gains, sc.params.N);
    return r;
}

std::string format_number(double v)
{
    if (std::isnan(v)) {
        return {};
    }
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), ptr);
}

void write_truth_csv(std::ostream& os, const Trajectory<4>& truth)
{
    os << "t,S,I,Q,R\n";
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const auto& x = truth.states[i];
        os << format_number(truth.times[i]) << ',' << format_number(x[0]) << ',' << format_number(x[1]) << ','
           << format_number(x[2]) << ',' << format_number(x[3]) << '\n';
    }
}

void write_measurements_csv(std::ostream& os, const Measurements& m)
{
    os << "t,y1,y2,y1_noisy,y2_noisy\n";
    for (std::size_t i = 0; i < m.clean.size(); ++i) {
        os << format_number(m.clean.times[i]) << ',' << format_number(m.clean.y1[i]) << ','
           << format_number(m.clean.y2[i]) << ',' << format_number(m.noisy.y1[i]) << ','
           << format_number(m.noisy.y2[i]) << '\n';
    }
}

void write_estimates_csv(std::ostream& os, const EstimationResult& r)
{
    const EstimateSeries& es = r.run.estimates;
    os << "t,rho_hat,beta_hat,alpha_hat,I_hat,I_hat_smoothed,clamp_active\n";
    for (std::size_t i = 0; i < es.times.size(); ++i) {
        os << format_number(es.times[i]) << ',' << format_number(es.rho_hat[i]) << ','
           << format_number(es.beta_hat[i]) << ',' << format_number(es.alpha_hat[i]) << ','
           << format_number(es.I_hat[i]) << ',' << format_number(r.I_hat_smoothed[i]) << ','
           << (es.clamp_active[i] ? 1 : 0) << '\n';
    }
}

std::string format_summary(const Scenario& sc, const EstimationResult& r)
{
    const EstimateSeries& es = r.run.estimates;
    const auto clamped = std::count(es.clamp_active.begin(), es.clamp_active.end(), true);
    const auto missing = std::count_if(es.I_hat.begin(), es.I_hat.end(), [](double v) { return std::isnan(v); });

    std::ostringstream os;
    os << "model: " << to_string(sc.kind) << "\n"
       << "final time: " << format_number(es.times.back()) << "\n"
       << "rho_hat: " << format_number(es.rho_hat.back()) << " (truth " << format_number(sc.params.rho)
       << ", relative error " << format_number(r.final_rel_error_rho) << ")\n"
       << "beta_hat: " << format_number(es.beta_hat.back()) << " (truth " << format_number(sc.params.beta)
       << ", relative error " << format_number(r.final_rel_error_beta) << ")\n"
       << "alpha_hat: " << format_number(es.alpha_hat.back()) << " (truth " << format_number(sc.params.alpha)
       << ", relative error " << format_number(r.final_rel_error_alpha) << ")\n"
       << "guard substitutions: y1 " << r.guarded.substitutions_y1 << ", y2 " << r.guarded.substitutions_y2 << "\n"
       << "clamp active samples: " << clamped << "\n"
       << "missing I_hat samples: " << missing << "\n"
       << "decay bound l: " << format_number(r.gains.decay_bound) << "\n";
    return os.str();
}

std::string format_identify(const IdentifyResult& r)
{
    std::ostringstream os;
    os << "t: " << format_number(r.t) << "\n"
       << "rho: " << format_number(r.recovered.rho) << " (truth " << format_number(r.truth.rho) << ")\n"
       << "alpha: " << format_number(r.recovered.alpha) << " (truth " << format_number(r.truth.alpha) << ")\n"
       << "beta: " << format_number(r.recovered.beta) << " (truth " << format_number(r.truth.beta) << ")\n"
       << "epsilon: " << format_number(r.recovered.epsilon) << " (truth " << format_number(r.truth.epsilon) << ")\n"
       << "max relative error: " << format_number(r.max_rel_error) << "\n";
    return os.str();
}

std::string format_check(const CheckResult& r)
{
    auto flag = [](bool b) { return b ? "true" : "false"; };
    std::ostringstream os;
    os << "r0: " << format_number(r.r0) << "\n"
       << "a1: " << flag(r.assumptions.a1) << "\n"
       << "a2: " << flag(r.assumptions.a2) << "\n"
       << "dh1_at_0: " << format_number(r.inequalities.dh1_at_0) << "\n"
       << "cterm_at_0: " << format_number(r.inequalities.cterm_at_0) << "\n"
       << "inequalities_ok: " << flag(r.inequalities.ok) << "\n";
    for (std::size_t i = 0; i < r.gains.K.size(); ++i) {
        os << "K" << i + 1 << ": " << format_number(r.gains.K[i]) << "\n";
    }
    os << "decay_bound: " << format_number(r.gains.decay_bound) << "\n"
       << "m1_ok: " << flag(r.poles.m1_ok) << "\n"
       << "m2_ok: " << flag(r.poles.m2_ok) << "\n"
       << "max_coeff_error: " << format_number(r.poles.max_coeff_error) << "\n";
    return os.str();
}

} // namespace siqr
