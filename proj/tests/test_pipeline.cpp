#include "siqr/pipeline.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

using namespace siqr;

namespace {

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::size_t line_count(const std::string& s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("format_number")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(99985.5) == "99985.5");
    CHECK(format_number(1e5) == "1e+05"); // shortest form
    CHECK(format_number(-2.5) == "-2.5");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()).empty());
    const double x = 1.0 / 3.0;
    CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("simulate conserves the population")
{
    const Scenario sc;
    const Trajectory<4> truth = simulate(sc);
    REQUIRE(truth.size() == 1001);
    CHECK(truth.times.back() == 10.0);
    for (const auto& x : truth.states) {
        CHECK(std::abs(x[0] + x[1] + x[2] + x[3] - sc.params.N) / sc.params.N < 1e-6);
    }
}

TEST_CASE("CSV headers and row counts")
{
    Scenario sc;
    sc.horizon = 2.0;
    sc.smooth_window = 11;
    const EstimationResult r = run_estimation(sc, true);

    std::ostringstream truth, meas, est;
    write_truth_csv(truth, r.truth);
    write_measurements_csv(meas, r.measurements);
    write_estimates_csv(est, r);
    CHECK(first_line(truth.str()) == "t,S,I,Q,R");
    CHECK(first_line(meas.str()) == "t,y1,y2,y1_noisy,y2_noisy");
    CHECK(first_line(est.str()) == "t,rho_hat,beta_hat,alpha_hat,I_hat,I_hat_smoothed,clamp_active");
    CHECK(line_count(truth.str()) == 202);
    CHECK(line_count(meas.str()) == 202);
    CHECK(line_count(est.str()) == 202);
}

TEST_CASE("estimation is deterministic per seed")
{
    Scenario sc;
    sc.horizon = 3.0;
    sc.smooth_window = 21;
    auto render = [](const Scenario& s) {
        std::ostringstream os;
        const EstimationResult r = run_estimation(s, true);
        write_measurements_csv(os, r.measurements);
        write_estimates_csv(os, r);
        return os.str();
    };
    const std::string a = render(sc);
    CHECK(a == render(sc));
    sc.noise.seed = 2;
    CHECK(a != render(sc));
}

TEST_CASE("noise-free measurements carry no noise")
{
    Scenario sc;
    sc.horizon = 1.0;
    sc.smooth_window = 1;
    const EstimationResult r = run_estimation(sc, false);
    CHECK(r.measurements.noisy.y1 == r.measurements.clean.y1);
    CHECK(r.measurements.noisy.y2 == r.measurements.clean.y2);
    CHECK(r.guarded.substitutions_y1 == 0);
    CHECK(r.guarded.substitutions_y2 == 0);
    CHECK(r.measurements.clean.y1[0] == doctest::Approx(0.7));
}

TEST_CASE("missing I_hat is written as an empty field")
{
    Scenario sc;
    sc.horizon = 0.5;
    sc.smooth_window = 1;
    // delta0 = k0 / 2 with k0 > 0 makes alpha_hat = k0 / 2 - delta0 = 0 at t = 0.
    sc.observer.k0 = 0.4;
    sc.observer.delta0 = 0.2;
    const EstimationResult r = run_estimation(sc, false);
    REQUIRE(std::isnan(r.run.estimates.I_hat[0]));
    CHECK(std::isnan(r.I_hat_smoothed[0]));
    std::ostringstream os;
    write_estimates_csv(os, r);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    CHECK(line.rfind("0,0.05,", 0) == 0);
    CHECK(line.find(",,,") != std::string::npos);
}

TEST_CASE("smoothed I_hat uses the configured window")
{
    Scenario sc;
    sc.horizon = 2.0;
    sc.smooth_window = 5;
    const EstimationResult r = run_estimation(sc, true);
    const auto expected = moving_average(r.run.estimates.I_hat, 5);
    REQUIRE(expected.size() == r.I_hat_smoothed.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(r.I_hat_smoothed[i] == doctest::Approx(expected[i]));
    }
}

TEST_CASE("identify at t = 1 on the reference scenario")
{
    const IdentifyResult r = run_identify(Scenario{}, 1.0);
    CHECK(rel(r.recovered.rho, 0.1) < 1e-6);
    CHECK(rel(r.recovered.alpha, 0.07) < 1e-6);
    CHECK(rel(r.recovered.beta, 0.4) < 1e-6);
    CHECK(rel(r.recovered.epsilon, 10.0) < 1e-6);
    CHECK(r.max_rel_error < 1e-6);

    Scenario simple;
    simple.kind = ModelKind::Simplified;
    CHECK(run_identify(simple, 2.0).max_rel_error < 1e-6);

    CHECK_THROWS_AS(run_identify(Scenario{}, 0.0), ConfigError);
    CHECK_THROWS_AS(run_identify(Scenario{}, 11.0), ConfigError);
}

TEST_CASE("check on the reference scenario")
{
    const CheckResult r = run_check(Scenario{});
    CHECK(r.assumptions.a1);
    CHECK(r.assumptions.a2);
    CHECK(r.poles.m1_ok);
    CHECK(r.poles.m2_ok);
    CHECK(rel(r.inequalities.dh1_at_0, -1.31987e-5) < 1e-5);
    CHECK(rel(r.inequalities.cterm_at_0, 0.0923908) < 1e-6);
    CHECK(r.inequalities.ok);
    CHECK(r.r0 == doctest::Approx(0.4 / 0.17));

    const std::string text = format_check(r);
    CHECK(text.find("m1_ok: true") != std::string::npos);
    CHECK(text.find("K1: 7\n") != std::string::npos);
}

TEST_CASE("noise-free estimation keeps rho accurate")
{
    const EstimationResult r = run_estimation(Scenario{}, false);
    CHECK(r.final_rel_error_rho < 0.05);
    const std::string summary = format_summary(Scenario{}, r);
    CHECK(summary.find("rho_hat: ") != std::string::npos);
}
