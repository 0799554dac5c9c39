#include "siqr/observation.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

using namespace siqr;

namespace {

const ModelParams kReference{0.4, 0.1, 0.07, 1e5};

Trajectory<4> reference_trajectory(ModelKind kind, double dt, double horizon = 10.0)
{
    auto f = [kind](const Vec<4>& x) { return siqr_field<double>(kind, x, kReference); };
    return integrate<4>(f, {1e5 - 15.0, 10.0, 5.0, 0.0}, IntegratorConfig(dt, horizon));
}

} // namespace

TEST_CASE("observe projects alpha * I and Q")
{
    const auto traj = reference_trajectory(ModelKind::Full, 0.01);
    const OutputSeries y = observe(traj, kReference.alpha);
    REQUIRE(y.size() == traj.size());
    CHECK(y.times == traj.times);
    CHECK(y.y1[0] == doctest::Approx(0.7));
    CHECK(y.y2[0] == 5.0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        CHECK(y.y2[i] == traj.states[i][2]);
        CHECK(y.y1[i] >= 0.0);
    }

    Trajectory<4> no_infection;
    no_infection.times = {0.0, 1.0};
    no_infection.states = {{100.0, 0.0, 3.0, 0.0}, {100.0, 0.0, 2.7, 0.3}};
    const OutputSeries z = observe(no_infection, 0.07);
    CHECK(z.y1 == std::vector<double>{0.0, 0.0});
}

TEST_CASE("output jet at the reference initial state")
{
    const EpidemicState x{1e5 - 15.0, 10.0, 5.0, 0.0};
    const OutputJet jet = output_jets(x, kReference, ModelKind::Simplified);
    CHECK(jet.y1 == doctest::Approx(0.7));
    CHECK(jet.y2 == 5.0);
    CHECK(jet.dy2 == doctest::Approx(0.2).epsilon(1e-14));
    CHECK((jet.y1 - jet.dy2) / jet.y2 == doctest::Approx(0.1).epsilon(1e-14));
    // dy1 = alpha * dI with dI = 2.2994 from the rhs example.
    CHECK(jet.dy1 == doctest::Approx(0.07 * 2.2994).epsilon(1e-12));
}

TEST_CASE("output jets of the full model reject Q >= N")
{
    CHECK_THROWS_AS(output_jets({0.0, 1.0, 1e5, 0.0}, kReference, ModelKind::Full), DomainError);
}

TEST_CASE("jet identities from the quarantine dynamics hold along trajectories")
{
    for (auto kind : {ModelKind::Full, ModelKind::Simplified}) {
        const auto traj = reference_trajectory(kind, 0.01);
        for (std::size_t i = 0; i < traj.size(); i += 25) {
            const OutputJet jet = output_jets(EpidemicState::from_array(traj.states[i]), kReference, kind);
            const double rho = kReference.rho;
            CHECK(jet.dy2 == doctest::Approx(jet.y1 - rho * jet.y2).epsilon(1e-10));
            CHECK(jet.d2y2 == doctest::Approx(jet.dy1 - rho * jet.dy2).epsilon(1e-10));
        }
    }
}

TEST_CASE("jet derivatives agree with finite differences of the trajectory")
{
    // Oracle: 4th-order central differences of y1 sampled on a fine RK4 grid.
    const double h = 1e-3;
    for (auto kind : {ModelKind::Full, ModelKind::Simplified}) {
        const auto traj = reference_trajectory(kind, h, 6.0);
        const OutputSeries y = observe(traj, kReference.alpha);
        for (std::size_t i : {std::size_t{1000}, std::size_t{3000}, std::size_t{5000}}) {
            auto f = [&](int off) { return y.y1[i + off]; };
            const double d1 = (-f(2) + 8.0 * f(1) - 8.0 * f(-1) + f(-2)) / (12.0 * h);
            const double d2 = (-f(2) + 16.0 * f(1) - 30.0 * f(0) + 16.0 * f(-1) - f(-2)) / (12.0 * h * h);
            const double d3 = (-f(3) + 8.0 * f(2) - 13.0 * f(1) + 13.0 * f(-1) - 8.0 * f(-2) + f(-3)) / (8.0 * h * h * h);

            const OutputJet jet = output_jets(EpidemicState::from_array(traj.states[i]), kReference, kind);
            CHECK(std::abs(jet.dy1 - d1) / std::abs(jet.dy1) < 1e-8);
            CHECK(std::abs(jet.d2y1 - d2) / std::abs(jet.d2y1) < 1e-6);
            CHECK(std::abs(jet.d3y1 - d3) / std::abs(jet.d3y1) < 1e-4);
        }
    }
}

TEST_CASE("early-epidemic log-growth of y1 stays close to delta - rho")
{
    const double delta_minus_rho = kReference.beta - kReference.alpha - kReference.rho;
    for (auto kind : {ModelKind::Full, ModelKind::Simplified}) {
        const auto traj = reference_trajectory(kind, 0.01);
        for (std::size_t i = 0; i < traj.size(); i += 10) {
            const auto& x = traj.states[i];
            const OutputJet jet = output_jets(EpidemicState::from_array(x), kReference, kind);
            const double gap = std::abs(jet.dy1 / jet.y1 - delta_minus_rho);
            CHECK(gap <= kReference.beta * (1.0 - x[0] / kReference.N) * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("add_noise: zero sigma and determinism")
{
    const OutputSeries y = observe(reference_trajectory(ModelKind::Full, 0.01), kReference.alpha);
    const OutputSeries same = add_noise(y, {0.0, 7});
    CHECK(same.y1 == y.y1);
    CHECK(same.y2 == y.y2);

    const OutputSeries a = add_noise(y, {0.05, 7});
    const OutputSeries b = add_noise(y, {0.05, 7});
    const OutputSeries c = add_noise(y, {0.05, 8});
    CHECK(a.y1 == b.y1);
    CHECK(a.y2 == b.y2);
    CHECK(a.y1 != c.y1);
    CHECK(a.times == y.times);

    CHECK_THROWS_AS(add_noise(y, {-0.1, 1}), std::invalid_argument);
}

TEST_CASE("add_noise: relative standard deviation")
{
    OutputSeries flat;
    flat.times.assign(10000, 0.0);
    flat.y1.assign(10000, 100.0);
    flat.y2.assign(10000, 100.0);
    const OutputSeries noisy = add_noise(flat, {0.05, 123});
    for (const auto* v : {&noisy.y1, &noisy.y2}) {
        const double mean = std::accumulate(v->begin(), v->end(), 0.0) / static_cast<double>(v->size());
        double ss = 0.0;
        for (double x : *v) {
            ss += (x - mean) * (x - mean);
        }
        const double sd = std::sqrt(ss / static_cast<double>(v->size() - 1));
        CHECK(sd >= 4.8);
        CHECK(sd <= 5.2);
        CHECK(std::abs(mean - 100.0) < 0.2);
    }
}

TEST_CASE("add_noise clamps at zero")
{
    OutputSeries flat;
    flat.times.assign(2000, 0.0);
    flat.y1.assign(2000, 1.0);
    flat.y2.assign(2000, 1.0);
    const OutputSeries noisy = add_noise(flat, {2.0, 5});
    std::size_t zeros = 0;
    for (double v : noisy.y1) {
        CHECK(v >= 0.0);
        zeros += v == 0.0 ? 1 : 0;
    }
    CHECK(zeros > 0);
}

TEST_CASE("moving average")
{
    const std::vector<double> ramp{0, 1, 2, 3, 4};
    const auto m = moving_average(ramp, 3);
    REQUIRE(m.size() == 5);
    CHECK(m[0] == doctest::Approx(0.5));
    CHECK(m[1] == doctest::Approx(1.0));
    CHECK(m[2] == doctest::Approx(2.0));
    CHECK(m[3] == doctest::Approx(3.0));
    CHECK(m[4] == doctest::Approx(3.5));

    CHECK(moving_average(ramp, 1) == ramp);

    const std::vector<double> flat(20, 3.25);
    for (double v : moving_average(flat, 7)) {
        CHECK(v == doctest::Approx(3.25));
    }

    CHECK_THROWS_AS(moving_average(ramp, 2), std::invalid_argument);
    CHECK_THROWS_AS(moving_average(ramp, 0), std::invalid_argument);
    CHECK_THROWS_AS(moving_average(ramp, 7), std::invalid_argument);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    const auto gaps = moving_average(std::vector<double>{nan, nan, 2.0, nan, 4.0}, 3);
    CHECK(std::isnan(gaps[0]));
    CHECK(gaps[1] == doctest::Approx(2.0));
    CHECK(gaps[3] == doctest::Approx(3.0));
}
