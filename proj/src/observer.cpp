#include "siqr/observer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace siqr {

double sigma(std::span<const double> values, std::size_t k)
{
    const std::size_t n = values.size();
    if (k < 1 || k > n) {
        throw std::invalid_argument("sigma: order k must satisfy 1 <= k <= n (k = " + std::to_string(k) +
                                    ", n = " + std::to_string(n) + ")");
    }
    // e[j] holds the order-j polynomial of the prefix processed so far.
    std::vector<double> e(k + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = std::min(k, i + 1); j >= 1; --j) {
            e[j] += values[i] * e[j - 1];
        }
    }
    return e[k];
}

GainSet gains(const std::array<double, 4>& lambda, const std::array<double, 3>& mu)
{
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!std::all_of(lambda.begin(), lambda.end(), positive) || !std::all_of(mu.begin(), mu.end(), positive)) {
        throw std::invalid_argument("observer poles must be positive");
    }

    GainSet g;
    g.lambda = lambda;
    g.mu = mu;
    const double s1 = sigma(lambda, 1);
    const double s2 = sigma(lambda, 2);
    const double s3 = sigma(lambda, 3);
    const double s4 = sigma(lambda, 4);
    g.K[0] = s1;
    g.K[1] = s1 + s3;
    g.K[2] = -s4;
    g.K[3] = -(s2 + s4 + 1.0);
    g.K[4] = sigma(mu, 1);
    g.K[5] = sigma(mu, 2);
    g.K[6] = -sigma(mu, 3);
    g.decay_bound = std::min(*std::min_element(lambda.begin(), lambda.end()), *std::min_element(mu.begin(), mu.end()));
    return g;
}

ObserverState initial_observer_state(double y1_0, double y2_0, const ObserverDefaults& d)
{
    if (!(y1_0 > 0.0) || !(y2_0 > 0.0)) {
        throw MeasurementGuardError("observer initialisation needs positive first measurements");
    }
    return {std::log(y1_0), std::log(y2_0), d.delta0, d.rho0, y1_0, d.v0, d.k0};
}

ObserverState observer_rhs(const ObserverState& x, double y1, double y2, const GainSet& g, double N)
{
    if (!(y1 > 0.0) || !(y2 > 0.0)) {
        throw MeasurementGuardError("observer needs strictly positive measurements y1, y2");
    }
    const auto& K = g.K;
    const double innov_z1 = x.z1_hat - std::log(y1);
    const double innov_z2 = x.z2_hat - std::log(y2);
    const double innov_y1 = x.y1_hat - y1;

    ObserverState d;
    d.z1_hat = x.delta_hat - x.rho_hat - K[0] * innov_z1;
    d.z2_hat = y1 / y2 - x.rho_hat - K[1] * innov_z1;
    d.delta_hat = -K[2] * innov_z1;
    d.rho_hat = -K[3] * innov_z1 - innov_z2;
    d.y1_hat = x.v_hat * y1 - K[4] * y1 * innov_y1;
    d.v_hat = -x.k_hat * y1 / N - K[5] * y1 * innov_y1;
    d.k_hat = -K[6] * N * y1 * innov_y1;
    return d;
}

Estimate estimate(const ObserverState& x)
{
    const double k = x.k_hat;
    const double delta = x.delta_hat;
    const double disc = k * k - 4.0 * delta * k;

    Estimate e;
    e.rho_hat = x.rho_hat;
    e.clamp_active = disc < 0.0;
    if (e.clamp_active) {
        e.beta_hat = 0.5 * k;
    } else if (k > 0.0) {
        // (k - sqrt(disc)) / 2 rewritten as k delta / ((k + sqrt(disc)) / 2) to avoid cancellation.
        e.beta_hat = 2.0 * k * delta / (k + std::sqrt(disc));
    } else {
        e.beta_hat = 0.5 * (k - std::sqrt(disc));
    }
    e.alpha_hat = e.beta_hat - delta;
    e.non_physical = !(e.beta_hat > 0.0) || !(e.alpha_hat > 0.0);
    return e;
}

GuardedSeries guard_measurements(const OutputSeries& measurements)
{
    GuardedSeries out;
    out.series = measurements;
    auto guard = [](std::vector<double>& v, const char* name) {
        double smallest = std::numeric_limits<double>::infinity();
        for (double y : v) {
            if (y > 0.0) {
                smallest = std::min(smallest, y);
            }
        }
        if (!std::isfinite(smallest)) {
            throw MeasurementGuardError(std::string("measurement series ") + name + " has no positive sample");
        }
        std::size_t count = 0;
        double last = smallest;
        for (double& y : v) {
            if (y > 0.0) {
                last = y;
            } else {
                y = last;
                ++count;
            }
        }
        return count;
    };
    out.substitutions_y1 = guard(out.series.y1, "y1");
    out.substitutions_y2 = guard(out.series.y2, "y2");
    return out;
}

ObserverRun run_observer(const OutputSeries& measurements, const GainSet& g, double N, const ObserverState& init,
                         const IntegratorConfig& cfg)
{
    InputSeries<2> inputs;
    inputs.times = measurements.times;
    inputs.values.reserve(measurements.size());
    for (std::size_t i = 0; i < measurements.size(); ++i) {
        inputs.values.push_back({measurements.y1[i], measurements.y2[i]});
    }

    auto field = [&](const Vec<7>& x, const Vec<2>& u, double t) {
        if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); })) {
            throw DivergenceError("observer state is not finite", t);
        }
        return observer_rhs(ObserverState::from_array(x), u[0], u[1], g, N).to_array();
    };

    ObserverRun run;
    run.trajectory = integrate_driven<7, 2>(field, init.to_array(), inputs, cfg);

    EstimateSeries& es = run.estimates;
    const std::size_t n = run.trajectory.size();
    es.times = run.trajectory.times;
    for (auto* v : {&es.rho_hat, &es.beta_hat, &es.alpha_hat, &es.delta_hat, &es.k_hat, &es.I_hat}) {
        v->reserve(n);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& xs = run.trajectory.states[i];
        if (!std::all_of(xs.begin(), xs.end(), [](double v) { return std::isfinite(v); })) {
            throw DivergenceError("observer state is not finite", es.times[i]);
        }
        const ObserverState x = ObserverState::from_array(xs);
        const Estimate e = estimate(x);
        const double y1 = inputs.at(es.times[i])[0];
        es.rho_hat.push_back(e.rho_hat);
        es.beta_hat.push_back(e.beta_hat);
        es.alpha_hat.push_back(e.alpha_hat);
        es.delta_hat.push_back(x.delta_hat);
        es.k_hat.push_back(x.k_hat);
        es.I_hat.push_back(e.alpha_hat > kAlphaFloor ? y1 / e.alpha_hat : std::numeric_limits<double>::quiet_NaN());
        es.clamp_active.push_back(e.clamp_active);
        es.non_physical.push_back(e.non_physical);
    }
    return run;
}

Eigen::Matrix4d assemble_M1(const GainSet& g)
{
    const auto& K = g.K;
    Eigen::Matrix4d M;
    // clang-format off
    M << -K[0],  0.0, 1.0, -1.0,
         -K[1],  0.0, 0.0, -1.0,
         -K[2],  0.0, 0.0,  0.0,
         -K[3], -1.0, 0.0,  0.0;
    // clang-format on
    return M;
}

Eigen::Matrix3d assemble_M2(const GainSet& g, double N)
{
    const auto& K = g.K;
    Eigen::Matrix3d M;
    // clang-format off
    M << -K[4],     1.0,  0.0,
         -K[5],     0.0, -1.0 / N,
         -K[6] * N, 0.0,  0.0;
    // clang-format on
    return M;
}

namespace {

double cofactor_det(const Eigen::MatrixXd& A)
{
    const Eigen::Index n = A.rows();
    if (n == 1) {
        return A(0, 0);
    }
    if (n == 2) {
        return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    }
    double det = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (A(0, j) == 0.0) {
            continue;
        }
        Eigen::MatrixXd minor(n - 1, n - 1);
        for (Eigen::Index r = 1; r < n; ++r) {
            for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
                if (c != j) {
                    minor(r - 1, cc++) = A(r, c);
                }
            }
        }
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        det += sign * A(0, j) * cofactor_det(minor);
    }
    return det;
}

} // namespace

std::vector<double> char_poly(const Eigen::MatrixXd& M)
{
    if (M.rows() != M.cols()) {
        throw std::invalid_argument("char_poly: matrix must be square");
    }
    const Eigen::Index n = M.rows();
    if (n < 1 || n > 4) {
        throw std::invalid_argument("char_poly: only dimensions 1 to 4 are supported");
    }

    // det(sI - M) = sum_k (-1)^k E_k(M) s^(n-k), E_k = sum of k x k principal minors.
    std::vector<double> coeffs(static_cast<std::size_t>(n) + 1, 0.0);
    coeffs[0] = 1.0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                idx.push_back(i);
            }
        }
        const auto k = static_cast<Eigen::Index>(idx.size());
        Eigen::MatrixXd sub(k, k);
        for (Eigen::Index r = 0; r < k; ++r) {
            for (Eigen::Index c = 0; c < k; ++c) {
                sub(r, c) = M(idx[r], idx[c]);
            }
        }
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        coeffs[static_cast<std::size_t>(k)] += sign * cofactor_det(sub);
    }
    return coeffs;
}

std::vector<double> poly_from_negated_roots(std::span<const double> roots)
{
    std::vector<double> coeffs{1.0};
    for (std::size_t k = 1; k <= roots.size(); ++k) {
        coeffs.push_back(sigma(roots, k));
    }
    return coeffs;
}

namespace {

double max_relative_error(const std::vector<double>& got, const std::vector<double>& want)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        const double scale = std::abs(want[i]) > 0.0 ? std::abs(want[i]) : 1.0;
        worst = std::max(worst, std::abs(got[i] - want[i]) / scale);
    }
    return worst;
}

} // namespace

PolePlacementReport verify_pole_placement(const GainSet& g, double N)
{
    const double e1 = max_relative_error(char_poly(assemble_M1(g)), poly_from_negated_roots(g.lambda));
    const double e2 = max_relative_error(char_poly(assemble_M2(g, N)), poly_from_negated_roots(g.mu));
    return {e1 < kPolePlacementTolerance, e2 < kPolePlacementTolerance, std::max(e1, e2)};
}

PolePlacementReport verify_pole_placement(const std::array<double, 4>& lambda, const std::array<double, 3>& mu,
                                          double N)
{
    return verify_pole_placement(gains(lambda, mu), N);
}

} // namespace siqr
