#include "siqr/scenario.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace siqr {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_plain_number(std::string_view key, std::string_view text)
{
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
    }
    return v;
}

double parse_number(std::string_view key, std::string_view text)
{
    text = trim(text);
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const double num = parse_plain_number(key, trim(text.substr(0, slash)));
        const double den = parse_plain_number(key, trim(text.substr(slash + 1)));
        if (den == 0.0) {
            throw ConfigError(std::string(key), "division by zero in '" + std::string(text) + "'");
        }
        return num / den;
    }
    return parse_plain_number(key, text);
}

std::vector<double> parse_list(std::string_view key, std::string_view text)
{
    std::vector<double> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_number(key, text.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text)
{
    text = trim(text);
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(text) + "'");
    }
    return v;
}

template <std::size_t Size>
std::array<double, Size> parse_fixed_list(std::string_view key, std::string_view text)
{
    const auto values = parse_list(key, text);
    if (values.size() != Size) {
        throw ConfigError(std::string(key), "expected " + std::to_string(Size) + " values, got " +
                                                std::to_string(values.size()));
    }
    std::array<double, Size> out{};
    std::copy(values.begin(), values.end(), out.begin());
    return out;
}

void require(bool condition, const char* key, const char* message)
{
    if (!condition) {
        throw ConfigError(key, message);
    }
}

} // namespace

void Scenario::validate() const
{
    require(params.beta > 0.0, "params.beta", "must be > 0");
    require(params.rho > 0.0, "params.rho", "must be > 0");
    require(params.alpha > 0.0, "params.alpha", "must be > 0");
    require(params.N > 0.0, "params.N", "must be > 0");
    require(I0 > 0.0, "init.I0", "must be > 0");
    require(Q0 >= 0.0, "init.Q0", "must be >= 0");
    require(R0 >= 0.0, "init.R0", "must be >= 0");
    require(I0 + Q0 + R0 < params.N, "init.I0", "I0 + Q0 + R0 must leave a positive susceptible population");
    require(dt > 0.0, "sim.dt", "must be > 0");
    require(horizon >= dt, "sim.horizon", "must be at least one step (>= sim.dt)");
    for (double l : lambda) {
        require(l > 0.0, "poles.lambda", "poles must be > 0");
    }
    for (double m : mu) {
        require(m > 0.0, "poles.mu", "poles must be > 0");
    }
    require(noise.relative_sigma >= 0.0, "noise.relative_sigma", "must be >= 0");
    require(smooth_window >= 1 && smooth_window % 2 == 1, "smooth.window", "must be an odd number >= 1");
    require(smooth_window <= integrator().steps() + 1, "smooth.window", "must not exceed the number of samples");
    require(!out_dir.empty(), "out.dir", "must not be empty");
}

Scenario parse_scenario(std::string_view text)
{
    Scenario sc;

    using Setter = std::function<void(std::string_view key, std::string_view value)>;
    auto number = [](double& field) -> Setter {
        return [&field](std::string_view k, std::string_view v) { field = parse_number(k, v); };
    };
    const std::map<std::string, Setter, std::less<>> setters{
        {"model.kind",
         [&](std::string_view k, std::string_view v) {
             if (v == "full") {
                 sc.kind = ModelKind::Full;
             } else if (v == "simplified") {
                 sc.kind = ModelKind::Simplified;
             } else {
                 throw ConfigError(std::string(k), "expected 'full' or 'simplified'");
             }
         }},
        {"params.beta", number(sc.params.beta)},
        {"params.rho", number(sc.params.rho)},
        {"params.alpha", number(sc.params.alpha)},
        {"params.N", number(sc.params.N)},
        {"init.I0", number(sc.I0)},
        {"init.Q0", number(sc.Q0)},
        {"init.R0", number(sc.R0)},
        {"sim.dt", number(sc.dt)},
        {"sim.horizon", number(sc.horizon)},
        {"poles.lambda", [&](std::string_view k, std::string_view v) { sc.lambda = parse_fixed_list<4>(k, v); }},
        {"poles.mu", [&](std::string_view k, std::string_view v) { sc.mu = parse_fixed_list<3>(k, v); }},
        {"noise.relative_sigma", number(sc.noise.relative_sigma)},
        {"noise.seed", [&](std::string_view k, std::string_view v) { sc.noise.seed = parse_unsigned(k, v); }},
        {"smooth.window",
         [&](std::string_view k, std::string_view v) { sc.smooth_window = static_cast<std::size_t>(parse_unsigned(k, v)); }},
        {"observer.delta0", number(sc.observer.delta0)},
        {"observer.rho0", number(sc.observer.rho0)},
        {"observer.v0", number(sc.observer.v0)},
        {"observer.k0", number(sc.observer.k0)},
        {"out.dir", [&](std::string_view, std::string_view v) { sc.out_dir = std::string(v); }},
    };

    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw ConfigError(std::string(key), "unknown key");
        }
        if (!seen.insert(std::string(key)).second) {
            throw ConfigError(std::string(key), "key given more than once");
        }
        if (value.empty()) {
            throw ConfigError(std::string(key), "missing value");
        }
        it->second(key, value);
    }

    sc.validate();
    return sc;
}

} // namespace siqr
