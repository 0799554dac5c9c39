#include "siqr/scenario.hpp"

#include <doctest.h>

#include <string>

using namespace siqr;

namespace {

std::string error_key(std::string_view text)
{
    try {
        parse_scenario(text).validate();
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "<none>";
}

} // namespace

TEST_CASE("empty document gives the reference scenario")
{
    for (const char* text : {"", "\n\n", "# only a comment\n   \n"}) {
        const Scenario sc = parse_scenario(text);
        CHECK(sc.kind == ModelKind::Full);
        CHECK(sc.params.alpha == 0.07);
        CHECK(sc.params.beta == 0.4);
        CHECK(sc.params.rho == 0.1);
        CHECK(sc.params.N == 1e5);
        CHECK(sc.I0 == 10.0);
        CHECK(sc.dt == 0.01);
        CHECK(sc.horizon == 10.0);
        CHECK(sc.lambda == std::array<double, 4>{1.0, 1.5, 2.0, 2.5});
        CHECK(sc.mu[0] == 1.0 / 13000.0);
        CHECK(sc.noise.relative_sigma == 0.05);
        CHECK(sc.observer.k0 == 1.0);
        CHECK_NOTHROW(sc.validate());
    }
    const EpidemicState x0 = Scenario{}.initial_state();
    CHECK(x0.total() == doctest::Approx(1e5));
    CHECK(x0.S == 1e5 - 15.0);
}

TEST_CASE("all keys are accepted")
{
    const Scenario sc = parse_scenario(R"(
# a full override
model.kind = simplified
params.beta = 0.5
params.rho = 0.2     # trailing comment
params.alpha = 0.05
params.N = 2e6
init.I0 = 20
init.Q0 = 0
init.R0 = 1
sim.dt = 0.005
sim.horizon = 5
poles.lambda = 2, 3, 4, 5
poles.mu = 1/10000, 1/20000, 1/30000
noise.relative_sigma = 0.1
noise.seed = 42
smooth.window = 51
observer.delta0 = 0.3
observer.rho0 = 0.15
observer.v0 = 0.2
observer.k0 = 3
out.dir = results/run 1
)");
    CHECK(sc.kind == ModelKind::Simplified);
    CHECK(sc.params.beta == 0.5);
    CHECK(sc.params.rho == 0.2);
    CHECK(sc.params.alpha == 0.05);
    CHECK(sc.params.N == 2e6);
    CHECK(sc.I0 == 20.0);
    CHECK(sc.Q0 == 0.0);
    CHECK(sc.R0 == 1.0);
    CHECK(sc.dt == 0.005);
    CHECK(sc.horizon == 5.0);
    CHECK(sc.lambda == std::array<double, 4>{2.0, 3.0, 4.0, 5.0});
    CHECK(sc.mu == std::array<double, 3>{1.0 / 10000.0, 1.0 / 20000.0, 1.0 / 30000.0});
    CHECK(sc.noise.relative_sigma == 0.1);
    CHECK(sc.noise.seed == 42);
    CHECK(sc.smooth_window == 51);
    CHECK(sc.observer.delta0 == 0.3);
    CHECK(sc.observer.rho0 == 0.15);
    CHECK(sc.observer.v0 == 0.2);
    CHECK(sc.observer.k0 == 3.0);
    CHECK(sc.out_dir == "results/run 1");
    CHECK_NOTHROW(sc.validate());
}

TEST_CASE("positivity errors name the key")
{
    CHECK(error_key("params.beta = -1") == "params.beta");
    CHECK(error_key("params.rho = 0") == "params.rho");
    CHECK(error_key("params.N = -5") == "params.N");
    CHECK(error_key("sim.dt = 0") == "sim.dt");
    CHECK(error_key("poles.mu = 1, -1, 1") == "poles.mu");
    CHECK(error_key("noise.relative_sigma = -0.1") == "noise.relative_sigma");
    CHECK(error_key("smooth.window = 4") == "smooth.window");
    CHECK(error_key("init.I0 = 99990\ninit.Q0 = 20") == "init.I0");
}

TEST_CASE("list arity")
{
    CHECK(error_key("poles.lambda = 1, 1.5, 2") == "poles.lambda");
    CHECK(error_key("poles.lambda = 1, 1.5, 2, 2.5, 3") == "poles.lambda");
    CHECK(error_key("poles.mu = 1, 2") == "poles.mu");
}

TEST_CASE("syntax errors")
{
    CHECK(error_key("params.gamma = 1") == "params.gamma");
    CHECK(error_key("params.beta = 0.4\nparams.beta = 0.5") == "params.beta");
    CHECK(error_key("params.beta =") == "params.beta");
    CHECK(error_key("params.beta = abc") == "params.beta");
    CHECK(error_key("params.beta = 1/0") == "params.beta");
    CHECK(error_key("model.kind = sir") == "model.kind");
    CHECK(error_key("noise.seed = -3") == "noise.seed");
    CHECK_THROWS_AS(parse_scenario("no equals sign here"), ConfigError);
}
