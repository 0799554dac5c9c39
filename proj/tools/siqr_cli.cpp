// Command-line front end: simulate | observe | estimate | identify | check.
//
// Exit status: 0 success, 2 configuration error, 3 observer divergence,
// 1 any other failure.

#include "siqr/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 3;

siqr::Scenario load_scenario(const std::string& path)
{
    if (path.empty()) {
        return siqr::parse_scenario("");
    }
    std::ifstream in(path);
    if (!in) {
        throw siqr::ConfigError("--config", "cannot open '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return siqr::parse_scenario(text.str());
}

std::ofstream open_output(const siqr::Scenario& sc, const std::string& name)
{
    std::filesystem::create_directories(sc.out_dir);
    const auto path = std::filesystem::path(sc.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"SIQR epidemic simulation, identification and observer-based estimation"};
    app.require_subcommand(1, 1);

    std::string config_path;
    bool no_noise = false;
    double t_identify = 0.0;

    auto* simulate = app.add_subcommand("simulate", "integrate the model and write truth.csv");
    auto* observe = app.add_subcommand("observe", "write clean and noisy outputs to measurements.csv");
    auto* estimate = app.add_subcommand("estimate", "run the observer and write estimates.csv + summary.txt");
    auto* identify = app.add_subcommand("identify", "recover parameters from exact output derivatives at --t");
    auto* check = app.add_subcommand("check", "report assumptions, initial inequalities and pole placement");
    for (auto* sub : {simulate, observe, estimate, identify, check}) {
        sub->add_option("--config", config_path, "scenario file (defaults apply when omitted)");
    }
    for (auto* sub : {observe, estimate}) {
        sub->add_flag("--no-noise", no_noise, "disable measurement noise");
    }
    identify->add_option("--t", t_identify, "identification instant (days)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        const siqr::Scenario sc = load_scenario(config_path);

        if (simulate->parsed()) {
            auto out = open_output(sc, "truth.csv");
            siqr::write_truth_csv(out, siqr::simulate(sc));
        } else if (observe->parsed()) {
            const auto truth = siqr::simulate(sc);
            auto out = open_output(sc, "measurements.csv");
            siqr::write_measurements_csv(out, siqr::measure(sc, truth, !no_noise));
        } else if (estimate->parsed()) {
            const auto result = siqr::run_estimation(sc, !no_noise);
            auto csv = open_output(sc, "estimates.csv");
            siqr::write_estimates_csv(csv, result);
            const std::string summary = siqr::format_summary(sc, result);
            auto txt = open_output(sc, "summary.txt");
            txt << summary;
            std::cout << summary;
        } else if (identify->parsed()) {
            std::cout << siqr::format_identify(siqr::run_identify(sc, t_identify));
        } else if (check->parsed()) {
            std::cout << siqr::format_check(siqr::run_check(sc));
        }
    } catch (const siqr::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const siqr::DivergenceError& e) {
        std::cerr << "observer diverged: " << e.what() << "\n";
        return kExitDivergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
