#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "heatbound/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"heatbound: numerical heat-kernel bounds and metric geometry on non-convex regions"};
    app.require_subcommand(1);

    std::string config_path;
    heatbound::RunOptions options;
    auto* run = app.add_subcommand("run", "run a scenario config");
    run->add_option("--config", config_path, "scenario JSON file")->required();
    run->add_option("--out-dir", options.out_dir, "output directory (default .)");
    run->add_option("--threads", options.threads, "within-stage worker threads");
    run->add_flag("--verbose", options.verbose, "per-check progress on stderr");

    auto* list = app.add_subcommand("list", "print the shape catalog and bundled scenarios");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        std::fputs(heatbound::catalog_text().c_str(), stdout);
        return 0;
    }

    try {
        const heatbound::Scenario scenario = heatbound::Scenario::from_file(config_path);
        const heatbound::ScenarioResult result = heatbound::run_scenario(scenario, options);
        for (const auto& check : result.checks)
            std::printf("[%s] %s: %s\n", check.pass ? "PASS" : "FAIL", check.name.c_str(),
                        check.detail.c_str());
        for (const auto& file : result.written_files) std::printf("wrote %s\n", file.c_str());
        return result.exit_code;
    } catch (const heatbound::SchemaError& e) {
        std::fprintf(stderr, "schema error: %s\n", e.what());
        return 2;
    } catch (const heatbound::BudgetError& e) {
        std::fprintf(stderr, "budget exceeded: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
