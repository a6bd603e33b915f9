#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fieldlab/experiments.hpp"
#include "fieldlab/lattice.hpp"

int main(int argc, char** argv) {
    CLI::App app{"fieldlab: batch experiment runner"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::vector<std::string> overrides;
    bool seed_given = false;
    unsigned long long seed = 0;

    CLI::App* run = app.add_subcommand("run", "run one experiment from a JSON config");
    run->add_option("--config", config_path, "config file path")->required();
    run->add_option("--out", out_dir, "output directory for report.json and CSVs");
    run->add_option("--seed", seed, "sampling seed, overriding the config")
        ->each([&](const std::string&) { seed_given = true; });
    run->add_option("--override", overrides, "key=value parameter override, repeatable");

    CLI11_PARSE(app, argc, argv);

    try {
        fieldlab::ExperimentConfig config = fieldlab::ExperimentConfig::from_file(config_path);
        if (seed_given) config.seed = seed;
        for (const std::string& ov : overrides) config.apply_override(ov);

        const auto start = std::chrono::steady_clock::now();
        const fieldlab::RunReport report = fieldlab::run_experiment(config, out_dir);
        const auto elapsed = std::chrono::duration<double>(
            std::chrono::steady_clock::now() - start);

        // wall time stays out of the report so identical configs give
        // byte-identical files
        std::cout << report.experiment << ": " << (report.all_pass ? "pass" : "FAIL")
                  << " (" << elapsed.count() << " s)\n";
        for (const std::string& path : report.artifacts) {
            std::cout << "  wrote " << path << "\n";
        }
        return report.all_pass ? 0 : 1;
    } catch (const fieldlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const fieldlab::NumericalGuardError& e) {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
