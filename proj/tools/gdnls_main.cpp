#include "gdnls/config.hpp"
#include "gdnls/errors.hpp"
#include "gdnls/experiments.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;
constexpr int kExitGuard = 3;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gdnls - numerical experiments for the generalized derivative NLS equation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 42;

    const std::vector<std::string> commands = {"simulate",       "converge",      "threshold-scan",
                                               "norm-probe",     "christ-compare", "weak-sigma-run",
                                               "yosida-test"};
    for (const std::string& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory")->required();
        sub->add_option("--seed", seed, "seed for randomized property batteries");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        gdnls::ExperimentConfig cfg = gdnls::load_config(config_path);
        if (cfg.experiment != command) {
            std::cerr << "error: config requests experiment '" << cfg.experiment
                      << "' but the command line says '" << command << "'\n";
            return kExitConfig;
        }
        gdnls::run_experiment(cfg, out_dir, seed);
    } catch (const gdnls::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const gdnls::guard_violation& e) {
        std::cerr << "guard violation: " << e.what() << '\n';
        return kExitGuard;
    } catch (const gdnls::solver_error& e) {
        std::cerr << "solver failure at t = " << e.time << " (last residual " << e.last_residual
                  << "): " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolver;
    }
    return 0;
}
