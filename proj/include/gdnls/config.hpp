#pragma once

#include "gdnls/evolution.hpp"
#include "gdnls/presets.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace gdnls {

// One JSON file per run. Required keys: experiment, grid{a,b,n}, sigma, and
// data for the experiments that evolve a field. Everything else defaults.
struct ExperimentConfig {
    std::string experiment;
    double grid_a = 0.0;
    double grid_b = 1.0;
    int grid_n = 0;
    DataPreset data;
    double sigma = 1.0;
    SolverParams solver;
    bool boundary_guard = false;  // defaults to true for non-sine data

    // converge
    std::vector<double> m_list;
    double m_ref = 0.0;

    // threshold-scan
    double c = 1.0;
    std::vector<double> amplitudes;

    // norm-probe
    std::vector<double> p_list;
    double cmt = 1.0;  // user-supplied C(M) T for the displayed uniqueness rate
    std::vector<std::string> functions;

    // christ-compare
    std::vector<double> s_list;

    // weak-sigma-run
    double cap_c = 1.0;
    double tol_drift = 1e-4;

    Grid grid() const { return make_grid(grid_a, grid_b, grid_n); }
};

// Parses and fully validates; throws config_error naming every invalid field.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& file);

} // namespace gdnls
