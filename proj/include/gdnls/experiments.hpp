#pragma once

#include "gdnls/config.hpp"
#include "gdnls/evolution.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace gdnls {

// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Fraction of mass sitting in the outer 5% of the domain on each side.
double boundary_mass_fraction(const Field& u);

// Throws guard_violation if any observation of a truncated-line run carries
// more than 1e-10 of its mass in the outer 5%.
void enforce_boundary_guard(const Trajectory& traj);

struct SimulateResult {
    Trajectory traj;
    std::string conserved_csv;
};

struct ConvergeResult {
    std::vector<double> m_values;
    std::vector<double> errors;  // sup_t ||u_m - u_ref||_{L2}^2
    double slope = 0.0;          // of error against 1/m
    bool monotone = false;
};

struct ThresholdRow {
    double amplitude = 0.0;
    double h1_initial = 0.0;
    double me_sum = 0.0;
    double f_delta = 0.0;
    bool condition_met = false;
    double h1_sup = 0.0;
    bool stayed_below_delta = false;
    double l2_initial = 0.0;
    bool wu_ok = false;  // ||phi||_{L2} < sqrt(4 pi), meaningful for sigma = 1
    bool failed = false;
};

struct ThresholdScanResult {
    double delta = 0.0;
    double f_delta = 0.0;
    std::vector<ThresholdRow> rows;
};

struct NormProbeRow {
    std::string function_id;
    double p = 0.0;
    double lp = 0.0;
    double ratio = 0.0;
    double yudovich_rate = 0.0;  // (cmt/sqrt(p))^p, display only
};

struct NormProbeResult {
    std::vector<NormProbeRow> rows;
    std::map<std::string, double> max_ratio;
};

struct ChristCompareResult {
    std::vector<double> times;
    std::vector<double> s_values;
    // norms[i][k]: H^{s_i} norm at observation k, one pair of arms per s
    std::vector<std::vector<double>> gdnls_norms;
    std::vector<std::vector<double>> christ_norms;
};

struct WeakSigmaResult {
    double h1_cap = 0.0;
    double h1_sup = 0.0;
    bool cap_ok = false;
    double max_e_drift = 0.0;  // max_t E(t) - E(0)
    bool energy_inequality_ok = false;
    double mass_drift = 0.0;
};

struct YosidaTestResult {
    std::vector<std::pair<std::string, double>> rows;  // property, max violation
};

// Each runner validates, executes, and writes its files into out (skipped when
// out is empty). Randomized batteries draw from the explicit seed.
SimulateResult run_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out);
ConvergeResult run_converge(const ExperimentConfig& cfg, const std::filesystem::path& out);
ThresholdScanResult run_threshold_scan(const ExperimentConfig& cfg,
                                       const std::filesystem::path& out);
NormProbeResult run_norm_probe(const ExperimentConfig& cfg, const std::filesystem::path& out);
ChristCompareResult run_christ_compare(const ExperimentConfig& cfg,
                                       const std::filesystem::path& out);
WeakSigmaResult run_weak_sigma(const ExperimentConfig& cfg, const std::filesystem::path& out);
YosidaTestResult run_yosida_test(const ExperimentConfig& cfg, const std::filesystem::path& out,
                                 std::uint64_t seed);

// Dispatch by cfg.experiment; returns the CLI exit status (0 on success).
int run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out,
                   std::uint64_t seed);

} // namespace gdnls
