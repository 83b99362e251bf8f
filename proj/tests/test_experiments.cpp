#include "gdnls/csv.hpp"
#include "gdnls/errors.hpp"
#include "gdnls/experiments.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace gdnls;

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("gdnls_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

const char* kSimulateCfg = R"({
  "experiment": "simulate",
  "grid": {"a": 0.0, "b": 1.0, "n": 199},
  "data": {"kind": "sine", "k": 1, "amplitude": 0.4},
  "sigma": 1.0,
  "solver": {"dt": 1e-3, "t_end": 0.05}
})";

} // namespace

TEST_CASE("parse_config fills documented defaults") {
    const ExperimentConfig cfg = parse_config(kSimulateCfg);
    CHECK(cfg.experiment == "simulate");
    CHECK(cfg.solver.fp_tol == 1e-12);
    CHECK(cfg.solver.observe_every == 10);
    CHECK(cfg.solver.fp_max_iter == 100);
    CHECK(cfg.solver.kind.type == NonlinearityType::full);
    CHECK_FALSE(cfg.boundary_guard);  // sine data models the bounded interval
}

TEST_CASE("parse_config names offending keys") {
    auto expect_mentions = [](const std::string& text, const std::string& key) {
        try {
            (void)parse_config(text);
            FAIL_CHECK("expected a config error mentioning " << key);
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find(key) != std::string::npos);
        }
    };
    expect_mentions(R"({"experiment":"simulate","grid":{"a":0,"b":1,"n":99},
                        "data":{"kind":"sine"},"sigma":-1})", "sigma");
    expect_mentions(R"({"experiment":"simulate","grid":{"a":0,"b":1,"n":3},
                        "data":{"kind":"sine"},"sigma":1})", "grid.n");
    expect_mentions(R"({"experiment":"mystery","grid":{"a":0,"b":1,"n":99},
                        "data":{"kind":"sine"},"sigma":1})", "experiment");
    expect_mentions(R"({"experiment":"simulate","grid":{"a":0,"b":1,"n":99},
                        "data":{"kind":"wave"},"sigma":1})", "data.kind");
    expect_mentions(R"({"experiment":"simulate","grid":{"a":0,"b":1,"n":99},"sigma":1})",
                    "data.kind");
    expect_mentions("not json at all", "JSON");
}

TEST_CASE("parse_config collects every problem at once") {
    try {
        (void)parse_config(R"({"experiment":"simulate","grid":{"a":0,"b":1,"n":3},
                               "data":{"kind":"sine"},"sigma":-2})");
        FAIL_CHECK("expected a config error");
    } catch (const config_error& e) {
        const std::string what = e.what();
        CHECK(what.find("grid.n") != std::string::npos);
        CHECK(what.find("sigma") != std::string::npos);
    }
}

TEST_CASE("sigma below one half defaults to the regularized variant") {
    const ExperimentConfig cfg = parse_config(R"({
        "experiment": "simulate",
        "grid": {"a": 0.0, "b": 1.0, "n": 99},
        "data": {"kind": "sine"},
        "sigma": 0.25
    })");
    CHECK(cfg.solver.kind.type == NonlinearityType::regularized);
    CHECK(cfg.solver.kind.m == 100.0);
}

TEST_CASE("simulate writes conserved.csv and snapshots.json") {
    const fs::path out = fresh_dir("simulate");
    const ExperimentConfig cfg = parse_config(kSimulateCfg);
    const SimulateResult res = run_simulate(cfg, out);

    const std::string csv = slurp(out / "conserved.csv");
    CHECK(csv.rfind("t,M,E,E_m,P,h1,h2,dtu_l2\n", 0) == 0);
    CHECK(res.traj.states.size() > 2);

    // snapshot numbers round-trip bit-exactly through their decimal form
    const std::string snap = slurp(out / "snapshots.json");
    const double want = res.traj.states.back()[5].real();
    CHECK(snap.find(format_g17(want)) != std::string::npos);
    double parsed = 0.0;
    std::sscanf(format_g17(want).c_str(), "%lg", &parsed);
    CHECK(parsed == want);
}

TEST_CASE("zero data produces an all-zero conserved table") {
    ExperimentConfig cfg = parse_config(kSimulateCfg);
    cfg.data.amplitude = 0.0;
    const SimulateResult res = run_simulate(cfg, "");
    for (const ConservedSample& s : res.traj.conserved) {
        CHECK(s.M == 0.0);
        CHECK(s.E == 0.0);
        CHECK(s.E_m == 0.0);
        CHECK(s.P == 0.0);
        CHECK(s.h1 == 0.0);
        CHECK(s.h2 == 0.0);
        CHECK(s.dtu_l2 == 0.0);
    }
}

TEST_CASE("identical configs give byte-identical outputs") {
    const fs::path out1 = fresh_dir("det1");
    const fs::path out2 = fresh_dir("det2");
    const ExperimentConfig cfg = parse_config(kSimulateCfg);
    run_simulate(cfg, out1);
    run_simulate(cfg, out2);
    CHECK(slurp(out1 / "conserved.csv") == slurp(out2 / "conserved.csv"));
    CHECK(slurp(out1 / "snapshots.json") == slurp(out2 / "snapshots.json"));

    ExperimentConfig ycfg = parse_config(R"({
        "experiment": "yosida-test",
        "grid": {"a": 0.0, "b": 1.0, "n": 199},
        "sigma": 1.0
    })");
    const fs::path y1 = fresh_dir("det3");
    const fs::path y2 = fresh_dir("det4");
    run_yosida_test(ycfg, y1, 42);
    run_yosida_test(ycfg, y2, 42);
    CHECK(slurp(y1 / "yosida_test.csv") == slurp(y2 / "yosida_test.csv"));
}

TEST_CASE("boundary guard rejects contaminated truncations") {
    ExperimentConfig cfg = parse_config(R"({
        "experiment": "simulate",
        "grid": {"a": -4.0, "b": 4.0, "n": 199},
        "data": {"kind": "gaussian", "x0": 3.5, "width": 1.0, "amplitude": 0.5},
        "sigma": 1.0,
        "solver": {"dt": 1e-3, "t_end": 0.01}
    })");
    CHECK(cfg.boundary_guard);
    CHECK_THROWS_AS(run_simulate(cfg, ""), guard_violation);
    cfg.boundary_guard = false;
    CHECK_NOTHROW(run_simulate(cfg, ""));
}

TEST_CASE("converge experiment: determinism and monotone errors") {
    ExperimentConfig cfg = parse_config(R"({
        "experiment": "converge",
        "grid": {"a": -10.0, "b": 10.0, "n": 499},
        "data": {"kind": "gaussian", "x0": 0.0, "width": 1.0, "amplitude": 1.0, "modulation": 2.0},
        "sigma": 1.0,
        "solver": {"dt": 2e-3, "t_end": 0.1, "observe_every": 10},
        "m_list": [20.0, 20.0, 80.0],
        "m_ref": 1e5
    })");
    const ConvergeResult res = run_converge(cfg, fresh_dir("conv"));
    CHECK(res.errors[0] == res.errors[1]);  // duplicates are deterministic
    CHECK(res.errors[1] > res.errors[2]);
    CHECK(res.monotone);
}

TEST_CASE("converge validates the reference level") {
    CHECK_THROWS_AS(parse_config(R"({
        "experiment": "converge",
        "grid": {"a": 0.0, "b": 1.0, "n": 99},
        "data": {"kind": "sine"},
        "sigma": 1.0,
        "m_list": [16.0, 64.0, 256.0],
        "m_ref": 1000.0
    })"), config_error);
}

TEST_CASE("threshold scan rows carry the closed-form threshold") {
    ExperimentConfig cfg = parse_config(R"({
        "experiment": "threshold-scan",
        "grid": {"a": 0.0, "b": 1.0, "n": 199},
        "data": {"kind": "sine", "k": 1},
        "sigma": 1.0,
        "solver": {"dt": 1e-3, "t_end": 0.05},
        "c": 1.0,
        "amplitudes": [0.0, 0.1, 0.3]
    })");
    const ThresholdScanResult res = run_threshold_scan(cfg, fresh_dir("scan"));
    CHECK(res.delta == 1.0);
    CHECK(res.f_delta == doctest::Approx(0.5).epsilon(1e-15));
    const ThresholdRow& zero = res.rows.front();
    CHECK(zero.condition_met);
    CHECK(zero.h1_sup == 0.0);
    CHECK(zero.stayed_below_delta);
    for (const ThresholdRow& r : res.rows) {
        CHECK(r.f_delta == res.f_delta);
        CHECK_FALSE(r.failed);
    }
}

TEST_CASE("norm probe rows: scaling invariance and the p = 2 bound") {
    ExperimentConfig cfg = parse_config(R"({
        "experiment": "norm-probe",
        "grid": {"a": 0.0, "b": 1.0, "n": 299},
        "sigma": 1.0,
        "p_list": [2.0, 4.0, 8.0]
    })");
    const NormProbeResult res = run_norm_probe(cfg, fresh_dir("probe"));
    for (const NormProbeRow& r : res.rows) {
        CHECK(r.ratio > 0.0);
        if (r.p == 2.0) CHECK(r.ratio <= 1.0 / std::sqrt(2.0) + 1e-12);
    }
    CHECK(res.max_ratio.size() == 5);
}

TEST_CASE("christ compare stays flat in the linear regime") {
    ExperimentConfig cfg = parse_config(R"({
        "experiment": "christ-compare",
        "grid": {"a": 0.0, "b": 1.0, "n": 199},
        "data": {"kind": "sine", "k": 1, "amplitude": 1e-8},
        "sigma": 0.5,
        "solver": {"dt": 1e-3, "t_end": 0.05},
        "s_list": [1.0]
    })");
    const ChristCompareResult res = run_christ_compare(cfg, fresh_dir("christ"));
    const double g0 = res.gdnls_norms[0].front();
    const double c0 = res.christ_norms[0].front();
    for (size_t k = 0; k < res.times.size(); ++k) {
        CHECK(std::abs(res.gdnls_norms[0][k] - g0) <= 1e-6 * g0);
        CHECK(std::abs(res.christ_norms[0][k] - c0) <= 1e-6 * c0);
    }
    CHECK(parse_config(R"({
        "experiment": "christ-compare",
        "grid": {"a": 0.0, "b": 1.0, "n": 199},
        "data": {"kind": "sine"},
        "sigma": 0.5
    })").s_list == std::vector<double>{1.0});
}

TEST_CASE("christ compare demands the quadratic exponent") {
    CHECK_THROWS_AS(parse_config(R"({
        "experiment": "christ-compare",
        "grid": {"a": 0.0, "b": 1.0, "n": 199},
        "data": {"kind": "sine"},
        "sigma": 1.0
    })"), config_error);
}

TEST_CASE("weak sigma run on zero data is trivially inside every cap") {
    ExperimentConfig cfg = parse_config(R"({
        "experiment": "weak-sigma-run",
        "grid": {"a": 0.0, "b": 1.0, "n": 99},
        "data": {"kind": "sine", "amplitude": 0.0},
        "sigma": 0.75,
        "solver": {"kind": "regularized", "m": 50.0, "dt": 1e-2, "t_end": 10.0}
    })");
    const WeakSigmaResult res = run_weak_sigma(cfg, fresh_dir("weak"));
    CHECK(res.cap_ok);
    CHECK(res.energy_inequality_ok);
    CHECK(res.h1_sup == 0.0);
}

TEST_CASE("yosida battery reports machine-level violations") {
    ExperimentConfig cfg = parse_config(R"({
        "experiment": "yosida-test",
        "grid": {"a": 0.0, "b": 1.0, "n": 199},
        "sigma": 1.0
    })");
    const YosidaTestResult res = run_yosida_test(cfg, "", 42);
    for (const auto& [name, violation] : res.rows) {
        INFO(name);
        if (name == "smoothing_identity")
            CHECK(violation <= 1e-10);
        else if (name == "convergence_bound" || name.rfind("lemma", 0) == 0)
            CHECK(violation <= 0.0);
        else
            CHECK(violation <= 1e-12);
    }
}

TEST_CASE("csv writer is rectangular with a header") {
    CsvWriter csv({"a", "b"});
    csv.add_row({1.0, 2.0});
    CHECK_THROWS_AS(csv.add_row({1.0}), std::invalid_argument);
    CHECK(csv.text() == "a,b\n1,2\n");
}
