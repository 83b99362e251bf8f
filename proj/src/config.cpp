#include "gdnls/config.hpp"

#include "gdnls/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace gdnls {

namespace {

using nlohmann::json;

class Checker {
public:
    explicit Checker(const json& root) : root_(root) {}

    bool has(const std::string& path) const { return find(path) != nullptr; }

    double number(const std::string& path, double fallback, bool required = false) {
        const json* node = find(path);
        if (!node) {
            if (required) fail(path, "missing required key");
            return fallback;
        }
        if (!node->is_number()) {
            fail(path, "expected a number");
            return fallback;
        }
        return node->get<double>();
    }

    int integer(const std::string& path, int fallback, bool required = false) {
        const json* node = find(path);
        if (!node) {
            if (required) fail(path, "missing required key");
            return fallback;
        }
        if (!node->is_number_integer()) {
            fail(path, "expected an integer");
            return fallback;
        }
        return node->get<int>();
    }

    bool boolean(const std::string& path, bool fallback) {
        const json* node = find(path);
        if (!node) return fallback;
        if (!node->is_boolean()) {
            fail(path, "expected a boolean");
            return fallback;
        }
        return node->get<bool>();
    }

    std::string text(const std::string& path, const std::string& fallback, bool required = false) {
        const json* node = find(path);
        if (!node) {
            if (required) fail(path, "missing required key");
            return fallback;
        }
        if (!node->is_string()) {
            fail(path, "expected a string");
            return fallback;
        }
        return node->get<std::string>();
    }

    std::vector<double> number_list(const std::string& path) {
        const json* node = find(path);
        std::vector<double> out;
        if (!node) return out;
        if (!node->is_array()) {
            fail(path, "expected an array of numbers");
            return out;
        }
        for (const auto& v : *node) {
            if (!v.is_number()) {
                fail(path, "expected an array of numbers");
                return {};
            }
            out.push_back(v.get<double>());
        }
        return out;
    }

    std::vector<std::string> text_list(const std::string& path) {
        const json* node = find(path);
        std::vector<std::string> out;
        if (!node) return out;
        if (!node->is_array()) {
            fail(path, "expected an array of strings");
            return out;
        }
        for (const auto& v : *node) {
            if (!v.is_string()) {
                fail(path, "expected an array of strings");
                return {};
            }
            out.push_back(v.get<std::string>());
        }
        return out;
    }

    void fail(const std::string& path, const std::string& why) {
        problems_.push_back(path + ": " + why);
    }

    void finish() const {
        if (problems_.empty()) return;
        std::ostringstream msg;
        msg << "invalid config:";
        for (const std::string& p : problems_) msg << "\n  " << p;
        throw config_error(msg.str());
    }

private:
    const json* find(const std::string& path) const {
        const json* node = &root_;
        size_t start = 0;
        while (start <= path.size()) {
            const size_t dot = path.find('.', start);
            const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
            if (!node->is_object() || !node->contains(key)) return nullptr;
            node = &(*node)[key];
            if (dot == std::string::npos) break;
            start = dot + 1;
        }
        return node;
    }

    const json& root_;
    std::vector<std::string> problems_;
};

const std::set<std::string>& known_experiments() {
    static const std::set<std::string> names = {
        "simulate",       "converge",       "threshold-scan", "norm-probe",
        "christ-compare", "weak-sigma-run", "yosida-test"};
    return names;
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw config_error("config root must be a JSON object");

    Checker chk(root);
    ExperimentConfig cfg;

    cfg.experiment = chk.text("experiment", "", true);
    if (!cfg.experiment.empty() && !known_experiments().contains(cfg.experiment))
        chk.fail("experiment", "unknown experiment name '" + cfg.experiment + "'");

    cfg.grid_a = chk.number("grid.a", 0.0, true);
    cfg.grid_b = chk.number("grid.b", 1.0, true);
    cfg.grid_n = chk.integer("grid.n", 0, true);
    if (!std::isfinite(cfg.grid_a) || !std::isfinite(cfg.grid_b) || !(cfg.grid_b > cfg.grid_a))
        chk.fail("grid.b", "endpoints must be finite with b > a");
    if (cfg.grid_n < 4) chk.fail("grid.n", "must be at least 4");

    cfg.sigma = chk.number("sigma", 0.0, true);
    if (!(cfg.sigma > 0.0) || !std::isfinite(cfg.sigma)) chk.fail("sigma", "must be positive");

    const bool needs_data =
        cfg.experiment != "yosida-test" && cfg.experiment != "norm-probe";
    if (chk.has("data") || needs_data) {
        const std::string kind = chk.text("data.kind", "", needs_data);
        if (kind == "sine") {
            cfg.data.kind = DataPreset::Kind::sine;
            cfg.data.k = chk.integer("data.k", 1);
            if (cfg.data.k < 1) chk.fail("data.k", "must be a positive mode index");
        } else if (kind == "gaussian") {
            cfg.data.kind = DataPreset::Kind::gaussian;
            cfg.data.x0 = chk.number("data.x0", 0.5 * (cfg.grid_a + cfg.grid_b));
            cfg.data.width = chk.number("data.width", 1.0);
            cfg.data.modulation = chk.number("data.modulation", 0.0);
            if (!(cfg.data.width > 0.0)) chk.fail("data.width", "must be positive");
        } else if (kind == "polybump") {
            cfg.data.kind = DataPreset::Kind::polybump;
        } else if (!kind.empty()) {
            chk.fail("data.kind", "unknown preset '" + kind + "'");
        }
        cfg.data.amplitude = chk.number("data.amplitude", 1.0);
        if (!std::isfinite(cfg.data.amplitude) || cfg.data.amplitude < 0.0)
            chk.fail("data.amplitude", "must be finite and nonnegative");
    }

    cfg.solver.sigma = cfg.sigma;
    cfg.solver.dt = chk.number("solver.dt", 1e-3);
    cfg.solver.t_end = chk.number("solver.t_end", 1.0);
    cfg.solver.fp_tol = chk.number("solver.fp_tol", 1e-12);
    cfg.solver.fp_max_iter = chk.integer("solver.fp_max_iter", 100);
    cfg.solver.observe_every = chk.integer("solver.observe_every", 10);
    cfg.solver.allow_sigma_below_half = chk.boolean("solver.allow_sigma_below_half", false);
    if (!(cfg.solver.dt > 0.0) || !std::isfinite(cfg.solver.dt))
        chk.fail("solver.dt", "must be positive");
    if (!(cfg.solver.t_end >= cfg.solver.dt)) chk.fail("solver.t_end", "must be at least dt");
    if (!(cfg.solver.fp_tol > 0.0) || cfg.solver.fp_tol > 1e-6)
        chk.fail("solver.fp_tol", "must lie in (0, 1e-6]");
    if (cfg.solver.fp_max_iter < 10) chk.fail("solver.fp_max_iter", "must be at least 10");
    if (cfg.solver.observe_every < 1) chk.fail("solver.observe_every", "must be at least 1");

    // sigma < 1/2 defaults to the regularized variant.
    const std::string default_kind =
        (cfg.sigma < 0.5 && !cfg.solver.allow_sigma_below_half) ? "regularized" : "full";
    const std::string kind = chk.text("solver.kind", default_kind);
    if (kind == "full") {
        cfg.solver.kind = NonlinearityKind::full();
    } else if (kind == "regularized") {
        const double m = chk.number("solver.m", 100.0);
        if (!(m > 0.0)) chk.fail("solver.m", "must be positive");
        cfg.solver.kind = NonlinearityKind::regularized(m);
    } else if (kind == "christ") {
        cfg.solver.kind = NonlinearityKind::christ();
    } else {
        chk.fail("solver.kind", "must be one of full, regularized, christ");
    }

    const DataPreset::Kind dk = cfg.data.kind;
    cfg.boundary_guard = chk.boolean("boundary_guard", dk != DataPreset::Kind::sine);

    if (cfg.experiment == "converge") {
        cfg.m_list = chk.number_list("m_list");
        cfg.m_ref = chk.number("m_ref", 0.0, true);
        if (cfg.m_list.size() < 3) chk.fail("m_list", "needs at least 3 values");
        double mmax = 0.0;
        for (double m : cfg.m_list) {
            if (!(m > 0.0)) chk.fail("m_list", "entries must be positive");
            mmax = std::max(mmax, m);
        }
        if (!(cfg.m_ref >= 100.0 * mmax))
            chk.fail("m_ref", "must be at least 100x the largest m_list entry");
    } else if (cfg.experiment == "threshold-scan") {
        cfg.c = chk.number("c", 1.0);
        if (!(cfg.c > 0.0)) chk.fail("c", "must be positive");
        cfg.amplitudes = chk.number_list("amplitudes");
        if (cfg.amplitudes.empty()) chk.fail("amplitudes", "missing required key");
        for (double a : cfg.amplitudes)
            if (!(a >= 0.0) || !std::isfinite(a)) chk.fail("amplitudes", "entries must be >= 0");
        if (cfg.sigma < 1.0) chk.fail("sigma", "threshold-scan requires sigma >= 1");
    } else if (cfg.experiment == "norm-probe") {
        cfg.p_list = chk.number_list("p_list");
        if (cfg.p_list.empty()) chk.fail("p_list", "missing required key");
        for (double p : cfg.p_list)
            if (!(p >= 2.0 && p <= 128.0)) chk.fail("p_list", "entries must lie in [2, 128]");
        cfg.cmt = chk.number("cmt", 1.0);
        if (!(cfg.cmt > 0.0)) chk.fail("cmt", "must be positive");
        cfg.functions = chk.text_list("functions");
    } else if (cfg.experiment == "christ-compare") {
        if (cfg.sigma != 0.5) chk.fail("sigma", "christ-compare requires sigma = 1/2");
        cfg.s_list = chk.number_list("s_list");
        if (cfg.s_list.empty()) cfg.s_list = {1.0};
        for (double s : cfg.s_list)
            if (!(s > 0.0 && s <= 2.0)) chk.fail("s_list", "entries must lie in (0, 2]");
    } else if (cfg.experiment == "weak-sigma-run") {
        if (!(cfg.sigma < 1.0)) chk.fail("sigma", "weak-sigma-run requires sigma < 1");
        if (cfg.solver.kind.type != NonlinearityType::regularized)
            chk.fail("solver.kind", "weak-sigma-run requires the regularized kind");
        if (cfg.solver.t_end < 10.0) chk.fail("solver.t_end", "weak-sigma-run requires t_end >= 10");
        cfg.cap_c = chk.number("cap_c", 1.0);
        if (!(cfg.cap_c > 0.0)) chk.fail("cap_c", "must be positive");
        cfg.tol_drift = chk.number("tol_drift", 1e-4);
        if (!(cfg.tol_drift > 0.0)) chk.fail("tol_drift", "must be positive");
    }

    chk.finish();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw config_error("cannot open config file " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace gdnls
