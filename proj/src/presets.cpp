#include "gdnls/presets.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace gdnls {

Field make_data(const Grid& g, const DataPreset& p) {
    Field out(g);
    switch (p.kind) {
        case DataPreset::Kind::sine:
            return sine_mode(g, p.k, p.amplitude);
        case DataPreset::Kind::gaussian:
            for (int j = 0; j < g.n; ++j) {
                const double x = g.node(j + 1) - p.x0;
                const double env = p.amplitude * std::exp(-0.5 * (x / p.width) * (x / p.width));
                out[j] = env * std::exp(complexd{0.0, p.modulation * x});
            }
            return out;
        case DataPreset::Kind::polybump: {
            // Quartic bump supported on the middle half of the domain.
            const double mid = 0.5 * (g.a + g.b);
            const double half = 0.25 * g.length();
            for (int j = 0; j < g.n; ++j) {
                const double s = (g.node(j + 1) - mid) / half;
                out[j] = (std::abs(s) < 1.0) ? p.amplitude * std::pow(1.0 - s * s, 4.0) : 0.0;
            }
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

// Explicit mapping keeps the stream identical across standard libraries.
double uniform_pm1(std::mt19937_64& rng) {
    return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
}

} // namespace

Field random_smooth_field(const Grid& g, std::uint64_t seed, int max_mode, bool complex_valued) {
    std::mt19937_64 rng(seed);
    Field out(g);
    for (int k = 1; k <= max_mode; ++k) {
        const double re = uniform_pm1(rng) / k;
        const double im = complex_valued ? uniform_pm1(rng) / k : 0.0;
        const Field mode = sine_mode(g, k);
        for (int j = 0; j < g.n; ++j) out[j] += complexd{re, im} * mode[j];
    }
    return out;
}

std::vector<std::pair<std::string, Field>> probe_battery(const Grid& g) {
    const double mid = 0.5 * (g.a + g.b);
    DataPreset gauss{DataPreset::Kind::gaussian, 1, mid, g.length() / 12.0, 1.0, 0.0};
    DataPreset gauss_mod = gauss;
    gauss_mod.modulation = 6.0 * M_PI / g.length();
    DataPreset bump{DataPreset::Kind::polybump, 1, 0.0, 1.0, 1.0, 0.0};
    return {
        {"sine1", sine_mode(g, 1)},
        {"sine3", sine_mode(g, 3)},
        {"gauss", make_data(g, gauss)},
        {"gauss_mod", make_data(g, gauss_mod)},
        {"polybump", make_data(g, bump)},
    };
}

} // namespace gdnls
