#pragma once

#include "gdnls/grid.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gdnls {

// Initial-data families. sine is Dirichlet-exact; gaussian and polybump keep
// boundary mass below 1e-10 of the total on the domains the configs use.
struct DataPreset {
    enum class Kind { sine, gaussian, polybump };
    Kind kind = Kind::sine;
    int k = 1;                // sine mode
    double x0 = 0.0;          // gaussian center
    double width = 1.0;       // gaussian std
    double amplitude = 1.0;
    double modulation = 0.0;  // gaussian carrier exp(i c (x - x0))
};

Field make_data(const Grid& g, const DataPreset& preset);

// Random sine combination up to max_mode with 1/k coefficient decay; smooth
// enough that the difference operators are resolved on every test grid.
Field random_smooth_field(const Grid& g, std::uint64_t seed, int max_mode = 10,
                          bool complex_valued = true);

// The five named functions the norm probe sweeps.
std::vector<std::pair<std::string, Field>> probe_battery(const Grid& g);

} // namespace gdnls
