#pragma once

#include <stdexcept>
#include <string>

namespace gdnls {

// Invalid or inconsistent run configuration. CLI exit status 1.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Time stepper failed to converge. CLI exit status 2.
class solver_error : public std::runtime_error {
public:
    solver_error(const std::string& what, double t, double residual)
        : std::runtime_error(what), time(t), last_residual(residual) {}
    double time = 0.0;
    double last_residual = 0.0;
};

// Boundary-contamination guard tripped on a truncated-line run. CLI exit status 3.
class guard_violation : public std::runtime_error {
public:
    guard_violation(const std::string& what, double t, double fraction)
        : std::runtime_error(what), time(t), boundary_fraction(fraction) {}
    double time = 0.0;
    double boundary_fraction = 0.0;
};

} // namespace gdnls
