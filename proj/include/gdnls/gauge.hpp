#pragma once

#include "gdnls/evolution.hpp"
#include "gdnls/grid.hpp"

#include <vector>

namespace gdnls {

// Samples of Lambda(x) = -(i/2) int_a^x |u|^{2 sigma} dy; purely imaginary,
// |exp(-Lambda)| = 1.
struct GaugePhase {
    Grid grid;
    std::vector<complexd> values;
};

GaugePhase lambda_phase(const Field& u, double sigma);

// v = u * exp(Lambda) with sigma = 1; removes the derivative term so v obeys
// the standard DNLS equation. |v| = |u| pointwise.
Field gauge_transform(const Field& u);

// Source terms of the gauged derivative equation
//   exp(Lambda) L(exp(-Lambda) dx u) = Q1(u) + Q2(u).
// Spatial derivatives use d1, the running integral the cumulative trapezoid;
// |u|^{2 sigma - 2} conj(u) is evaluated as |u|^{2 sigma - 1} (conj(u)/|u|),
// zero at u = 0.
Field q1(const Field& u, double sigma);
Field q2(const Field& u, double sigma);

// Per-interior-observation L2 norm of
//   i dt v + D^2 v + i d1(|v|^2 v),  v = gauge_transform(u),
// with the time derivative by centered differences across observations.
std::vector<double> dnls_residual(const Trajectory& traj);

// Per-interior-observation L2 norm of
//   i dt w + D^2 w - exp(-Lambda)(Q1 + Q2),  w = exp(-Lambda) d1 u.
std::vector<double> gauged_residual(const Trajectory& traj, double sigma);

} // namespace gdnls
