#include "gdnls/gauge.hpp"

#include <cmath>
#include <stdexcept>

namespace gdnls {

namespace {

// Running trapezoid from the left boundary (value 0 there) over node samples.
std::vector<double> cumulative_trapezoid(const Grid& g, const std::vector<double>& f) {
    std::vector<double> out(f.size());
    double acc = 0.0;
    double prev = 0.0;  // boundary sample is zero for every integrand used here
    for (size_t j = 0; j < f.size(); ++j) {
        acc += 0.5 * g.h * (prev + f[j]);
        out[j] = acc;
        prev = f[j];
    }
    return out;
}

// |u|^{2 sigma - 1} * (conj(u)/|u|), the guarded form of |u|^{2 sigma - 2} conj(u).
std::vector<complexd> guarded_density_conj(const Field& u, double sigma) {
    std::vector<complexd> out(static_cast<size_t>(u.size()));
    for (int j = 0; j < u.size(); ++j) {
        const double a = std::abs(u[j]);
        out[static_cast<size_t>(j)] =
            (a > 1e-280) ? std::pow(a, 2.0 * sigma - 1.0) * (std::conj(u[j]) / a)
                         : complexd{0.0, 0.0};
    }
    return out;
}

Field field_from(const Grid& g, std::vector<complexd> v) { return Field(g, std::move(v)); }

} // namespace

GaugePhase lambda_phase(const Field& u, double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("lambda_phase: requires sigma > 0");
    std::vector<double> density(static_cast<size_t>(u.size()));
    for (int j = 0; j < u.size(); ++j)
        density[static_cast<size_t>(j)] = std::pow(std::abs(u[j]), 2.0 * sigma);
    std::vector<double> integral = cumulative_trapezoid(u.grid, density);
    GaugePhase phase{u.grid, std::vector<complexd>(integral.size())};
    for (size_t j = 0; j < integral.size(); ++j)
        phase.values[j] = complexd{0.0, -0.5 * integral[j]};
    return phase;
}

Field gauge_transform(const Field& u) {
    const GaugePhase phase = lambda_phase(u, 1.0);
    Field v(u.grid);
    for (int j = 0; j < u.size(); ++j)
        v[j] = u[j] * std::exp(phase.values[static_cast<size_t>(j)]);
    return v;
}

Field q1(const Field& u, double sigma) {
    const Field du = d1(u);
    std::vector<complexd> rho(static_cast<size_t>(u.size()));
    for (int j = 0; j < u.size(); ++j)
        rho[static_cast<size_t>(j)] = std::pow(std::abs(u[j]), 2.0 * sigma);
    const Field drho = d1(field_from(u.grid, std::move(rho)));
    const std::vector<complexd> gamma = guarded_density_conj(u, sigma);

    Field out(u.grid);
    for (int j = 0; j < u.size(); ++j) {
        const complexd im_part = gamma[static_cast<size_t>(j)] * du[j];
        out[j] = (complexd{0.0, -0.5} * drho[j] + sigma * std::imag(im_part)) * du[j];
    }
    return out;
}

Field q2(const Field& u, double sigma) {
    const Field du = d1(u);
    const Field dgamma = d1(field_from(u.grid, guarded_density_conj(u, sigma)));
    std::vector<double> integrand(static_cast<size_t>(u.size()));
    for (int j = 0; j < u.size(); ++j)
        integrand[static_cast<size_t>(j)] = std::imag(dgamma[j] * du[j]);
    const std::vector<double> integral = cumulative_trapezoid(u.grid, integrand);

    Field out(u.grid);
    for (int j = 0; j < u.size(); ++j)
        out[j] = -sigma * integral[static_cast<size_t>(j)] * du[j];
    return out;
}

namespace {

std::vector<double> centered_equation_residual(const std::vector<Field>& w, double spacing,
                                               const std::vector<Field>& source) {
    std::vector<double> out;
    for (size_t k = 1; k + 1 < w.size(); ++k) {
        const Grid& g = w[k].grid;
        const Field lap = d2(w[k]);
        Field res(g);
        for (int j = 0; j < g.n; ++j) {
            const complexd dt_w = (w[k + 1][j] - w[k - 1][j]) / (2.0 * spacing);
            res[j] = complexd{0.0, 1.0} * dt_w + lap[j] - source[k][j];
        }
        out.push_back(l2_norm(res));
    }
    return out;
}

} // namespace

std::vector<double> dnls_residual(const Trajectory& traj) {
    if (traj.states.size() < 3)
        throw std::invalid_argument("dnls_residual: needs at least 3 observations");
    const double spacing = traj.spacing();
    std::vector<Field> v;
    std::vector<Field> source;
    v.reserve(traj.states.size());
    source.reserve(traj.states.size());
    for (const Field& u : traj.states) {
        Field vt = gauge_transform(u);
        const Grid& g = vt.grid;
        std::vector<complexd> cubic(static_cast<size_t>(g.n));
        for (int j = 0; j < g.n; ++j)
            cubic[static_cast<size_t>(j)] = std::norm(vt[j]) * vt[j];
        Field dcubic = d1(field_from(g, std::move(cubic)));
        Field src(g);
        for (int j = 0; j < g.n; ++j) src[j] = complexd{0.0, -1.0} * dcubic[j];
        v.push_back(std::move(vt));
        source.push_back(std::move(src));
    }
    return centered_equation_residual(v, spacing, source);
}

std::vector<double> gauged_residual(const Trajectory& traj, double sigma) {
    if (traj.states.size() < 3)
        throw std::invalid_argument("gauged_residual: needs at least 3 observations");
    if (!(sigma >= 0.5))
        throw std::invalid_argument("gauged_residual: requires sigma >= 1/2");
    const double spacing = traj.spacing();
    std::vector<Field> w;
    std::vector<Field> source;
    w.reserve(traj.states.size());
    source.reserve(traj.states.size());
    for (const Field& u : traj.states) {
        const Grid& g = u.grid;
        const GaugePhase phase = lambda_phase(u, sigma);
        const Field du = d1(u);
        Field wt(g);
        for (int j = 0; j < g.n; ++j)
            wt[j] = std::exp(-phase.values[static_cast<size_t>(j)]) * du[j];
        const Field a = q1(u, sigma);
        const Field b = q2(u, sigma);
        Field src(g);
        for (int j = 0; j < g.n; ++j)
            src[j] = std::exp(-phase.values[static_cast<size_t>(j)]) * (a[j] + b[j]);
        w.push_back(std::move(wt));
        source.push_back(std::move(src));
    }
    return centered_equation_residual(w, spacing, source);
}

} // namespace gdnls
