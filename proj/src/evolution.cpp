#include "gdnls/evolution.hpp"

#include "gdnls/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace gdnls {

void SolverParams::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw config_error("solver: sigma must be positive");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw config_error("solver: dt must be positive");
    if (!(t_end >= dt))
        throw config_error("solver: t_end must be at least dt");
    if (!(fp_tol > 0.0) || fp_tol > 1e-6)
        throw config_error("solver: fp_tol must lie in (0, 1e-6]");
    if (fp_max_iter < 10)
        throw config_error("solver: fp_max_iter must be at least 10");
    if (observe_every < 1)
        throw config_error("solver: observe_every must be at least 1");
    if (kind.type == NonlinearityType::regularized && !(kind.m > 0.0))
        throw config_error("solver: regularized kind requires m > 0");
    if (kind.type == NonlinearityType::full && sigma < 0.5 && !allow_sigma_below_half)
        throw config_error(
            "solver: full nonlinearity with sigma < 1/2 refused; use the regularized kind "
            "or set allow_sigma_below_half");
}

Field gradient_nonlinearity(const Field& u, double sigma) {
    const int n = u.size();
    const double h = u.grid.h;
    const double scale = 1.0 / (2.0 * h * (sigma + 1.0));

    // Node densities q = |u|^2, rho = q^sigma, face quantities
    // s_j = Im(conj(u_j) u_{j+1}) and mu_j = (rho_j + rho_{j+1})/2.
    std::vector<double> q(static_cast<size_t>(n)), rho(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        q[static_cast<size_t>(j)] = std::norm(u[j]);
        rho[static_cast<size_t>(j)] = std::pow(q[static_cast<size_t>(j)], sigma);
    }
    auto q_at = [&](int j) { return (j >= 0 && j < n) ? q[static_cast<size_t>(j)] : 0.0; };
    auto rho_at = [&](int j) { return (j >= 0 && j < n) ? rho[static_cast<size_t>(j)] : 0.0; };
    auto u_at = [&](int j) { return (j >= 0 && j < n) ? u[j] : complexd{0.0, 0.0}; };
    auto s_face = [&](int j) {  // face between nodes j and j+1
        return std::imag(std::conj(u_at(j)) * u_at(j + 1));
    };

    Field out(u.grid);
    for (int j = 0; j < n; ++j) {
        const double mu_f = 0.5 * (rho_at(j) + rho_at(j + 1));
        const double mu_b = 0.5 * (rho_at(j - 1) + rho_at(j));
        complexd v = complexd{0.0, 1.0} * (mu_f * u_at(j + 1) - mu_b * u_at(j - 1));
        const double qj = q_at(j);
        if (qj > 1e-280) {
            // q^{sigma-1} stays representable above the floor; the net power
            // of |u| in the term is 2 sigma + 1 > 0, so dropping near-zero
            // nodes loses nothing.
            v += sigma * std::pow(qj, sigma - 1.0) * (s_face(j) + s_face(j - 1)) * u[j];
        }
        out[j] = -scale * v;
    }
    return out;
}

namespace {

Field christ_nonlinearity(const Field& u) {
    Field du = d1(u);
    Field out(u.grid);
    for (int j = 0; j < u.size(); ++j) out[j] = complexd{0.0, 1.0} * u[j] * du[j];
    return out;
}

TridiagonalSystem cn_system(const Grid& g, double dt) {
    // (I - (i dt/2) D^2) u+ = rhs
    const complexd s = complexd{0.0, 0.5 * dt} / (g.h * g.h);
    TridiagonalSystem sys;
    sys.diag.assign(static_cast<size_t>(g.n), 1.0 + 2.0 * s);
    sys.lower.assign(static_cast<size_t>(g.n - 1), -s);
    sys.upper.assign(static_cast<size_t>(g.n - 1), -s);
    return sys;
}

class Stepper {
public:
    Stepper(const Grid& grid, const SolverParams& params)
        : grid_(grid), params_(params), sys_(cn_system(grid, params.dt)) {
        if (params.kind.type == NonlinearityType::regularized)
            J_.emplace(grid, params.kind.m);
    }

    Field apply_nonlinearity(const Field& w) const {
        switch (params_.kind.type) {
            case NonlinearityType::full:
                return gradient_nonlinearity(w, params_.sigma);
            case NonlinearityType::regularized: {
                Field inner = gradient_nonlinearity(J_->apply(w), params_.sigma);
                return J_->apply(inner);
            }
            case NonlinearityType::christ:
                return christ_nonlinearity(w);
        }
        throw std::logic_error("unreachable");
    }

    Field advance(const Field& u, double t_now) const {
        const double dt = params_.dt;
        const int n = grid_.n;
        Field rhs0 = d2(u);
        for (int j = 0; j < n; ++j)
            rhs0[j] = u[j] + complexd{0.0, 0.5 * dt} * rhs0[j];

        Field unew = u;
        double rel = 0.0;
        for (int it = 0; it < params_.fp_max_iter; ++it) {
            Field mid(grid_);
            for (int j = 0; j < n; ++j) mid[j] = 0.5 * (u[j] + unew[j]);
            Field nl = apply_nonlinearity(mid);
            Field rhs(grid_);
            for (int j = 0; j < n; ++j)
                rhs[j] = rhs0[j] + complexd{0.0, dt} * nl[j];
            Field unext = solve_tridiagonal(sys_, rhs);
            double diff = 0.0;
            for (int j = 0; j < n; ++j) diff += std::norm(unext[j] - unew[j]);
            const double scale = std::max(l2_norm(unext), 1e-300);
            rel = std::sqrt(grid_.h * diff) / scale;
            unew = std::move(unext);
            if (rel <= params_.fp_tol) return unew;
        }
        throw solver_error("fixed-point iteration did not converge (dt too large?)", t_now, rel);
    }

    const YosidaOp* yosida() const { return J_ ? &*J_ : nullptr; }

private:
    Grid grid_;
    SolverParams params_;
    TridiagonalSystem sys_;
    std::optional<YosidaOp> J_;
};

ConservedSample observe(const Field& u, double t, double sigma, const YosidaOp* J,
                        const Field* prev, double spacing) {
    ConservedSample s;
    s.t = t;
    s.M = mass(u);
    s.E = energy(u, sigma);
    s.E_m = J ? approx_energy(u, sigma, *J) : s.E;
    s.P = momentum(u);
    s.h1 = h1_norm(u);
    s.h2 = h2_norm(u);
    if (prev) {
        Field dudt(u.grid);
        for (int j = 0; j < u.size(); ++j) dudt[j] = (u[j] - (*prev)[j]) / spacing;
        s.dtu_l2 = l2_norm(dudt);
    }
    return s;
}

} // namespace

Field nonlinearity(const Field& u, const SolverParams& params, const YosidaOp* J) {
    switch (params.kind.type) {
        case NonlinearityType::full:
            return gradient_nonlinearity(u, params.sigma);
        case NonlinearityType::regularized: {
            std::optional<YosidaOp> local;
            if (!J) {
                local.emplace(u.grid, params.kind.m);
                J = &*local;
            }
            return J->apply(gradient_nonlinearity(J->apply(u), params.sigma));
        }
        case NonlinearityType::christ:
            return christ_nonlinearity(u);
    }
    throw std::logic_error("unreachable");
}

Field step(const Field& u, const SolverParams& params) {
    params.validate();
    return Stepper(u.grid, params).advance(u, 0.0);
}

Field linear_cn_step(const Field& u, double dt) {
    Field rhs = d2(u);
    for (int j = 0; j < u.size(); ++j)
        rhs[j] = u[j] + complexd{0.0, 0.5 * dt} * rhs[j];
    return solve_tridiagonal(cn_system(u.grid, dt), rhs);
}

Trajectory evolve(const Field& phi, const SolverParams& params) {
    params.validate();
    const long steps = std::lround(params.t_end / params.dt);
    if (steps < 1) throw config_error("solver: t_end/dt yields no steps");

    Stepper stepper(phi.grid, params);
    const double spacing = params.dt * params.observe_every;

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(phi);
    traj.conserved.push_back(observe(phi, 0.0, params.sigma, stepper.yosida(), nullptr, spacing));

    Field u = phi;
    for (long k = 1; k <= steps; ++k) {
        const double t = k * params.dt;
        u = stepper.advance(u, t);
        if (k % params.observe_every == 0) {
            traj.conserved.push_back(
                observe(u, t, params.sigma, stepper.yosida(), &traj.states.back(), spacing));
            traj.times.push_back(t);
            traj.states.push_back(u);
        }
    }
    return traj;
}

std::vector<double> duhamel_residual(const Trajectory& traj, const SolverParams& params) {
    if (traj.states.size() < 3)
        throw std::invalid_argument("duhamel_residual: needs at least 3 observations");

    const Grid& g = traj.states.front().grid;
    const double dt = params.dt;
    const int oe = params.observe_every;
    const double spacing = dt * oe;
    const TridiagonalSystem sys = cn_system(g, dt);
    std::optional<YosidaOp> J;
    if (params.kind.type == NonlinearityType::regularized) J.emplace(g, params.kind.m);

    auto propagate = [&](Field v) {
        for (int s = 0; s < oe; ++s) {
            Field rhs = d2(v);
            for (int j = 0; j < g.n; ++j)
                rhs[j] = v[j] + complexd{0.0, 0.5 * dt} * rhs[j];
            v = solve_tridiagonal(sys, rhs);
        }
        return v;
    };

    std::vector<Field> nl;
    nl.reserve(traj.states.size());
    for (const Field& u : traj.states)
        nl.push_back(nonlinearity(u, params, J ? &*J : nullptr));

    std::vector<double> defects;
    Field free_part = traj.states.front();
    Field integral(g);  // rolling trapezoid sum, already propagated to the current time
    for (size_t k = 1; k < traj.states.size(); ++k) {
        Field carry(g);
        const double w = (k == 1) ? 0.5 : 1.0;
        for (int j = 0; j < g.n; ++j) carry[j] = integral[j] + w * nl[k - 1][j];
        integral = propagate(carry);
        free_part = propagate(free_part);

        Field defect(g);
        for (int j = 0; j < g.n; ++j) {
            const complexd rec =
                free_part[j] + complexd{0.0, spacing} * (integral[j] + 0.5 * nl[k][j]);
            defect[j] = traj.states[k][j] - rec;
        }
        defects.push_back(l2_norm(defect));
    }
    return defects;
}

double growth_probe(const Trajectory& traj, double s) {
    if (traj.states.empty())
        throw std::invalid_argument("growth_probe: empty trajectory");
    auto norm_s = [s](const Field& u) {
        if (s == 1.0) return h1_norm(u);
        if (s == 2.0) return h2_norm(u);
        return hs_norm(u, s);
    };
    const double base = norm_s(traj.states.front());
    if (base == 0.0)
        throw std::invalid_argument("growth_probe: zero initial data");
    double peak = 0.0;
    for (const Field& u : traj.states) peak = std::max(peak, norm_s(u));
    return peak / base;
}

} // namespace gdnls
