#include "gdnls/errors.hpp"
#include "gdnls/evolution.hpp"
#include "gdnls/presets.hpp"

#include <doctest.h>

#include <cmath>

using namespace gdnls;

namespace {

Field gaussian(const Grid& g, double x0, double width, double amp, double mod) {
    DataPreset p{DataPreset::Kind::gaussian, 1, x0, width, amp, mod};
    return make_data(g, p);
}

Field scaled(const Field& u, complexd factor) {
    Field v = u;
    for (auto& w : v.values) w *= factor;
    return v;
}

// conj + index reflection; maps a forward solution onto the backward one.
Field conj_reflect(const Field& u) {
    Field v(u.grid);
    const int n = u.size();
    for (int j = 0; j < n; ++j) v[j] = std::conj(u[n - 1 - j]);
    return v;
}

SolverParams basic(double sigma, double dt, double t_end, NonlinearityKind kind) {
    SolverParams p;
    p.sigma = sigma;
    p.dt = dt;
    p.t_end = t_end;
    p.kind = kind;
    return p;
}

} // namespace

TEST_CASE("the solver nonlinearity is the exact gradient of the potential") {
    const Grid g = make_grid(0.0, 1.0, 24);
    for (double sigma : {0.5, 0.75, 1.0, 2.0}) {
        const Field u = random_smooth_field(g, 1000 + static_cast<std::uint64_t>(10 * sigma));
        const Field nl = gradient_nonlinearity(u, sigma);
        // central finite differences of potential_g in every real/imag direction
        const double eps = 1e-6;
        for (int k = 0; k < g.n; ++k) {
            for (int part = 0; part < 2; ++part) {
                Field up = u, dn = u;
                const complexd delta = part ? complexd{0.0, eps} : complexd{eps, 0.0};
                up[k] += delta;
                dn[k] -= delta;
                const double der =
                    (potential_g(up, sigma) - potential_g(dn, sigma)) / (2.0 * eps);
                // dG[v] = 2 Re<grad, v>_h and N = -grad
                const double got = part ? -2.0 * g.h * nl[k].imag() : -2.0 * g.h * nl[k].real();
                CHECK(std::abs(der - got) <= 1e-5 * (1.0 + std::abs(got)));
            }
        }
    }
}

TEST_CASE("nonlinearity keeps Im<w, N(w)> at zero") {
    const Grid g = make_grid(-2.0, 2.0, 301);
    for (double sigma : {0.5, 1.0, 2.0}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Field w = random_smooth_field(g, 50 + seed);
            const Field nl = gradient_nonlinearity(w, sigma);
            CHECK(std::abs(inner_product(w, nl).imag()) <= 1e-12 * mass(w));
        }
    }
}

TEST_CASE("nonlinearity converges to i|u|^{2 sigma} dx u") {
    for (double sigma : {0.5, 1.0, 2.0}) {
        auto err = [sigma](int n) {
            const Grid g = make_grid(0.0, 1.0, n);
            Field u(g);
            for (int j = 0; j < g.n; ++j) {
                const double x = g.node(j + 1);
                u[j] = std::sin(M_PI * x) * std::exp(complexd{0.0, 3.0 * x});
            }
            const Field nl = gradient_nonlinearity(u, sigma);
            double e = 0.0;
            for (int j = 0; j < g.n; ++j) {
                const double x = g.node(j + 1);
                const complexd du = (M_PI * std::cos(M_PI * x) +
                                     complexd{0.0, 3.0} * std::sin(M_PI * x)) *
                                    std::exp(complexd{0.0, 3.0 * x});
                const complexd want = complexd{0.0, 1.0} *
                                      std::pow(std::abs(std::sin(M_PI * x)), 2.0 * sigma) * du;
                e = std::max(e, std::abs(nl[j] - want));
            }
            return e;
        };
        CHECK(err(200) / err(400) == doctest::Approx(4.0).epsilon(0.1));
    }
}

TEST_CASE("zero is a fixed point of every variant") {
    const Grid g = make_grid(0.0, 1.0, 64);
    for (auto kind : {NonlinearityKind::full(), NonlinearityKind::regularized(40.0),
                      NonlinearityKind::christ()}) {
        const Field out = step(Field(g), basic(1.0, 1e-3, 1.0, kind));
        CHECK(l2_norm(out) == 0.0);
    }
}

TEST_CASE("linear regime reproduces the Cayley factor per mode") {
    const Grid g = make_grid(0.0, 1.0, 199);
    const double dt = 1e-3;
    const Field phi = scaled(sine_mode(g, 3), 1e-8);
    const double lambda = sine_mode_eigenvalue(g, 3);
    const complexd cayley =
        (1.0 + complexd{0.0, 0.5 * dt} * lambda) / (1.0 - complexd{0.0, 0.5 * dt} * lambda);

    const Field out = step(phi, basic(1.0, dt, 1.0, NonlinearityKind::full()));
    for (int j = 0; j < g.n; ++j)
        CHECK(std::abs(out[j] - cayley * phi[j]) <= 1e-10 * std::abs(phi[j]) + 1e-300);
}

TEST_CASE("one step conserves discrete charge to iteration tolerance") {
    const Grid g = make_grid(-10.0, 10.0, 599);
    const Field phi = gaussian(g, 0.0, 1.0, 1.0, 1.0);
    const double m0 = mass(phi);
    SolverParams p = basic(1.0, 1e-3, 1.0, NonlinearityKind::full());
    CHECK(std::abs(mass(step(phi, p)) - m0) <= 10.0 * p.fp_tol * m0);
    p.kind = NonlinearityKind::regularized(50.0);
    CHECK(std::abs(mass(step(phi, p)) - m0) <= 10.0 * p.fp_tol * m0);
}

TEST_CASE("time reversibility through conjugation") {
    const Grid g = make_grid(-10.0, 10.0, 599);
    const Field phi = gaussian(g, 1.0, 1.0, 0.8, 1.0);
    SolverParams p = basic(1.0, 1e-3, 0.05, NonlinearityKind::full());
    const Trajectory fwd = evolve(phi, p);
    const Trajectory back = evolve(conj_reflect(fwd.states.back()), p);
    const Field round = conj_reflect(back.states.back());
    Field diff(g);
    for (int j = 0; j < g.n; ++j) diff[j] = round[j] - phi[j];
    CHECK(l2_norm(diff) <= 1e-8 * l2_norm(phi));
}

TEST_CASE("evolve of zero data is identically zero") {
    const Grid g = make_grid(0.0, 1.0, 64);
    const Trajectory traj = evolve(Field(g), basic(1.0, 1e-2, 0.1, NonlinearityKind::full()));
    for (const ConservedSample& s : traj.conserved) {
        CHECK(s.M == 0.0);
        CHECK(s.E == 0.0);
        CHECK(s.h1 == 0.0);
    }
}

TEST_CASE("full equation below sigma = 1/2 refuses without the override") {
    const Grid g = make_grid(0.0, 1.0, 64);
    SolverParams p = basic(0.25, 1e-3, 0.01, NonlinearityKind::full());
    CHECK_THROWS_AS(evolve(sine_mode(g, 1), p), config_error);
    p.allow_sigma_below_half = true;
    CHECK_NOTHROW(evolve(scaled(sine_mode(g, 1), 0.1), p));
    p.allow_sigma_below_half = false;
    p.kind = NonlinearityKind::regularized(50.0);
    CHECK_NOTHROW(evolve(scaled(sine_mode(g, 1), 0.1), p));
}

TEST_CASE("charge stays conserved along a Gaussian run") {
    const Grid g = make_grid(-16.0, 16.0, 799);
    const Field phi = gaussian(g, 0.0, 1.0, 1.0, 1.0);
    const Trajectory traj = evolve(phi, basic(1.0, 2e-3, 1.0, NonlinearityKind::full()));
    const double m0 = traj.conserved.front().M;
    for (const ConservedSample& s : traj.conserved)
        CHECK(std::abs(s.M - m0) <= 1e-8 * m0);
}

TEST_CASE("approximate-energy drift is second order in dt") {
    const Grid g = make_grid(-10.0, 10.0, 599);
    const Field phi = gaussian(g, 0.0, 1.0, 1.0, 1.0);
    auto drift = [&](double dt) {
        const Trajectory traj = evolve(phi, basic(1.0, dt, 0.4, NonlinearityKind::regularized(100.0)));
        return std::abs(traj.conserved.back().E_m - traj.conserved.front().E_m);
    };
    const double ratio = drift(2e-3) / drift(1e-3);
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.0);
}

TEST_CASE("momentum drift is second order under joint refinement") {
    auto drift = [](int n, double dt) {
        const Grid g = make_grid(-10.0, 10.0, n);
        const Field phi = gaussian(g, 0.0, 1.0, 0.8, 1.0);
        const Trajectory traj = evolve(phi, basic(1.0, dt, 0.4, NonlinearityKind::full()));
        return std::abs(traj.conserved.back().P - traj.conserved.front().P);
    };
    const double ratio = drift(499, 4e-3) / drift(999, 2e-3);
    CHECK(ratio >= 2.5);
    CHECK(ratio <= 6.0);
}

TEST_CASE("even-power densities move no faster than the H1 bound allows") {
    const Grid g = make_grid(-10.0, 10.0, 599);
    auto monitor = [&](const Trajectory& traj, double sigma, double r) {
        double k_fit = 0.0;
        const double spacing = traj.spacing();
        for (size_t i = 0; i + 1 < traj.states.size(); ++i) {
            const double a = std::pow(lp_norm(traj.states[i], 2.0 * r), 2.0 * r);
            const double b = std::pow(lp_norm(traj.states[i + 1], 2.0 * r), 2.0 * r);
            const double h1 = std::max(traj.conserved[i].h1, traj.conserved[i + 1].h1);
            const double cap = std::pow(1.0 + h1 * h1, r + sigma);
            k_fit = std::max(k_fit, std::abs(b - a) / (spacing * cap));
        }
        return k_fit;
    };
    const SolverParams p = basic(1.0, 2e-3, 0.3, NonlinearityKind::regularized(100.0));
    const Trajectory calib = evolve(gaussian(g, 0.0, 1.0, 1.0, 1.0), p);
    const Trajectory probe = evolve(gaussian(g, 2.0, 1.5, 0.9, -1.0), p);
    for (double r : {2.0, 3.0}) {
        const double k0 = monitor(calib, 1.0, r);
        CHECK(monitor(probe, 1.0, r) <= 2.0 * k0);
    }
}

TEST_CASE("regularized at huge m matches the full flow") {
    const Grid g = make_grid(0.0, 1.0, 199);
    const Field phi = scaled(sine_mode(g, 1), 0.3);
    const Trajectory a = evolve(phi, basic(1.0, 1e-3, 1.0, NonlinearityKind::full()));
    const Trajectory b = evolve(phi, basic(1.0, 1e-3, 1.0, NonlinearityKind::regularized(1e12)));
    Field diff(g);
    for (int j = 0; j < g.n; ++j) diff[j] = a.states.back()[j] - b.states.back()[j];
    CHECK(l2_norm(diff) <= 1e-6);
}

TEST_CASE("Duhamel reconstruction") {
    const Grid g = make_grid(-10.0, 10.0, 799);

    SUBCASE("zero trajectory has zero defect") {
        const SolverParams p = basic(1.0, 1e-3, 0.05, NonlinearityKind::full());
        const Trajectory traj = evolve(Field(g), p);
        for (double d : duhamel_residual(traj, p)) CHECK(d == 0.0);
    }

    SUBCASE("linear regime reduces to the free propagation") {
        const SolverParams p = basic(1.0, 1e-3, 0.1, NonlinearityKind::full());
        const Trajectory traj = evolve(gaussian(g, 0.0, 1.0, 1e-8, 1.0), p);
        for (double d : duhamel_residual(traj, p)) CHECK(d <= 1e-12);
    }

    SUBCASE("nonlinear defect shrinks at second order in dt") {
        auto worst = [&](double dt) {
            const SolverParams p = basic(1.0, dt, 0.2, NonlinearityKind::full());
            const Trajectory traj = evolve(gaussian(g, 0.0, 1.0, 0.8, 1.0), p);
            double w = 0.0;
            for (double d : duhamel_residual(traj, p)) w = std::max(w, d);
            return w;
        };
        const double ratio = worst(2e-3) / worst(1e-3);
        CHECK(ratio >= 4.0 * 0.7);
        CHECK(ratio <= 4.0 * 1.3);
    }
}

TEST_CASE("growth probe") {
    const Grid g = make_grid(0.0, 1.0, 199);

    SUBCASE("free flow on an eigenmode keeps every norm flat") {
        const Field phi = scaled(sine_mode(g, 2), 1e-8);
        const SolverParams p = basic(0.5, 1e-3, 0.2, NonlinearityKind::full());
        const Trajectory traj = evolve(phi, p);
        CHECK(growth_probe(traj, 1.0) == doctest::Approx(1.0).epsilon(1e-3));
    }

    SUBCASE("constant trajectory gives exactly one") {
        Trajectory traj;
        const Field w = sine_mode(g, 1);
        for (int k = 0; k < 4; ++k) {
            traj.times.push_back(k * 0.1);
            traj.states.push_back(w);
        }
        CHECK(growth_probe(traj, 0.5) == 1.0);
    }

    SUBCASE("zero data is rejected") {
        Trajectory traj;
        traj.times = {0.0};
        traj.states = {Field(g)};
        CHECK_THROWS_AS(growth_probe(traj, 1.0), std::invalid_argument);
    }
}

TEST_CASE("fixed-point failure reports a solver error") {
    const Grid g = make_grid(0.0, 1.0, 199);
    SolverParams p = basic(2.0, 0.5, 1.0, NonlinearityKind::full());
    p.fp_max_iter = 10;
    CHECK_THROWS_AS(evolve(scaled(sine_mode(g, 1), 40.0), p), solver_error);
}
