#include "gdnls/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gdnls {

Grid make_grid(double a, double b, int n) {
    if (!std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("make_grid: endpoints must be finite");
    if (!(b > a))
        throw std::invalid_argument("make_grid: requires b > a");
    if (n < 4)
        throw std::invalid_argument("make_grid: requires n >= 4, got " + std::to_string(n));
    Grid g;
    g.a = a;
    g.b = b;
    g.n = n;
    g.h = (b - a) / (n + 1);
    return g;
}

Field::Field(const Grid& g, std::vector<complexd> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != g.n)
        throw std::invalid_argument("Field: value count does not match grid.n");
}

Field d1(const Field& u) {
    const int n = u.size();
    const double inv2h = 1.0 / (2.0 * u.grid.h);
    Field out(u.grid);
    for (int j = 0; j < n; ++j) {
        const complexd up = (j + 1 < n) ? u[j + 1] : complexd{0.0, 0.0};
        const complexd um = (j > 0) ? u[j - 1] : complexd{0.0, 0.0};
        out[j] = (up - um) * inv2h;
    }
    return out;
}

Field d2(const Field& u) {
    const int n = u.size();
    const double invh2 = 1.0 / (u.grid.h * u.grid.h);
    Field out(u.grid);
    for (int j = 0; j < n; ++j) {
        const complexd up = (j + 1 < n) ? u[j + 1] : complexd{0.0, 0.0};
        const complexd um = (j > 0) ? u[j - 1] : complexd{0.0, 0.0};
        out[j] = (up - 2.0 * u[j] + um) * invh2;
    }
    return out;
}

double integrate(const Grid& g, std::span<const double> samples) {
    double s = 0.0;
    for (double v : samples) s += v;
    return g.h * s;
}

complexd integrate(const Grid& g, std::span<const complexd> samples) {
    complexd s{0.0, 0.0};
    for (const complexd& v : samples) s += v;
    return g.h * s;
}

complexd inner_product(const Field& u, const Field& v) {
    if (!u.grid.same_as(v.grid))
        throw std::invalid_argument("inner_product: grid mismatch");
    complexd s{0.0, 0.0};
    for (int j = 0; j < u.size(); ++j) s += std::conj(u[j]) * v[j];
    return u.grid.h * s;
}

double l2_norm(const Field& u) {
    double s = 0.0;
    for (const complexd& v : u.values) s += std::norm(v);
    return std::sqrt(u.grid.h * s);
}

double linf_norm(const Field& u) {
    double s = 0.0;
    for (const complexd& v : u.values) s = std::max(s, std::abs(v));
    return s;
}

std::vector<complexd> solve_tridiagonal(const TridiagonalSystem& sys,
                                        std::span<const complexd> rhs) {
    const size_t n = sys.diag.size();
    if (sys.lower.size() + 1 != n || sys.upper.size() + 1 != n)
        throw std::invalid_argument("solve_tridiagonal: malformed bands");
    if (rhs.size() != n)
        throw std::invalid_argument("solve_tridiagonal: rhs size mismatch");

    constexpr double pivot_floor = 1e-300;
    std::vector<complexd> c(n > 0 ? n - 1 : 0);
    std::vector<complexd> x(n);

    complexd pivot = sys.diag[0];
    if (std::abs(pivot) < pivot_floor)
        throw std::runtime_error("solve_tridiagonal: pivot underflow at row 0");
    if (n > 1) c[0] = sys.upper[0] / pivot;
    x[0] = rhs[0] / pivot;
    for (size_t i = 1; i < n; ++i) {
        pivot = sys.diag[i] - sys.lower[i - 1] * c[i - 1];
        if (std::abs(pivot) < pivot_floor)
            throw std::runtime_error("solve_tridiagonal: pivot underflow at row " + std::to_string(i));
        if (i + 1 < n) c[i] = sys.upper[i] / pivot;
        x[i] = (rhs[i] - sys.lower[i - 1] * x[i - 1]) / pivot;
    }
    for (size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    return x;
}

Field solve_tridiagonal(const TridiagonalSystem& sys, const Field& rhs) {
    return Field(rhs.grid, solve_tridiagonal(sys, std::span<const complexd>(rhs.values)));
}

Field sine_mode(const Grid& g, int k, double amplitude) {
    Field out(g);
    const double w = k * M_PI / g.length();
    for (int j = 0; j < g.n; ++j)
        out[j] = amplitude * std::sin(w * (g.node(j + 1) - g.a));
    return out;
}

double sine_mode_eigenvalue(const Grid& g, int k) {
    return -(2.0 / (g.h * g.h)) * (1.0 - std::cos(k * M_PI * g.h / g.length()));
}

} // namespace gdnls
