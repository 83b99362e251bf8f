#include "gdnls/functionals.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gdnls {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_sigma(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("sigma must be positive");
}
} // namespace

double mass(const Field& u) {
    double s = 0.0;
    for (const complexd& v : u.values) s += std::norm(v);
    return u.grid.h * s;
}

double grad_norm_sq(const Field& u) {
    const int n = u.size();
    double s = std::norm(u[0]) + std::norm(u[n - 1]);
    for (int j = 0; j + 1 < n; ++j) s += std::norm(u[j + 1] - u[j]);
    return s / u.grid.h;
}

Field g_nonlinear(const Field& u, double sigma) {
    require_sigma(sigma);
    Field du = d1(u);
    Field out(u.grid);
    for (int j = 0; j < u.size(); ++j)
        out[j] = complexd{0.0, 1.0} * std::pow(std::abs(u[j]), 2.0 * sigma) * du[j];
    return out;
}

double potential_g(const Field& u, double sigma) {
    require_sigma(sigma);
    Field du = d1(u);
    double s = 0.0;
    for (int j = 0; j < u.size(); ++j)
        s += std::pow(std::abs(u[j]), 2.0 * sigma) * std::imag(std::conj(u[j]) * du[j]);
    return u.grid.h * s / (sigma + 1.0);
}

double energy(const Field& u, double sigma) {
    return grad_norm_sq(u) + potential_g(u, sigma);
}

double approx_energy(const Field& u, double sigma, const YosidaOp& J) {
    if (!u.grid.same_as(J.grid()))
        throw std::invalid_argument("approx_energy: grid mismatch between field and operator");
    return grad_norm_sq(u) + potential_g(J.apply(u), sigma);
}

double calligraphic_energy(const Field& u, double sigma, const YosidaOp& J) {
    double s = 0.0;
    for (const complexd& v : u.values) s += std::pow(std::abs(v), 4.0 * sigma + 2.0);
    return 2.0 * mass(u) + 2.0 * approx_energy(u, sigma, J) + u.grid.h * s;
}

double momentum(const Field& u) {
    Field du = d1(u);
    double s = 0.0;
    for (int j = 0; j < u.size(); ++j) s += std::imag(std::conj(u[j]) * du[j]);
    return u.grid.h * s;
}

double h1_norm(const Field& u) {
    return std::sqrt(mass(u) + grad_norm_sq(u));
}

double h2_norm(const Field& u) {
    const Field lap = d2(u);
    double s = 0.0;
    for (const complexd& v : lap.values) s += std::norm(v);
    return std::sqrt(mass(u) + grad_norm_sq(u) + u.grid.h * s);
}

namespace {

// Gagliardo double sum of order r in (0,1), diagonal excluded.
double gagliardo_sq(const Field& f, double r) {
    const int n = f.size();
    const double h = f.grid.h;
    const double expo = 1.0 + 2.0 * r;
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            const double dist = (k - j) * h;
            s += std::norm(f[j] - f[k]) / std::pow(dist, expo);
        }
    }
    return 2.0 * s * h * h;
}

} // namespace

double hs_norm(const Field& u, double s) {
    if (!(s > 0.0) || !(s < 2.0))
        throw std::invalid_argument("hs_norm: requires s in (0,2)");
    if (s == 1.0)
        throw std::invalid_argument("hs_norm: integer s is not a fractional order");
    if (s < 1.0)
        return std::sqrt(mass(u) + gagliardo_sq(u, s));
    const double m2 = mass(u) + grad_norm_sq(u);
    return std::sqrt(m2 + gagliardo_sq(d1(u), s - 1.0));
}

double lp_norm(const Field& u, double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("lp_norm: requires p >= 1");
    if (p == kInf) return linf_norm(u);
    double s = 0.0;
    for (const complexd& v : u.values) s += std::pow(std::abs(v), p);
    return std::pow(u.grid.h * s, 1.0 / p);
}

double sqrt_p_ratio(const Field& u, double p) {
    if (!(p >= 2.0))
        throw std::invalid_argument("sqrt_p_ratio: requires p >= 2");
    const double h_half = hs_norm(u, 0.5);
    if (h_half == 0.0)
        throw std::invalid_argument("sqrt_p_ratio: zero field");
    return lp_norm(u, p) / (std::sqrt(p) * h_half);
}

AdmissiblePair::AdmissiblePair(double q_, double r_) : q(q_), r(r_) {
    const bool range_ok = q >= 4.0 && r >= 2.0;
    const double lhs = (q == kInf) ? 0.0 : 2.0 / q;
    const double rhs = 0.5 - ((r == kInf) ? 0.0 : 1.0 / r);
    if (!range_ok || std::abs(lhs - rhs) > 1e-12)
        throw std::invalid_argument("AdmissiblePair: 2/q = 1/2 - 1/r violated");
}

const std::array<AdmissiblePair, 4>& strichartz_pairs() {
    static const std::array<AdmissiblePair, 4> pairs = {
        AdmissiblePair(kInf, 2.0),
        AdmissiblePair(8.0, 4.0),
        AdmissiblePair(6.0, 6.0),
        AdmissiblePair(4.0, kInf),
    };
    return pairs;
}

double mixed_norm(std::span<const Field> states, double spacing, const AdmissiblePair& pair,
                  bool derivative) {
    if (states.empty())
        throw std::invalid_argument("mixed_norm: empty trajectory");
    if (!(spacing > 0.0))
        throw std::invalid_argument("mixed_norm: requires positive spacing");
    std::vector<double> vals;
    vals.reserve(states.size());
    for (const Field& u : states)
        vals.push_back(derivative ? lp_norm(d1(u), pair.r) : lp_norm(u, pair.r));
    if (pair.q == kInf) {
        double m = 0.0;
        for (double v : vals) m = std::max(m, v);
        return m;
    }
    double s = 0.5 * (std::pow(vals.front(), pair.q) + std::pow(vals.back(), pair.q));
    for (size_t k = 1; k + 1 < vals.size(); ++k) s += std::pow(vals[k], pair.q);
    return std::pow(spacing * s, 1.0 / pair.q);
}

double x_norm(std::span<const Field> states, double spacing) {
    double base = 0.0;
    double deriv = 0.0;
    for (const AdmissiblePair& pair : strichartz_pairs()) {
        base = std::max(base, mixed_norm(states, spacing, pair, false));
        deriv = std::max(deriv, mixed_norm(states, spacing, pair, true));
    }
    return base + deriv;
}

ThresholdParams::ThresholdParams(double c_, double sigma_) : c(c_), sigma(sigma_) {
    if (!(c > 0.0))
        throw std::invalid_argument("ThresholdParams: requires c > 0");
    if (!(sigma > 0.0))
        throw std::invalid_argument("ThresholdParams: requires sigma > 0");
}

double ThresholdParams::delta() const {
    return std::pow(c, -1.0 / (2.0 * sigma));
}

double ThresholdParams::f_sigma(double x) const {
    return x * x - (c / (sigma + 1.0)) * std::pow(x, 2.0 * sigma + 2.0);
}

} // namespace gdnls
