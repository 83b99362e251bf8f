#include "gdnls/yosida.hpp"

#include <cmath>
#include <stdexcept>

namespace gdnls {

YosidaOp::YosidaOp(const Grid& grid, double m) : grid_(grid), m_(m) {
    if (!(m > 0.0) || !std::isfinite(m))
        throw std::invalid_argument("YosidaOp: requires m > 0");
    const int n = grid.n;
    const double s = 1.0 / (m * grid.h * grid.h);
    const double diag = 1.0 + 2.0 * s;
    off_ = -s;
    inv_pivot_.resize(static_cast<size_t>(n));
    c_.resize(static_cast<size_t>(n > 0 ? n - 1 : 0));
    double piv = diag;
    inv_pivot_[0] = 1.0 / piv;
    if (n > 1) c_[0] = off_ * inv_pivot_[0];
    for (int i = 1; i < n; ++i) {
        piv = diag - off_ * c_[static_cast<size_t>(i - 1)];
        inv_pivot_[static_cast<size_t>(i)] = 1.0 / piv;
        if (i + 1 < n) c_[static_cast<size_t>(i)] = off_ * inv_pivot_[static_cast<size_t>(i)];
    }
}

Field YosidaOp::apply(const Field& u) const {
    if (!u.grid.same_as(grid_))
        throw std::invalid_argument("YosidaOp::apply: grid mismatch");
    const int n = grid_.n;
    Field x(grid_);
    x[0] = u[0] * inv_pivot_[0];
    for (int i = 1; i < n; ++i)
        x[i] = (u[i] - off_ * x[i - 1]) * inv_pivot_[static_cast<size_t>(i)];
    for (int i = n - 2; i >= 0; --i)
        x[i] -= c_[static_cast<size_t>(i)] * x[i + 1];
    return x;
}

namespace {

// Forward-difference H1 seminorm with zero extension.
double grad_seminorm(const Field& u) {
    const int n = u.size();
    double s = std::norm(u[0]) + std::norm(u[n - 1]);
    for (int j = 0; j + 1 < n; ++j) s += std::norm(u[j + 1] - u[j]);
    return std::sqrt(s / u.grid.h);
}

} // namespace

DifferenceBoundsReport check_difference_bounds(const Grid& grid, double m, double n_param,
                                               const Field& phi, const Field& psi) {
    if (!(m > 0.0) || !(n_param > 0.0))
        throw std::invalid_argument("check_difference_bounds: m, n must be positive");
    const YosidaOp Jm(grid, m);
    const YosidaOp Jn(grid, n_param);
    const Field um = Jm.apply(phi);
    const Field un = Jn.apply(phi);
    Field diff(grid);
    for (int j = 0; j < grid.n; ++j) diff[j] = um[j] - un[j];

    const double lvl = 1.0 / m + 1.0 / n_param;
    constexpr double slack = 1.0 + 1e-9;

    DifferenceBoundsReport rep;
    rep.lhs_l2 = l2_norm(diff);
    rep.rhs_l2 = lvl * l2_norm(d2(phi));
    rep.l2_ok = rep.lhs_l2 <= rep.rhs_l2 * slack;
    rep.lhs_pair = std::abs(inner_product(diff, psi));
    rep.rhs_pair = lvl * grad_seminorm(phi) * grad_seminorm(psi);
    rep.pair_ok = rep.lhs_pair <= rep.rhs_pair * slack;
    return rep;
}

} // namespace gdnls
