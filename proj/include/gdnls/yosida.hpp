#pragma once

#include "gdnls/grid.hpp"

namespace gdnls {

// Resolvent J_m = (I - (1/m) D^2)^{-1} with Dirichlet boundary. The Thomas
// factorization of the (real, constant-band) system is computed once and
// reused; a single apply is two O(n) sweeps on the complex right-hand side.
class YosidaOp {
public:
    YosidaOp(const Grid& grid, double m);

    Field apply(const Field& u) const;

    const Grid& grid() const { return grid_; }
    double m() const { return m_; }

private:
    Grid grid_;
    double m_ = 0.0;
    double off_ = 0.0;               // common off-diagonal -1/(m h^2)
    std::vector<double> inv_pivot_;  // 1 / (diag - lower * c_{i-1})
    std::vector<double> c_;          // upper * inv_pivot
};

struct DifferenceBoundsReport {
    double lhs_l2 = 0.0;   // || J_m phi - J_n phi ||_L2
    double rhs_l2 = 0.0;   // (1/m + 1/n) || d2 phi ||_L2
    bool l2_ok = false;
    double lhs_pair = 0.0; // |< J_m phi - J_n phi, psi >|
    double rhs_pair = 0.0; // (1/m + 1/n) || dx phi || || dx psi ||
    bool pair_ok = false;
};

// Lemma-style difference bounds between two resolvent levels, checked with a
// 1e-9 relative slack.
DifferenceBoundsReport check_difference_bounds(const Grid& grid, double m, double n_param,
                                               const Field& phi, const Field& psi);

} // namespace gdnls
