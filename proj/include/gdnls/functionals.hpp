#pragma once

#include "gdnls/grid.hpp"
#include "gdnls/yosida.hpp"

#include <array>
#include <span>

namespace gdnls {

// M(u) = integral |u|^2
double mass(const Field& u);

// Forward-difference gradient term sum_{j=0}^{n} |u_{j+1}-u_j|^2 / h, with
// zero extension; equals -<d2 u, u> exactly (summation by parts).
double grad_norm_sq(const Field& u);

// g(u) = i |u|^{2 sigma} d1 u, pointwise.
Field g_nonlinear(const Field& u, double sigma);

// G(u) = 1/(sigma+1) * integral Im(|u|^{2 sigma} conj(u) d1 u)
double potential_g(const Field& u, double sigma);

// E(u) = grad_norm_sq(u) + G(u)
double energy(const Field& u, double sigma);

// E_m(u) = grad_norm_sq(u) + G(J_m u)
double approx_energy(const Field& u, double sigma, const YosidaOp& J);

// 2 M(u) + 2 E_m(u) + integral |u|^{4 sigma + 2}; dominates h1_norm(u)^2.
double calligraphic_energy(const Field& u, double sigma, const YosidaOp& J);

// P(u) = integral Im(conj(u) d1 u)
double momentum(const Field& u);

double h1_norm(const Field& u);
double h2_norm(const Field& u);

// Fractional Sobolev norm for non-integer s in (0,2): the integer part plus
// the Gagliardo double sum of the m-th derivative, diagonal excluded.
double hs_norm(const Field& u, double s);

// (integral |u|^p)^{1/p}; max for p = inf. Requires p >= 1.
double lp_norm(const Field& u, double p);

// lp_norm(u,p) / (sqrt(p) * full H^{1/2} norm); scale invariant.
double sqrt_p_ratio(const Field& u, double p);

// Exponent pair with 2/q = 1/2 - 1/r (1/inf = 0); constructor validates.
struct AdmissiblePair {
    double q;
    double r;
    AdmissiblePair(double q_, double r_);
};

// Representative pair set used for the X(I) supremum.
const std::array<AdmissiblePair, 4>& strichartz_pairs();

// (dt * trapezoid_t ||u(t)||_{L^r}^q)^{1/q}, sup in time for q = inf; the
// derivative flag applies the norm to d1 u.
double mixed_norm(std::span<const Field> states, double spacing, const AdmissiblePair& pair,
                  bool derivative = false);

// sup over strichartz_pairs of mixed_norm, plus the derivative counterpart.
double x_norm(std::span<const Field> states, double spacing);

struct ThresholdParams {
    double c = 1.0;
    double sigma = 1.0;
    ThresholdParams(double c_, double sigma_);
    double delta() const;            // c^{-1/(2 sigma)}
    double f_sigma(double x) const;  // x^2 - (c/(sigma+1)) x^{2 sigma + 2}
};

} // namespace gdnls
