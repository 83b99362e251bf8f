#pragma once

#include <complex>
#include <span>
#include <vector>

namespace gdnls {

using complexd = std::complex<double>;

// Uniform mesh on (a,b) with n interior nodes and homogeneous Dirichlet
// boundary. Node j (1-based) sits at a + j*h, h = (b-a)/(n+1).
struct Grid {
    double a = 0.0;
    double b = 1.0;
    int n = 0;
    double h = 0.0;

    double node(int j) const { return a + j * h; }
    double length() const { return b - a; }
    bool same_as(const Grid& o) const { return a == o.a && b == o.b && n == o.n; }
};

Grid make_grid(double a, double b, int n);

// Complex grid function sampled at the interior nodes; the zero extension
// u_0 = u_{n+1} = 0 is applied wherever a stencil reaches the boundary.
struct Field {
    Grid grid;
    std::vector<complexd> values;

    Field() = default;
    explicit Field(const Grid& g) : grid(g), values(static_cast<size_t>(g.n), complexd{0.0, 0.0}) {}
    Field(const Grid& g, std::vector<complexd> v);

    int size() const { return grid.n; }
    complexd& operator[](int j) { return values[static_cast<size_t>(j)]; }
    const complexd& operator[](int j) const { return values[static_cast<size_t>(j)]; }
};

// Second-order central difference with zero extension.
Field d1(const Field& u);
// Standard 3-point Dirichlet Laplacian.
Field d2(const Field& u);

// Trapezoid quadrature; the boundary samples vanish, so this is h * sum.
double integrate(const Grid& g, std::span<const double> samples);
complexd integrate(const Grid& g, std::span<const complexd> samples);

// <u,v> = h * sum conj(u_j) v_j
complexd inner_product(const Field& u, const Field& v);
double l2_norm(const Field& u);
double linf_norm(const Field& u);

struct TridiagonalSystem {
    std::vector<complexd> lower;  // n-1
    std::vector<complexd> diag;   // n
    std::vector<complexd> upper;  // n-1
};

// Thomas algorithm. Throws std::runtime_error if a pivot falls below 1e-300;
// all systems built by this project are diagonally dominant.
std::vector<complexd> solve_tridiagonal(const TridiagonalSystem& sys,
                                        std::span<const complexd> rhs);
Field solve_tridiagonal(const TridiagonalSystem& sys, const Field& rhs);

// Discrete sine eigenmode sin(k pi (x-a)/(b-a)) and its d2 eigenvalue
// -(2/h^2)(1 - cos(k pi h/(b-a))).
Field sine_mode(const Grid& g, int k, double amplitude = 1.0);
double sine_mode_eigenvalue(const Grid& g, int k);

} // namespace gdnls
