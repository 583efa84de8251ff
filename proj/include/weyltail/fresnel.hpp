#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace wt {

using cplx = std::complex<double>;

// Phi_k(r) = int_0^inf tau^k exp(i(tau^2 + 2 r tau)) dtau for r >= 0, k in {0,1,2}.
// k >= 1 is understood as the analytic continuation (Abel limit).
cplx fresnel_tail(double r, int k = 0);

// G_k(v, a) = int_0^inf s^k exp(i(v s + a s^2)) ds for k = 0..2.
// Requires v*a >= 0 (no stationary point on the ray) and (v, a) != (0, 0).
void chirp_moments(double v, double a, cplx G[3]);

// A piecewise quadratic on [x[0], x[m]]: piece j lives on (x[j], x[j+1]] and is
// c[j][0] + c[j][1] (t - x[j]) + c[j][2] (t - x[j])^2.
struct PieceView {
    std::span<const double> x;
    std::span<const std::array<double, 3>> c;
};

struct ChirpIntegral {
    cplx value;
    double magnitude_sum; // sum of moduli of the assembled terms
    bool quadrature;      // weak-oscillation branch used
};

// int p(t) exp(i(A t^2 + B t + phase0)) dt over the support of p.
ChirpIntegral chirp_integral(const PieceView& p, double A, double B, double phase0 = 0.0);

struct MomentResult {
    cplx value;
    bool loss_of_precision;
};

// int_a^b w^k exp(i(A w^2 + B w)) dw, k in {0,1,2}.
MomentResult fresnel_moment(double A, double B, int k, double a, double b);

// n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes, weights;
};
const GaussRule& gauss_legendre(int n);

} // namespace wt
