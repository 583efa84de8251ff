#pragma once

#include <complex>

#include "weyltail/fresnel.hpp"
#include "weyltail/windows.hpp"

namespace wt {

int sigma_phi(double phi);

enum class Method { ClosedForm, Quadrature, Analytic, Limit };

struct TransformResult {
    cplx value;
    Method method;
    double est_error;
};

// f_phi(w) for one fixed window and angle; cheap to evaluate at many w
class Transformer {
public:
    Transformer(const Window& f, double phi);
    TransformResult eval(double w) const;
    cplx operator()(double w) const { return eval(w).value; }
    // the angle is within 1e-8 of a multiple of pi and f is not analytic: f_phi(w) = e(-nu/4) f((-1)^nu w)
    bool limit_branch() const { return limit_; }
    // w-range outside which f_phi vanishes identically (only meaningful on the limit branch)
    double support_lo() const { return slo_; }
    double support_hi() const { return shi_; }

private:
    const Window* f_;
    double phi_;
    bool limit_ = false;
    int nu_ = 0;
    double A_ = 0, csc_ = 0, cot_ = 0, sabs_ = 1;
    cplx pre_;  // e(-sigma/8) |sin|^{-1/2}
    cplx unit_; // e(-sigma/8)
    double slo_ = 0, shi_ = 0;
};

TransformResult transform(const Window& f, double phi, double w);

// adaptive Gauss-Kronrod oracle for the oscillatory integral (abs tolerance tol)
TransformResult transform_quadrature(const Window& f, double phi, double w, double tol = 1e-11);

struct GridSpec {
    int n_phi = 512;
    int n_w = 4096;
    double W = 64.0;
};

struct KappaResult {
    double grid_max;       // lower estimate of kappa_eta
    double arg_phi, arg_w; // where it was attained
    double certified;      // upper bound from the uniform bound (infinite if unavailable)
    double tail_bound;     // sup over |w| > W of the decay bound times (1+w^2)^{eta/2}
};

// |f_phi(w)| on the grid phi_i = pi i / n_phi (i < n_phi), w_j = -W + 2W j/(n_w - 1); uses |f_{phi+pi}(w)| = |f_phi(-w)|
struct ModulusGrid {
    GridSpec spec;
    std::vector<float> mod; // n_phi * n_w, row-major in phi
};
ModulusGrid modulus_grid(const Window& f, const GridSpec& g, int threads = 1);
KappaResult kappa_from_grid(const Window& f, const ModulusGrid& m, double eta);
KappaResult kappa_eta(const Window& f, double eta, const GridSpec& g = {}, int threads = 1);

// right side of the uniform bound, assembled from h norms; 1 < eta <= 2, b >= 1
double bound_uniform(const Window& f, double eta, double b);

// pointwise decay constants: |f_phi(w)| <= min(B0, B1/|w|, B2/w^2); B2 is infinite unless f is C^1
struct DecayBounds {
    double B0, B1, B2;
    double at(double w) const;
};
DecayBounds decay_bounds(const Window& f);

// |(i/2pi) d_phi F - 1/2(-1/(4pi^2) d_w^2 + w^2) F| with F = I_phi f, central differences of step h
double schrodinger_residual(const Window& f, double phi, double w, double h);

} // namespace wt
