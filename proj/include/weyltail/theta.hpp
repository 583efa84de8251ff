#pragma once

#include <complex>

#include "weyltail/group.hpp"
#include "weyltail/windows.hpp"

namespace wt {

using cplx = std::complex<double>;

struct TruncationPolicy {
    enum class Kind { Fixed, Adaptive };
    Kind kind = Kind::Fixed;
    double u_max = 64.0; // |n - xi2| sqrt(y) <= u_max
    long n_max = 200;    // |n| <= n_max; negative means no cap
    double tol = 1e-12;  // Adaptive: stop once doublings move the sum by <= tol * max(1, |sum|)
    long max_terms = 1L << 25;

    static TruncationPolicy standard() { return {}; }
    static TruncationPolicy paper_repro() { return {Kind::Fixed, 1e300, 100, 0.0, 1L << 25}; }
    static TruncationPolicy adaptive(double tol) { return {Kind::Adaptive, 64.0, -1, tol, 1L << 25}; }
};

struct ThetaValue {
    cplx value;
    long n_min = 0, n_max = 0;
    double tail_estimate = 0.0;
};

// y^{1/4} e(-xi1 xi2 / 2) sum_n f_phi((n - xi2) sqrt y) e((n - xi2)^2 x / 2 + n xi1)
// throws SlowConvergence if y < 1e-6 off the limit branch
ThetaValue theta(const Window& f, const ThetaPoint& p, const TruncationPolicy& trunc = {});
cplx theta_product(const Window& f1, const Window& f2, const ThetaPoint& p, const TruncationPolicy& trunc = {});

// |N^{-1/2} S_N(x; c, alpha; f) - Theta_f(x + i/N^2, 0; alpha + c x, 0)|
double weyl_identity_check(const Window& f, long N, double x, double c, double alpha);

struct DyadicCheck {
    double linearity;  // |Theta_full - Theta_left - Theta_right|
    double orbit;      // |Theta_left - sqrt(s) sum_j 2^{-j/2} Theta_Delta(g Phi^{t_j})|
};
DyadicCheck dyadic_decomposition_check(double s, int J, const ThetaPoint& p,
                                       const TruncationPolicy& trunc = TruncationPolicy::adaptive(1e-11));

} // namespace wt
