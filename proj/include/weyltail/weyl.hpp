#pragma once

#include <complex>

#include "weyltail/windows.hpp"

namespace wt {

using cplx = std::complex<double>;

// frac part of the phase (n^2/2 + c n) x + alpha n, accurate to a few ulps of 1
double weyl_phase(long n, double x, double c, double alpha);

// S_N(x; c, alpha) = sum_{n=1}^N e((n^2/2 + c n) x + alpha n)
cplx weyl_sum(long N, double x, double c = 0.0, double alpha = 0.0);

// sum_n f(n/N) e((n^2/2 + c n) x + alpha n) over the support of f (Gaussians cut where f < 1e-16)
cplx weighted_weyl_sum(const Window& f, long N, double x, double c = 0.0, double alpha = 0.0);

// floor(b N + 1e-9)
long scaled_length(long N, double b);

// (1/N) S_N conj(S_{floor(bN)}), one pass over the longer sum
cplx product_statistic(long N, double b, double x, double c = 0.0, double alpha = 0.0);

} // namespace wt
