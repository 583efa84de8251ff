#include "weyltail/weyl.hpp"

#include <cmath>
#include <numbers>

#include "weyltail/error.hpp"

namespace wt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr long kRefresh = 128; // exact restart period of the recurrence

// frac(a * b) using the exact product split
double frac_mul(double a, double b)
{
    double p = a * b;
    double e = std::fma(a, b, -p);
    double f = p - std::floor(p);
    return f + e;
}

cplx unit(double t)
{
    double r = t - std::floor(t);
    return {std::cos(kTwoPi * r), std::sin(kTwoPi * r)};
}

// Sum_{n=n0}^{n1} w(n) e(theta_n); theta_{n+1} - theta_n = (n + 1/2) x + c x + alpha
template <class Weight>
cplx recurrence_sum(long n0, long n1, double x, double c, double alpha, Weight&& w, cplx* partial = nullptr,
                    long partial_at = 0)
{
    cplx s(0.0, 0.0);
    const cplx ex = unit(x);
    for (long start = n0; start <= n1; start += kRefresh) {
        long stop = std::min(n1, start + kRefresh - 1);
        cplx term = unit(weyl_phase(start, x, c, alpha));
        // increment from start to start + 1
        double inc = frac_mul(static_cast<double>(start) + 0.5, x) + frac_mul(c, x) + (alpha - std::floor(alpha));
        cplx r = unit(inc);
        for (long n = start; n <= stop; ++n) {
            s += w(n) * term;
            if (partial && n == partial_at) *partial = s;
            term *= r;
            r *= ex;
        }
    }
    return s;
}

} // namespace

double weyl_phase(long n, double x, double c, double alpha)
{
    const double nd = static_cast<double>(n);
    const double half_sq = 0.5 * nd * nd; // exact for |n| < 2^26
    double t = frac_mul(half_sq, x);
    double cn = c * nd;
    double cn_err = std::fma(c, nd, -cn);
    t += frac_mul(cn, x) + cn_err * x;
    t += frac_mul(alpha, nd);
    return t - std::floor(t);
}

cplx weyl_sum(long N, double x, double c, double alpha)
{
    if (N < 1) return {0.0, 0.0};
    return recurrence_sum(1, N, x, c, alpha, [](long) { return 1.0; });
}

cplx weighted_weyl_sum(const Window& f, long N, double x, double c, double alpha)
{
    if (N < 1) throw Error(ErrorKind::ParameterOutOfRange, "N must be >= 1");
    long lo, hi;
    const double Nd = static_cast<double>(N);
    if (f.compact()) {
        lo = static_cast<long>(std::floor(Nd * f.poly().lo()));
        hi = static_cast<long>(std::ceil(Nd * f.poly().hi()));
    } else {
        double L = std::sqrt(36.85 / (std::numbers::pi * f.gauss_a())) + 1.0;
        lo = -static_cast<long>(std::ceil(Nd * L));
        hi = -lo;
    }
    return recurrence_sum(lo, hi, x, c, alpha, [&](long n) { return f(static_cast<double>(n) / Nd); });
}

long scaled_length(long N, double b)
{
    return static_cast<long>(std::floor(b * static_cast<double>(N) + 1e-9));
}

cplx product_statistic(long N, double b, double x, double c, double alpha)
{
    if (N < 1) throw Error(ErrorKind::ParameterOutOfRange, "N must be >= 1");
    if (!(b >= 1)) throw Error(ErrorKind::ParameterOutOfRange, "b must be >= 1");
    const long M = scaled_length(N, b);
    cplx sN(0.0, 0.0);
    cplx sM = recurrence_sum(1, M, x, c, alpha, [](long) { return 1.0; }, &sN, N);
    return sN * std::conj(sM) / static_cast<double>(N);
}

} // namespace wt
