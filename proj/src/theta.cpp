#include "weyltail/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "weyltail/error.hpp"
#include "weyltail/oscillator.hpp"
#include "weyltail/weyl.hpp"

namespace wt {

namespace {

constexpr double kPi = std::numbers::pi;

cplx e_turns(double t)
{
    t -= std::floor(t);
    return {std::cos(2 * kPi * t), std::sin(2 * kPi * t)};
}

struct Summer {
    const Transformer& tr;
    const ThetaPoint& p;
    double r; // 1/sqrt(y); u = m / r reproduces n/N exactly when y = 1/N^2
    cplx add(long a, long b) const // inclusive, empty when a > b
    {
        cplx s(0.0, 0.0);
        for (long n = a; n <= b; ++n) {
            double m = static_cast<double>(n) - p.xi2;
            cplx v = tr(m / r);
            if (v == 0.0) continue;
            s += v * e_turns(0.5 * m * m * p.x + static_cast<double>(n) * p.xi1);
        }
        return s;
    }
};

// bound on sum over |u_n| > U of |f_phi(u_n)|, spacing h = sqrt y, both sides
double tail_bound(const Window& f, double U, double h)
{
    if (!(U > 0)) return std::numeric_limits<double>::infinity();
    if (!f.compact()) {
        // |f_phi| is a Gaussian of rate at least min(a, 1/a)
        double a = f.gauss_a(), m = std::min(a, 1 / a);
        double g = std::abs(f.amp()) * std::sqrt(std::max(a, 1 / a)) * std::exp(-kPi * m * U * U);
        if (f.kind() == Window::Kind::Hermite1) g *= U + 1 / std::sqrt(m);
        return 2 * g * (1 + 1 / (2 * kPi * m * U * h));
    }
    DecayBounds d = decay_bounds(f);
    if (std::isfinite(d.B2)) return 2 * d.B2 * (1 / (U * U) + 1 / (U * h));
    // only 1/u decay: the series converges by oscillation, report the edge-term size
    return 2 * d.B1 / U;
}

} // namespace

ThetaValue theta(const Window& f, const ThetaPoint& p, const TruncationPolicy& trunc)
{
    if (!(p.y > 0)) throw Error(ErrorKind::ParameterOutOfRange, "theta needs y > 0");
    Transformer tr(f, std::fmod(p.phi, 2 * kPi));
    const double sy = std::sqrt(p.y);
    const double y4 = std::sqrt(sy);
    const cplx pre = y4 * e_turns(-0.5 * p.xi1 * p.xi2);
    // y = 1/N^2 must give the grid n/N exactly, so snap 1/sqrt(y) to an integer within a few ulps
    double inv_sy = std::sqrt(1.0 / p.y);
    if (double k = std::round(inv_sy); k > 0 && std::abs(inv_sy - k) <= 8 * std::numeric_limits<double>::epsilon() * k)
        inv_sy = k;
    Summer sum{tr, p, inv_sy};
    ThetaValue out;

    if (tr.limit_branch() && f.compact()) {
        // f_phi has compact support: the sum is finite and exact
        // one spare point each side; f itself decides the endpoints
        long a = static_cast<long>(std::ceil(tr.support_lo() / sy + p.xi2)) - 1;
        long b = static_cast<long>(std::floor(tr.support_hi() / sy + p.xi2)) + 1;
        if (static_cast<double>(b - a) > static_cast<double>(trunc.max_terms))
            throw Error(ErrorKind::SlowConvergence, "support holds too many lattice points");
        out.value = pre * sum.add(a, b);
        out.n_min = a;
        out.n_max = b;
        return out;
    }
    if (p.y < 1e-6) throw Error(ErrorKind::SlowConvergence, "y < 1e-6; reduce to the fundamental domain first");

    auto range = [&](double U) {
        double r = U / sy;
        double lo = std::ceil(p.xi2 - r), hi = std::floor(p.xi2 + r);
        if (trunc.n_max >= 0) {
            lo = std::max(lo, -static_cast<double>(trunc.n_max));
            hi = std::min(hi, static_cast<double>(trunc.n_max));
        }
        return std::pair<long, long>{static_cast<long>(lo), static_cast<long>(hi)};
    };
    // distance from xi2 to the first lattice point past the range, in u units
    auto edge = [&](long a, long b) { return std::min(p.xi2 - (a - 1), (b + 1) - p.xi2) * sy; };

    if (trunc.kind == TruncationPolicy::Kind::Fixed) {
        auto [a, b] = range(trunc.u_max);
        out.value = pre * sum.add(a, b);
        out.n_min = a;
        out.n_max = b;
        out.tail_estimate = y4 * tail_bound(f, edge(a, b), sy);
        return out;
    }

    double U = trunc.u_max;
    auto [a, b] = range(U);
    cplx s = sum.add(a, b);
    double last = std::numeric_limits<double>::infinity(), prev = last;
    while (true) {
        const double scale = trunc.tol * std::max(1.0, y4 * std::abs(s));
        double bound = y4 * tail_bound(f, edge(a, b), sy);
        if (bound <= scale) {
            last = bound;
            break;
        }
        // the tail shrinks at least like U^-2 once it settles: a small step after a
        // moderate one leaves a remainder below tol
        if (last <= scale && prev <= 8 * scale) break;
        if (static_cast<double>(b - a) * 2 > static_cast<double>(trunc.max_terms)) break;
        U *= 2;
        auto [a2, b2] = range(U);
        cplx inc = sum.add(a2, a - 1) + sum.add(b + 1, b2);
        s += inc;
        a = a2;
        b = b2;
        prev = last;
        last = y4 * std::abs(inc);
    }
    out.value = pre * s;
    out.n_min = a;
    out.n_max = b;
    out.tail_estimate = last;
    return out;
}

cplx theta_product(const Window& f1, const Window& f2, const ThetaPoint& p, const TruncationPolicy& trunc)
{
    return theta(f1, p, trunc).value * std::conj(theta(f2, p, trunc).value);
}

double weyl_identity_check(const Window& f, long N, double x, double c, double alpha)
{
    cplx lhs = weighted_weyl_sum(f, N, x, c, alpha) / std::sqrt(static_cast<double>(N));
    double n = static_cast<double>(N);
    ThetaPoint p{x, 1 / (n * n), 0.0, alpha + c * x, 0.0};
    cplx rhs = theta(f, p, TruncationPolicy::adaptive(1e-15)).value;
    return std::abs(lhs - rhs);
}

DyadicCheck dyadic_decomposition_check(double s, int J, const ThetaPoint& p, const TruncationPolicy& trunc)
{
    if (!(s >= 1) || J < 1 || J > 8) throw Error(ErrorKind::ParameterOutOfRange, "dyadic check needs s >= 1, 1 <= J <= 8");
    Window full = dyadic_truncation(s, J, DyadicPart::Full);
    Window left = dyadic_truncation(s, J, DyadicPart::Left);
    Window right = dyadic_truncation(s, J, DyadicPart::Right);
    cplx tl = theta(left, p, trunc).value;
    DyadicCheck r{};
    r.linearity = std::abs(theta(full, p, trunc).value - tl - theta(right, p, trunc).value);

    // left piece = sqrt(s) sum_j 2^{-j/2} (Delta dilated by t_j), t_j = 2 log s - 2 j log 2
    static const Window D = delta_window();
    GroupElement g = to_group(p);
    cplx acc(0.0, 0.0);
    for (int j = 0; j < J; ++j) {
        double t = 2 * std::log(s) - 2 * j * std::log(2.0);
        ThetaPoint q = to_point(compose(g, special_element(Special::Geodesic, t)));
        acc += std::pow(2.0, -0.5 * j) * theta(D, q, trunc).value;
    }
    r.orbit = std::abs(tl - std::sqrt(s) * acc);
    return r;
}

} // namespace wt
