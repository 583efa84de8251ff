#include "weyltail/windows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "poly.hpp"
#include "weyltail/error.hpp"

namespace wt {

int PiecewisePoly::degree() const
{
    int d = 0;
    for (const auto& p : c) {
        auto q = p;
        poly::trim(q);
        d = std::max(d, static_cast<int>(q.size()) - 1);
    }
    return d;
}

double PiecewisePoly::operator()(double w) const
{
    if (c.empty() || !(w > x.front()) || w > x.back()) return 0.0;
    auto it = std::lower_bound(x.begin(), x.end(), w);
    std::size_t j = static_cast<std::size_t>(it - x.begin()) - 1;
    return poly::eval(c[j], w - x[j]);
}

std::vector<double> PiecewisePoly::jumps() const
{
    std::vector<double> J(x.size(), 0.0);
    for (std::size_t j = 0; j < x.size(); ++j) {
        double left = (j > 0) ? poly::eval(c[j - 1], x[j] - x[j - 1]) : 0.0;
        double right = (j < c.size()) ? (c[j].empty() ? 0.0 : c[j][0]) : 0.0;
        J[j] = right - left;
    }
    return J;
}

PiecewisePoly PiecewisePoly::derivative() const
{
    PiecewisePoly d;
    d.x = x;
    for (const auto& p : c) d.c.push_back(poly::deriv(p));
    return d;
}

PiecewisePoly PiecewisePoly::times_power(int p) const
{
    PiecewisePoly r;
    r.x = x;
    for (std::size_t j = 0; j < c.size(); ++j) {
        std::vector<double> w{x[j], 1.0}, acc{1.0};
        for (int k = 0; k < p; ++k) acc = poly::mul(acc, w);
        r.c.push_back(poly::mul(c[j], acc));
    }
    return r;
}

void PiecewisePoly::normalize()
{
    PiecewisePoly r;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (!(x[j + 1] > x[j])) continue;
        if (r.x.empty()) r.x.push_back(x[j]);
        r.x.push_back(x[j + 1]);
        auto q = c[j];
        poly::trim(q);
        r.c.push_back(q);
    }
    *this = r;
}

PiecewisePoly pp_scale(const PiecewisePoly& f, double s)
{
    PiecewisePoly r = f;
    for (auto& p : r.c)
        for (auto& v : p) v *= s;
    return r;
}

PiecewisePoly pp_sum(const PiecewisePoly& f, const PiecewisePoly& g)
{
    if (f.c.empty()) return g;
    if (g.c.empty()) return f;
    std::vector<double> xs = f.x;
    xs.insert(xs.end(), g.x.begin(), g.x.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    auto local = [](const PiecewisePoly& p, double a, double b) -> std::vector<double> {
        // coefficients of p on (a, b], which lies inside a single piece of p or outside its support
        if (!(a >= p.x.front() && b <= p.x.back())) return {};
        double mid = 0.5 * (a + b);
        auto it = std::lower_bound(p.x.begin(), p.x.end(), mid);
        std::size_t j = static_cast<std::size_t>(it - p.x.begin()) - 1;
        return poly::shift(p.c[j], a - p.x[j]);
    };
    PiecewisePoly r;
    r.x = xs;
    for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
        auto a = local(f, xs[j], xs[j + 1]), b = local(g, xs[j], xs[j + 1]);
        if (a.size() < b.size()) std::swap(a, b);
        for (std::size_t k = 0; k < b.size(); ++k) a[k] += b[k];
        r.c.push_back(a);
    }
    return r;
}

Norms pp_norms(const PiecewisePoly& f)
{
    Norms n;
    for (std::size_t j = 0; j < f.c.size(); ++j) {
        const auto& p = f.c[j];
        const double h = f.x[j + 1] - f.x[j];
        if (p.empty() || h <= 0) continue;
        // L1 from sign-constant sub-intervals
        std::vector<double> cut{0.0};
        for (double r : poly::roots(p, 0.0, h)) cut.push_back(r);
        cut.push_back(h);
        auto P = poly::antideriv(p);
        for (std::size_t i = 0; i + 1 < cut.size(); ++i) n.L1 += std::abs(poly::eval(P, cut[i + 1]) - poly::eval(P, cut[i]));
        n.L2 += poly::eval(poly::antideriv(poly::mul(p, p)), h);
        std::vector<double> pts{0.0};
        for (double r : poly::critical(p, 0.0, h)) pts.push_back(r);
        pts.push_back(h);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            n.Linf = std::max(n.Linf, std::abs(poly::eval(p, pts[i])));
            if (i + 1 < pts.size()) n.TV += std::abs(poly::eval(p, pts[i + 1]) - poly::eval(p, pts[i]));
        }
    }
    for (double J : f.jumps()) n.TV += std::abs(J);
    n.L2 = std::sqrt(n.L2);
    n.sp = std::max(2.0 * n.L1, 3.0 * (n.Linf + n.TV));
    return n;
}

Window Window::indicator(double lo, double hi, double height)
{
    if (!(lo <= hi)) throw Error(ErrorKind::InvalidInterval, "indicator needs lo <= hi");
    Window w;
    w.kind_ = Kind::Indicator;
    w.lo_ = lo;
    w.hi_ = hi;
    w.amp_ = height;
    w.pp_.x = {lo, hi};
    w.pp_.c = {{height}};
    w.finish();
    return w;
}

Window Window::piecewise(PiecewisePoly p)
{
    Window w;
    w.kind_ = Kind::Piecewise;
    w.pp_ = std::move(p);
    w.finish();
    return w;
}

Window Window::gaussian(double a, double amp)
{
    if (!(a > 0)) throw Error(ErrorKind::ParameterOutOfRange, "gaussian width must be positive");
    Window w;
    w.kind_ = Kind::Gaussian;
    w.a_ = a;
    w.amp_ = amp;
    w.finish();
    return w;
}

Window Window::hermite1(double a, double amp)
{
    if (!(a > 0)) throw Error(ErrorKind::ParameterOutOfRange, "gaussian width must be positive");
    Window w;
    w.kind_ = Kind::Hermite1;
    w.a_ = a;
    w.amp_ = amp;
    w.finish();
    return w;
}

void Window::finish()
{
    const double pi = std::numbers::pi;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (kind_ == Kind::Gaussian) {
        double A = std::abs(amp_);
        norms_ = {A / std::sqrt(a_), A * std::pow(2.0 * a_, -0.25), A, 2.0 * A, nan};
        return;
    }
    if (kind_ == Kind::Hermite1) {
        double A = std::abs(amp_);
        double peak = A * std::exp(-0.5) / std::sqrt(2.0 * pi * a_);
        double l2 = A * std::sqrt(std::sqrt(pi) / (2.0 * std::pow(2.0 * pi * a_, 1.5)));
        norms_ = {A / (pi * a_), l2, peak, 4.0 * peak, nan};
        return;
    }
    pp_.normalize();
    norms_ = pp_norms(pp_);
    quad_.clear();
    if (pp_.degree() <= 2) {
        for (const auto& p : pp_.c) {
            std::array<double, 3> q{0.0, 0.0, 0.0};
            for (std::size_t k = 0; k < p.size(); ++k) q[k] = p[k];
            quad_.push_back(q);
        }
    }
}

double Window::operator()(double w) const
{
    switch (kind_) {
    case Kind::Indicator:
        return (w > lo_ && w < hi_) ? amp_ : 0.0;
    case Kind::Piecewise:
        return pp_(w);
    case Kind::Gaussian:
        return amp_ * std::exp(-std::numbers::pi * a_ * w * w);
    case Kind::Hermite1:
        return amp_ * w * std::exp(-std::numbers::pi * a_ * w * w);
    }
    return 0.0;
}

Window trapezoid(double a, double b, double eps, double delta)
{
    if (!(a <= b)) throw Error(ErrorKind::InvalidInterval, "trapezoid needs a <= b");
    if (!(eps >= 0 && delta >= 0)) throw Error(ErrorKind::InvalidInterval, "trapezoid ramps must be >= 0");
    PiecewisePoly p;
    p.x = {a - eps, a - eps / 2, a, b, b + delta / 2, b + delta};
    auto up1 = eps > 0 ? std::vector<double>{0.0, 0.0, 2.0 / (eps * eps)} : std::vector<double>{};
    auto up2 = eps > 0 ? std::vector<double>{0.5, 2.0 / eps, -2.0 / (eps * eps)} : std::vector<double>{};
    auto dn1 = delta > 0 ? std::vector<double>{1.0, 0.0, -2.0 / (delta * delta)} : std::vector<double>{};
    auto dn2 = delta > 0 ? std::vector<double>{0.5, -2.0 / delta, 2.0 / (delta * delta)} : std::vector<double>{};
    p.c = {up1, up2, {1.0}, dn1, dn2};
    return Window::piecewise(p);
}

Window delta_window() { return trapezoid(1.0 / 3, 1.0 / 3, 1.0 / 6, 1.0 / 3); }
Window delta_minus_window() { return mirror(delta_window()); }

Window dyadic_truncation(double s, int J, DyadicPart part)
{
    if (!(s > 0) || J < 1) throw Error(ErrorKind::ParameterOutOfRange, "dyadic truncation needs s > 0, J >= 1");
    const double lo = s / (3.0 * std::ldexp(1.0, J - 1));
    const double ramp = s / (6.0 * std::ldexp(1.0, J - 1));
    switch (part) {
    case DyadicPart::Full:
        return trapezoid(lo, s - lo, ramp, ramp);
    case DyadicPart::Left:
        return trapezoid(lo, s / 3, ramp, s / 3);
    case DyadicPart::Right:
        return shift(mirror(trapezoid(lo, s / 3, ramp, s / 3)), s);
    }
    return trapezoid(lo, s - lo, ramp, ramp);
}

double partition_sum(double w, int j_max)
{
    static const Window D = delta_window();
    double s = 0.0;
    for (int j = 0; j < j_max; ++j) {
        double k = std::ldexp(1.0, j);
        s += D(k * w) + D(k * (1.0 - w));
    }
    return s;
}

Window dilate(const Window& f, double t)
{
    const double lam = std::exp(-t / 2), amp = std::exp(-t / 4);
    switch (f.kind()) {
    case Window::Kind::Indicator:
        return Window::indicator(f.indicator_lo() / lam, f.indicator_hi() / lam, f.amp() * amp);
    case Window::Kind::Gaussian:
        return Window::gaussian(f.gauss_a() * lam * lam, f.amp() * amp);
    case Window::Kind::Hermite1:
        return Window::hermite1(f.gauss_a() * lam * lam, f.amp() * amp * lam);
    case Window::Kind::Piecewise:
        break;
    }
    PiecewisePoly p = f.poly();
    for (auto& v : p.x) v /= lam;
    for (auto& q : p.c) {
        double s = amp;
        for (auto& v : q) {
            v *= s;
            s *= lam;
        }
    }
    return Window::piecewise(p);
}

Window mirror(const Window& f)
{
    switch (f.kind()) {
    case Window::Kind::Indicator:
        return Window::indicator(-f.indicator_hi(), -f.indicator_lo(), f.amp());
    case Window::Kind::Gaussian:
        return f;
    case Window::Kind::Hermite1:
        return Window::hermite1(f.gauss_a(), -f.amp());
    case Window::Kind::Piecewise:
        break;
    }
    const PiecewisePoly& p = f.poly();
    PiecewisePoly r;
    const std::size_t m = p.pieces();
    for (std::size_t j = m + 1; j-- > 0;) r.x.push_back(-p.x[j]);
    for (std::size_t j = m; j-- > 0;) {
        // g(-x[j+1] + u) = p_j(h - u)
        auto q = poly::shift(p.c[j], p.x[j + 1] - p.x[j]);
        for (std::size_t k = 1; k < q.size(); k += 2) q[k] = -q[k];
        r.c.push_back(q);
    }
    return Window::piecewise(r);
}

Window shift(const Window& f, double s)
{
    if (f.kind() == Window::Kind::Indicator) return Window::indicator(f.indicator_lo() + s, f.indicator_hi() + s, f.amp());
    if (!f.compact()) throw Error(ErrorKind::PreconditionViolated, "shift needs a compact window");
    PiecewisePoly p = f.poly();
    for (auto& v : p.x) v += s;
    return Window::piecewise(p);
}

Window scale(const Window& f, double c)
{
    switch (f.kind()) {
    case Window::Kind::Indicator:
        return Window::indicator(f.indicator_lo(), f.indicator_hi(), f.amp() * c);
    case Window::Kind::Gaussian:
        return Window::gaussian(f.gauss_a(), f.amp() * c);
    case Window::Kind::Hermite1:
        return Window::hermite1(f.gauss_a(), f.amp() * c);
    case Window::Kind::Piecewise:
        break;
    }
    return Window::piecewise(pp_scale(f.poly(), c));
}

Window sum(const Window& f, const Window& g)
{
    if (!f.compact() || !g.compact()) throw Error(ErrorKind::PreconditionViolated, "sum needs compact windows");
    return Window::piecewise(pp_sum(f.poly(), g.poly()));
}

double sp_norm(const Window& f)
{
    if (!f.compact()) throw Error(ErrorKind::UnboundedSupport, "sp norm needs compact support");
    return f.norms().sp;
}

double h_norm(const Window& f, int p, int q, NormKind norm)
{
    if (!f.compact()) throw Error(ErrorKind::UnboundedSupport, "h norms need compact support");
    if (p < 0 || p > 2 || q < 0 || q > 2) throw Error(ErrorKind::ParameterOutOfRange, "p, q must be in 0..2");
    PiecewisePoly d = f.poly();
    double mass = 0.0;
    for (int k = 0; k < q; ++k) {
        auto J = d.jumps();
        bool has_jump = std::any_of(J.begin(), J.end(), [](double v) { return std::abs(v) > 1e-12; });
        if (has_jump) {
            if (k < q - 1 || norm == NormKind::Sp)
                throw Error(ErrorKind::PreconditionViolated, "derivative of a discontinuous window is not a function");
            for (std::size_t i = 0; i < J.size(); ++i) mass += std::pow(std::abs(d.x[i]), p) * std::abs(J[i]);
        }
        d = d.derivative();
    }
    Norms n = pp_norms(d.times_power(p));
    return norm == NormKind::L1 ? n.L1 + mass : n.sp;
}

} // namespace wt
