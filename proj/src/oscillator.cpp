#include "weyltail/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "weyltail/error.hpp"
#include "weyltail/quadrature.hpp"

namespace wt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

cplx e_frac(double t) // e(t) = exp(2 pi i t)
{
    double r = t - std::floor(t);
    double k8 = 8 * r;
    if (k8 == std::floor(k8)) {
        // exact eighth roots of unity
        constexpr double h = 0.70710678118654752440;
        static const cplx tab[8] = {{1, 0}, {h, h}, {0, 1}, {-h, h}, {-1, 0}, {-h, -h}, {0, -1}, {h, -h}};
        return tab[static_cast<int>(k8) & 7];
    }
    return {std::cos(2 * kPi * r), std::sin(2 * kPi * r)};
}

bool analytic_case(const Window& f)
{
    return (f.kind() == Window::Kind::Gaussian || f.kind() == Window::Kind::Hermite1) && f.gauss_a() == 1.0;
}

} // namespace

int sigma_phi(double phi)
{
    double q = phi / kPi;
    double fl = std::floor(q);
    if (q == fl) return 2 * static_cast<int>(fl);
    return 2 * static_cast<int>(fl) + 1;
}

Transformer::Transformer(const Window& f, double phi) : f_(&f), phi_(phi)
{
    const int sigma = sigma_phi(phi);
    unit_ = e_frac(-sigma / 8.0);
    const double nu = std::round(phi / kPi);
    nu_ = static_cast<int>(nu);
    const bool near = std::abs(phi - nu * kPi) < 1e-8;
    if (f.compact() && f.poly().degree() > 2 && !near)
        throw Error(ErrorKind::PreconditionViolated, "closed-form transform needs degree <= 2 pieces");
    if (near && !analytic_case(f)) {
        limit_ = true;
        // the limit branch sits at sigma = 2 nu even when phi is a hair off the multiple
        unit_ = e_frac(-nu_ / 4.0);
        if (f.compact()) {
            double lo = f.poly().lo(), hi = f.poly().hi();
            if (nu_ % 2 != 0) std::swap(lo, hi), lo = -lo, hi = -hi;
            slo_ = lo;
            shi_ = hi;
        } else {
            slo_ = -kInf;
            shi_ = kInf;
        }
        return;
    }
    const double s = std::sin(phi), c = std::cos(phi);
    csc_ = 1.0 / s;
    cot_ = c / s;
    A_ = kPi * cot_;
    sabs_ = std::abs(s);
    pre_ = unit_ / std::sqrt(sabs_);
    slo_ = -kInf;
    shi_ = kInf;
}

TransformResult Transformer::eval(double w) const
{
    const Window& f = *f_;
    if (limit_) {
        double v = f((nu_ % 2 == 0) ? w : -w);
        return {unit_ * v, Method::Limit, 0.0};
    }
    if (analytic_case(f)) {
        double g = f.amp() * std::exp(-kPi * w * w);
        if (f.kind() == Window::Kind::Gaussian) return {std::polar(g, -phi_ / 2), Method::Analytic, 1e-16 * std::abs(g)};
        return {std::polar(g * w, -1.5 * phi_), Method::Analytic, 1e-16 * std::abs(g * w)};
    }
    const double B = -2.0 * kPi * w * csc_;
    const double phase0 = kPi * w * w * cot_;
    if (!f.compact()) {
        // amp * int t^k exp(-alpha t^2 + i B t) dt, alpha = pi a - i A
        const cplx alpha(kPi * f.gauss_a(), -A_);
        cplx base = std::sqrt(kPi / alpha) * std::exp(-B * B / (4.0 * alpha));
        if (f.kind() == Window::Kind::Hermite1) base *= cplx(0.0, B) / (2.0 * alpha);
        cplx v = pre_ * f.amp() * base * std::polar(1.0, phase0);
        return {v, Method::ClosedForm, 1e-14 * (1.0 + std::abs(v))};
    }
    const auto& q = f.quad();
    PieceView pv{std::span<const double>(f.poly().x), std::span<const std::array<double, 3>>(q)};
    ChirpIntegral ci = chirp_integral(pv, A_, B, phase0);
    const double scale = 1.0 / std::sqrt(sabs_);
    return {pre_ * ci.value, ci.quadrature ? Method::Quadrature : Method::ClosedForm,
            scale * (1e-15 + 5e-14 * ci.magnitude_sum)};
}

TransformResult transform(const Window& f, double phi, double w)
{
    return Transformer(f, phi).eval(w);
}

TransformResult transform_quadrature(const Window& f, double phi, double w, double tol)
{
    Transformer tr(f, phi);
    if (tr.limit_branch()) return tr.eval(w);
    const double s = std::sin(phi), c = std::cos(phi);
    const double A = kPi * c / s, B = -2.0 * kPi * w / s, phase0 = kPi * w * w * c / s;
    const cplx pre = e_frac(-sigma_phi(phi) / 8.0) / std::sqrt(std::abs(s));
    auto integrand = [&](double t) { return f(t) * std::polar(1.0, A * t * t + B * t); };
    std::vector<std::pair<double, double>> spans;
    if (f.compact()) {
        const auto& x = f.poly().x;
        for (std::size_t j = 0; j + 1 < x.size(); ++j) spans.push_back({x[j], x[j + 1]});
    } else {
        double L = std::sqrt(40.0 / (kPi * f.gauss_a()));
        spans.push_back({-L, L});
    }
    QuadOptions opt;
    opt.abs_tol = tol / static_cast<double>(spans.size());
    opt.max_panels = 2000000;
    cplx total(0.0, 0.0);
    double err = 0.0;
    for (auto [a, b] : spans) {
        if (!(b > a)) continue;
        double dmax = std::max(std::abs(2 * A * a + B), std::abs(2 * A * b + B));
        opt.initial_width = std::min(b - a, (kPi / 2) / std::max(dmax, 1e-300));
        auto r = integrate_gk<cplx>(integrand, a, b, opt);
        total += r.value;
        err += r.error;
    }
    return {pre * std::polar(1.0, phase0) * total, Method::Quadrature, err / std::sqrt(std::abs(s))};
}

ModulusGrid modulus_grid(const Window& f, const GridSpec& g, int threads)
{
    ModulusGrid m;
    m.spec = g;
    m.mod.assign(static_cast<std::size_t>(g.n_phi) * g.n_w, 0.0f);
    auto rows = [&](int t) {
        for (int i = t; i < g.n_phi; i += threads) {
            Transformer tr(f, kPi * i / g.n_phi);
            for (int j = 0; j < g.n_w; ++j) {
                double w = -g.W + 2.0 * g.W * j / (g.n_w - 1);
                m.mod[static_cast<std::size_t>(i) * g.n_w + j] = static_cast<float>(std::abs(tr(w)));
            }
        }
    };
    threads = std::max(1, threads);
    if (threads == 1) {
        rows(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(rows, t);
        for (auto& th : pool) th.join();
    }
    return m;
}

double DecayBounds::at(double w) const
{
    double a = std::abs(w);
    double r = B0;
    if (a > 0) r = std::min({r, B1 / a, B2 / (a * a)});
    return r;
}

DecayBounds decay_bounds(const Window& f)
{
    if (!f.compact()) {
        double B0 = std::abs(f.amp()) / std::sqrt(std::min(f.gauss_a(), 1.0));
        if (f.kind() == Window::Kind::Hermite1) B0 = kInf;
        return {B0, kInf, kInf};
    }
    DecayBounds d;
    d.B0 = sp_norm(f);
    d.B1 = h_norm(f, 0, 1, NormKind::L1) + h_norm(f, 1, 0, NormKind::Sp);
    try {
        d.B2 = h_norm(f, 1, 1, NormKind::L1) + h_norm(f, 0, 2, NormKind::L1) + h_norm(f, 0, 0, NormKind::L1) +
               h_norm(f, 2, 0, NormKind::Sp);
    } catch (const Error&) {
        d.B2 = kInf;
    }
    return d;
}

double bound_uniform(const Window& f, double eta, double b)
{
    if (!(eta > 1 && eta <= 2)) throw Error(ErrorKind::ParameterOutOfRange, "bound_uniform needs 1 < eta <= 2");
    if (!(b >= 1)) throw Error(ErrorKind::ParameterOutOfRange, "bound_uniform needs b >= 1");
    const double n00sp = h_norm(f, 0, 0, NormKind::Sp);
    const double g1 = h_norm(f, 0, 1, NormKind::L1) + h_norm(f, 1, 0, NormKind::Sp);
    const double g2 = h_norm(f, 1, 1, NormKind::L1) + h_norm(f, 0, 2, NormKind::L1) + h_norm(f, 0, 0, NormKind::L1) +
                      h_norm(f, 2, 0, NormKind::Sp);
    return std::pow(2.0, eta / 2) * std::max({n00sp, std::pow(b, eta - 1) * g1, std::pow(b, eta - 2) * g2});
}

KappaResult kappa_from_grid(const Window& f, const ModulusGrid& m, double eta)
{
    const GridSpec& g = m.spec;
    KappaResult r{0.0, 0.0, 0.0, kInf, kInf};
    for (int j = 0; j < g.n_w; ++j) {
        double w = -g.W + 2.0 * g.W * j / (g.n_w - 1);
        double wt = std::pow(1.0 + w * w, eta / 2);
        for (int i = 0; i < g.n_phi; ++i) {
            double v = m.mod[static_cast<std::size_t>(i) * g.n_w + j] * wt;
            if (v > r.grid_max) {
                r.grid_max = v;
                r.arg_phi = kPi * i / g.n_phi;
                r.arg_w = w;
            }
        }
    }
    if (f.compact() && eta > 1 && eta <= 2) {
        try {
            double best = kInf;
            for (int k = 0; k <= 40; ++k) best = std::min(best, bound_uniform(f, eta, std::ldexp(1.0, k)));
            r.certified = best;
        } catch (const Error&) {
        }
        DecayBounds d = decay_bounds(f);
        double W = g.W;
        r.tail_bound = d.B2 * std::pow(1 + W * W, eta / 2) / (W * W);
    }
    return r;
}

KappaResult kappa_eta(const Window& f, double eta, const GridSpec& g, int threads)
{
    if (!(eta > 1)) throw Error(ErrorKind::ParameterOutOfRange, "kappa_eta needs eta > 1");
    return kappa_from_grid(f, modulus_grid(f, g, threads), eta);
}

double schrodinger_residual(const Window& f, double phi, double w, double h)
{
    auto raw = [&](double p, double x) {
        Transformer tr(f, p);
        return tr(x) / e_frac(-sigma_phi(p) / 8.0);
    };
    const cplx F = raw(phi, w);
    const cplx dphi = (raw(phi + h, w) - raw(phi - h, w)) / (2 * h);
    const cplx dww = (raw(phi, w + h) - 2.0 * F + raw(phi, w - h)) / (h * h);
    const cplx lhs = cplx(0.0, 1.0 / (2 * kPi)) * dphi;
    const cplx rhs = 0.5 * (-dww / (4 * kPi * kPi) + w * w * F);
    return std::abs(lhs - rhs);
}

} // namespace wt
