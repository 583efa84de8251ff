#include "weyltail/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "weyltail/error.hpp"
#include "weyltail/oscillator.hpp"
#include "weyltail/quadrature.hpp"
#include "weyltail/windows.hpp"

namespace wt {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
} // namespace

double d_rat(double b)
{
    if (!(b >= 1)) throw Error(ErrorKind::ParameterOutOfRange, "d_rat needs b >= 1");
    if (b == 1) return 2 * kLn2;
    if (b <= 1 + 1e-12) b = 1 + 1e-12;
    double acoth = 0.5 * std::log((b + 1) / (b - 1));
    return 2 * b * acoth + 0.5 * std::log(b * b - 1) + 0.5 * b * b * std::log1p(-1 / (b * b));
}

double d_rat_quadrature(double b, double tol)
{
    if (!(b > 0)) throw Error(ErrorKind::ParameterOutOfRange, "d_rat_quadrature needs b > 0");
    // x = cot(phi)/2 maps (0, pi) onto the line; the integrand is even in x
    Window c1 = Window::indicator(1.0), cb = Window::indicator(b);
    auto f = [&](double x) {
        double phi = std::atan2(1.0, 2 * x);
        double s = std::sin(phi);
        double v = std::norm(transform(c1, phi, 0.0).value) * std::norm(transform(cb, phi, 0.0).value);
        return 4 * v * s * s;
    };
    // the integrand oscillates with period ~1/b^2; keep the panel count bounded
    const double X = b >= 1 ? 1e4 / std::pow(b, 1.5) : 1e4;
    QuadOptions o;
    o.abs_tol = tol;
    o.initial_width = 0.25 / std::max(1.0, b * b);
    o.max_panels = 4000000;
    double body = integrate_gk<double>(f, 0.0, X, o).value;
    // |int_0^s e(x t^2) dt|^2 = 1/(8x) + 1/(16 pi^2 s^2 x^2) + oscillating terms
    double tail = 1 / (16 * X) + (1 + 1 / (b * b)) / (64 * kPi * kPi * X * X);
    return body + tail;
}

double d_irr(double b, double tol)
{
    if (!(b >= 1)) throw Error(ErrorKind::ParameterOutOfRange, "d_irr needs b >= 1");
    Window c1 = Window::indicator(1.0), cb = Window::indicator(b);
    // |chi_phi(w)| <= 2/(pi(|w| - s)) beyond the support, so the cut at W costs < 0.09/(W - b)^5
    const double W = b + 30;
    auto inner = [&](double phi) {
        Transformer t1(c1, phi), tb(cb, phi);
        auto g = [&](double w) {
            double a = std::abs(t1(w) * tb(w));
            return a * a * a;
        };
        QuadOptions o;
        o.abs_tol = tol / (4 * kPi);
        o.initial_width = 0.25;
        o.max_panels = 200000;
        return integrate_gk<double>(g, -W, W, o).value;
    };
    QuadOptions o;
    o.abs_tol = tol / 2;
    o.initial_width = kPi / 16;
    return integrate_gk<double>(inner, 0.0, kPi, o).value;
}

double zeta_alt(double eta)
{
    // Cohen, Rodriguez Villegas, Zagier acceleration; error ~ 5.8^{-n}
    constexpr int n = 40;
    double d = std::pow(3 + std::sqrt(8.0), n);
    d = (d + 1 / d) / 2;
    double bk = -1, c = -d, s = 0;
    for (int k = 0; k < n; ++k) {
        c = bk - c;
        s += c * std::pow(k + 1.0, -eta);
        bk = (k + n) * (k - n) * bk / ((k + 0.5) * (k + 1));
    }
    return s / d;
}

double zeta(double eta)
{
    if (!(eta > 1)) throw Error(ErrorKind::ParameterOutOfRange, "zeta needs eta > 1");
    // 1 - 2^{1-eta} via expm1 keeps eta near 1 accurate
    return zeta_alt(eta) / -std::expm1((1 - eta) * kLn2);
}

double c_eta0(double eta0)
{
    double e = eta0 - 1;
    return zeta_alt(eta0) * (1 / kLn2 + 0.5 * e + kLn2 / 12 * e * e);
}

ZetaSuite zeta_suite(double eta)
{
    if (!(eta > 1)) throw Error(ErrorKind::ParameterOutOfRange, "zeta_suite needs eta > 1");
    ZetaSuite z;
    z.zeta_alt = zeta_alt(eta);
    z.zeta = zeta(eta);
    double e = eta - 1;
    z.lower = z.zeta_alt * (1 / (kLn2 * e) + 0.5);
    z.upper = z.zeta_alt * (1 / (kLn2 * e) + 0.5 + kLn2 / 12 * e);
    z.c_of_eta0 = c_eta0(eta);
    return z;
}

double c_eta(double eta)
{
    double z = zeta(eta);
    return std::pow(2.0, 6 * eta) * z * z;
}

double k_const(double s) { return 48 + 2 * s + std::max(9 * s * s, 2.0 / 3 * s * s * s); }
double k_left_const(double s) { return 36 + 1.25 * s + std::max(293.0 / 96 * s * s, 19.0 / 216 * s * s * s); }
double sp_chi(double s) { return std::max(2 * s, 9.0); }
double sp_chi_left(double s) { return std::max(s, 9.0); }

double eta_rat(double eps)
{
    if (!(eps > 0 && eps <= 1)) throw Error(ErrorKind::ParameterOutOfRange, "eps must lie in (0, 1]");
    return (7 - 3 * eps + std::sqrt(3 * eps * eps - 18 * eps + 25)) / (6 * (2 - eps));
}

double eta_irr(double eps)
{
    if (!(eps > 0 && eps <= 1)) throw Error(ErrorKind::ParameterOutOfRange, "eps must lie in (0, 1]");
    return (19 - 8 * eps + std::sqrt(16 * eps * eps - 112 * eps + 169)) / (16 * (2 - eps));
}

namespace {

void check_ranges(double b, double eta, double eps)
{
    if (!(b >= 1)) throw Error(ErrorKind::ParameterOutOfRange, "b must be >= 1");
    if (!(eta > 1 && eta <= 2)) throw Error(ErrorKind::ParameterOutOfRange, "eta must lie in (1, 2]");
    if (!(eps > 0 && eps <= 1)) throw Error(ErrorKind::ParameterOutOfRange, "eps must lie in (0, 1]");
}

double r0_rat(double K, double C, double eta) { return std::pow(32 * K * K * C, 1 / eta + 6 * (eta - 1)); }
double r0_irr(double K, double C, double eta)
{
    return std::pow(std::pow(2.0, 5.5) * K * K * C, 1 / eta + 16.0 / 3 * (eta - 1));
}

} // namespace

ExplicitConstants explicit_constants(double b, double eta, double eps, std::optional<double> d_irr_value)
{
    check_ranges(b, eta, eps);
    ExplicitConstants e{};
    e.b = b;
    e.eta = eta;
    e.eps = eps;
    e.C_eta = c_eta(eta);
    e.K = k_const(b);
    e.K_L = k_left_const(b);
    e.sp_chi_b = sp_chi(b);
    e.sp_chi_b_left = sp_chi_left(b);
    const double K4 = std::pow(e.K, 4);
    e.R0_rat = r0_rat(e.K, e.C_eta, eta);
    e.P_rat = std::pow(2.0, 12) * K4 * e.C_eta * e.C_eta;
    e.R_rat = std::pow(2.0, 38) * K4 / (eps * eps);
    e.implied_rat = std::pow(2.0, 42) * K4 / std::pow(eps, 4);
    e.D_rat = d_rat(b);
    e.D_irr = d_irr_value ? *d_irr_value : d_irr(b);
    e.R0_irr = r0_irr(e.K, e.C_eta, eta);
    e.P_irr = std::max(std::pow(2.0, 13) * K4 * e.C_eta * e.C_eta,
                       kPi * kPi * std::pow(2.0, 24) * std::pow(e.sp_chi_b_left, 5) / e.D_irr);
    e.R_irr = std::pow(2.0, 39) * K4 / (eps * eps);
    e.implied_irr = std::max(std::pow(2.0, 41) * K4 / std::pow(eps, 4),
                             std::pow(2.0, 28) * std::max(std::pow(b, 5), std::pow(3.0, 10)) / e.D_irr);
    e.eta_rat_of_eps = eta_rat(eps);
    e.eta_irr_of_eps = eta_irr(eps);
    e.d_irr_conjecture_holds = e.D_irr >= 3 - 1e-3;
    return e;
}

double TailLaw::probability(double R) const
{
    return leading_coefficient * std::pow(R, -exponent);
}

TailLaw tail_law(TailCase c, double b, TailForm form, double param, std::optional<double> d_irr_value)
{
    double eta = form == TailForm::Eta ? param : (c == TailCase::Rational ? eta_rat(param) : eta_irr(param));
    double eps = form == TailForm::Eps ? param : 1.0;
    if (form == TailForm::Eta && !(eta > 1 && eta <= 2))
        throw Error(ErrorKind::ParameterOutOfRange, "eta must lie in (1, 2]");
    TailLaw t{};
    if (c == TailCase::Rational) {
        // D_irr is not needed here; pass a placeholder to skip the quadrature
        ExplicitConstants e = explicit_constants(b, eta, eps, 1.0);
        t.exponent = 4;
        t.leading_coefficient = 2 * e.D_rat / (kPi * kPi);
        if (form == TailForm::Eta) {
            t.error_exponent = 2 * eta / (6 * eta * (eta - 1) + 1);
            t.implied_constant = e.P_rat;
            t.validity_threshold = e.R0_rat;
        } else {
            t.error_exponent = 2 - eps;
            t.implied_constant = e.implied_rat;
            t.validity_threshold = e.R_rat;
        }
    } else {
        ExplicitConstants e = explicit_constants(b, eta, eps, d_irr_value);
        t.exponent = 6;
        t.leading_coefficient = 2 * e.D_irr / (kPi * kPi);
        if (form == TailForm::Eta) {
            t.error_exponent = 6 * eta / (16 * eta * (eta - 1) + 3);
            t.implied_constant = e.P_irr;
            t.validity_threshold = e.R0_irr;
        } else {
            t.error_exponent = 2 - eps;
            t.implied_constant = e.implied_irr;
            t.validity_threshold = e.R_irr;
        }
    }
    t.validity_threshold = std::max(t.validity_threshold, 1.0);
    return t;
}

InequalityReport inequality_checks(int grid)
{
    InequalityReport r{true, true, true, true, true, true};
    for (int i = 0; i <= grid; ++i) {
        double b = 1 + 99.0 * i / grid;
        if (std::pow(k_const(b), 4) < std::pow(2.0, 14) * b * std::pow(sp_chi(b), 3)) r.k4_dominates_sp = false;
        if (sp_chi_left(b) > sp_chi(b)) r.sp_left_le_sp = false;
    }
    for (int i = 1; i <= grid; ++i) {
        double eta = 1 + 0.25 * i / grid;
        ZetaSuite z = zeta_suite(eta);
        // lower bound on zeta gives C_eta >= 2^{6 eta} (1/(eta-1))^2 >= 2^6
        double cl = std::pow(2.0, 6 * eta) * z.lower * z.lower;
        if (!(cl >= 64)) r.c_eta_ge_64 = false;
        if (!(z.zeta > 1 / (eta - 1) && z.zeta <= std::sqrt(2.0) / (eta - 1))) r.zeta_bounds = false;
        if (!(z.lower <= z.zeta * (1 + 1e-14) && z.zeta <= z.upper * (1 + 1e-14))) r.zeta_bounds = false;
    }
    int ng = std::max(2, grid / 10);
    for (int i = 0; i <= ng; ++i) {
        double b = 1 + 9.0 * i / ng;
        double K = k_const(b);
        for (int j = 0; j <= ng; ++j) {
            double eps = 0.05 + 0.95 * j / ng;
            double er = eta_rat(eps), ei = eta_irr(eps);
            double R_rat = std::pow(2.0, 38) * std::pow(K, 4) / (eps * eps);
            double R_irr = std::pow(2.0, 39) * std::pow(K, 4) / (eps * eps);
            if (r0_rat(K, c_eta(er), er) > R_rat) r.r0_rat_le_r_rat = false;
            if (r0_irr(K, c_eta(ei), ei) > R_irr) r.r0_irr_le_r_irr = false;
        }
    }
    return r;
}

} // namespace wt
