#include "weyltail/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "weyltail/error.hpp"

namespace wt {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

GroupElement identity() { return {}; }

GroupElement compose(const GroupElement& g, const GroupElement& h)
{
    GroupElement r;
    r.m11 = g.m11 * h.m11 + g.m12 * h.m21;
    r.m12 = g.m11 * h.m12 + g.m12 * h.m22;
    r.m21 = g.m21 * h.m11 + g.m22 * h.m21;
    r.m22 = g.m21 * h.m12 + g.m22 * h.m22;
    r.xi1 = g.xi1 + g.m11 * h.xi1 + g.m12 * h.xi2;
    r.xi2 = g.xi2 + g.m21 * h.xi1 + g.m22 * h.xi2;
    return r;
}

GroupElement inverse(const GroupElement& g)
{
    // det = 1 assumed
    GroupElement r;
    r.m11 = g.m22;
    r.m12 = -g.m12;
    r.m21 = -g.m21;
    r.m22 = g.m11;
    r.xi1 = -(r.m11 * g.xi1 + r.m12 * g.xi2);
    r.xi2 = -(r.m21 * g.xi1 + r.m22 * g.xi2);
    return r;
}

double det(const GroupElement& g) { return g.m11 * g.m22 - g.m12 * g.m21; }

double max_entry_diff(const GroupElement& g, const GroupElement& h)
{
    return std::max({std::abs(g.m11 - h.m11), std::abs(g.m12 - h.m12), std::abs(g.m21 - h.m21),
                     std::abs(g.m22 - h.m22), std::abs(g.xi1 - h.xi1), std::abs(g.xi2 - h.xi2)});
}

IwasawaCoords iwasawa(const GroupElement& g)
{
    if (!(std::abs(det(g) - 1.0) <= 1e-6)) throw Error(ErrorKind::DegenerateMatrix, "det != 1");
    const double c = g.m21, d = g.m22;
    const double n = c * c + d * d;
    IwasawaCoords r;
    r.y = 1.0 / n;
    r.x = (g.m11 * c + g.m12 * d) / n;
    double phi = std::atan2(c, d);
    if (phi < 0) phi += kTwoPi;
    if (phi >= kTwoPi - 1e-14) phi = 0.0;
    r.phi = phi;
    return r;
}

GroupElement from_iwasawa(const IwasawaCoords& k, double xi1, double xi2)
{
    const double sy = std::sqrt(k.y);
    const double c = std::cos(k.phi), s = std::sin(k.phi);
    GroupElement g;
    g.m11 = sy * c + k.x * s / sy;
    g.m12 = -sy * s + k.x * c / sy;
    g.m21 = s / sy;
    g.m22 = c / sy;
    g.xi1 = xi1;
    g.xi2 = xi2;
    return g;
}

GroupElement to_group(const ThetaPoint& p) { return from_iwasawa({p.x, p.y, p.phi}, p.xi1, p.xi2); }

ThetaPoint to_point(const GroupElement& g)
{
    IwasawaCoords k = iwasawa(g);
    return {k.x, k.y, k.phi, g.xi1, g.xi2};
}

GroupElement special_element(Special kind, double param)
{
    GroupElement g;
    switch (kind) {
    case Special::Geodesic:
        g.m11 = std::exp(-param / 2);
        g.m22 = std::exp(param / 2);
        break;
    case Special::Horocycle:
        g.m12 = param;
        break;
    case Special::Gamma1:
        g.m11 = 0; g.m12 = -1; g.m21 = 1; g.m22 = 0;
        break;
    case Special::Gamma2:
        g.m12 = 1;
        g.xi1 = 0.5;
        break;
    case Special::Gamma3:
        g.xi1 = 1;
        break;
    case Special::Gamma4:
        g.xi2 = 1;
        break;
    }
    return g;
}

GroupElement generator_power(Generator gen, long p)
{
    GroupElement g;
    switch (gen) {
    case Generator::G1: {
        long q = ((p % 4) + 4) % 4;
        static const double tab[4][4] = {{1, 0, 0, 1}, {0, -1, 1, 0}, {-1, 0, 0, -1}, {0, 1, -1, 0}};
        g.m11 = tab[q][0]; g.m12 = tab[q][1]; g.m21 = tab[q][2]; g.m22 = tab[q][3];
        break;
    }
    case Generator::G2:
        // T v = v for v = (1/2, 0), so the translation parts just add up
        g.m12 = static_cast<double>(p);
        g.xi1 = 0.5 * static_cast<double>(p);
        break;
    case Generator::G3:
        g.xi1 = static_cast<double>(p);
        break;
    case Generator::G4:
        g.xi2 = static_cast<double>(p);
        break;
    }
    return g;
}

GroupElement apply_word(const std::vector<WordStep>& word, const GroupElement& g)
{
    GroupElement r = g;
    for (const auto& s : word) r = compose(generator_power(s.gen, s.power), r);
    return r;
}

namespace {

// translation into (-1/2, 1/2], with a little slack so 1/2 + rounding stays at 1/2
long torus_shift(double v)
{
    return -static_cast<long>(std::ceil(v - 0.5 - 1e-12));
}

} // namespace

bool in_fundamental_domain(const GroupElement& g, double tol)
{
    IwasawaCoords k = iwasawa(g);
    double r2 = k.x * k.x + k.y * k.y;
    if (k.x < -0.5 - tol || k.x >= 0.5 + tol) return false;
    if (r2 < 1.0 - tol) return false;
    if (k.phi >= std::numbers::pi + tol) return false;
    if (g.xi1 <= -0.5 - tol || g.xi1 > 0.5 + tol) return false;
    if (g.xi2 <= -0.5 - tol || g.xi2 > 0.5 + tol) return false;
    return true;
}

ReductionResult reduce_to_fundamental(const GroupElement& g0)
{
    ReductionResult res;
    GroupElement g = g0;
    auto push = [&](Generator gen, long p) {
        if (p == 0) return;
        g = compose(generator_power(gen, p), g);
        res.word.push_back({gen, p});
    };
    int steps = 0;
    for (;;) {
        if (++steps > 10000) throw Error(ErrorKind::NonConvergence, "reduction exceeded 1e4 steps");
        IwasawaCoords k = iwasawa(g);
        // x into [-1/2, 1/2)
        long shift = -static_cast<long>(std::floor(k.x + 0.5 + 1e-12));
        if (shift != 0) {
            push(Generator::G2, shift);
            continue;
        }
        double r2 = k.x * k.x + k.y * k.y;
        if (r2 < 1.0 - 1e-14 || (std::abs(r2 - 1.0) <= 1e-14 && k.x > 0.0)) {
            push(Generator::G1, 1);
            continue;
        }
        break;
    }
    IwasawaCoords k = iwasawa(g);
    if (k.phi >= std::numbers::pi) push(Generator::G1, 2);
    push(Generator::G3, torus_shift(g.xi1));
    push(Generator::G4, torus_shift(g.xi2));
    res.reduced = g;
    return res;
}

GroupElement horocycle_lift(double u, double t, double c, double alpha)
{
    GroupElement tr;
    tr.xi1 = alpha + c * u;
    return compose(compose(tr, special_element(Special::Horocycle, u)), special_element(Special::Geodesic, t));
}

} // namespace wt
