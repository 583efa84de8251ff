#include "weyltail/fresnel.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace wt {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kStep = 0.125;   // node spacing of the Taylor table
constexpr double kAsym = 8.0;     // r >= kAsym uses the asymptotic series
constexpr int kNodes = 66;        // nodes 0, h, ..., 65h
constexpr int kOrder = 22;        // stored Taylor coefficients per node

using lcplx = std::complex<long double>;

struct TaylorTable {
    // coef[k][j][n]: n-th Taylor coefficient of Phi_k at node j
    std::array<std::array<std::array<cplx, kOrder>, kNodes>, 3> coef;

    TaylorTable()
    {
        const long double pi = 3.141592653589793238462643383279502884L;
        const lcplx I(0.0L, 1.0L);
        lcplx phi0 = std::sqrt(pi) / 2.0L * std::polar(1.0L, pi / 4.0L);
        constexpr int stepOrder = 48;
        for (int j = 0; j < kNodes; ++j) {
            long double r0 = j * static_cast<long double>(kStep);
            // Phi' = -2 i r Phi - 1
            std::array<lcplx, stepOrder + 1> a{};
            a[0] = phi0;
            for (int n = 0; n < stepOrder; ++n) {
                lcplx rhs = -2.0L * I * r0 * a[n];
                if (n >= 1) rhs -= 2.0L * I * a[n - 1];
                if (n == 0) rhs -= 1.0L;
                a[n + 1] = rhs / static_cast<long double>(n + 1);
            }
            // Phi_1 = (i - 2 r Phi_0)/2, Phi_2 = (i Phi_0 - 2 r Phi_1)/2, as series in d = r - r0
            std::array<lcplx, stepOrder + 1> b{}, c{};
            for (int n = 0; n <= stepOrder; ++n) {
                lcplx t = -2.0L * r0 * a[n];
                if (n >= 1) t -= 2.0L * a[n - 1];
                if (n == 0) t += I;
                b[n] = t / 2.0L;
            }
            for (int n = 0; n <= stepOrder; ++n) {
                lcplx t = I * a[n] - 2.0L * r0 * b[n];
                if (n >= 1) t -= 2.0L * b[n - 1];
                c[n] = t / 2.0L;
            }
            for (int n = 0; n < kOrder; ++n) {
                coef[0][j][n] = cplx(static_cast<double>(a[n].real()), static_cast<double>(a[n].imag()));
                coef[1][j][n] = cplx(static_cast<double>(b[n].real()), static_cast<double>(b[n].imag()));
                coef[2][j][n] = cplx(static_cast<double>(c[n].real()), static_cast<double>(c[n].imag()));
            }
            // advance to the next node
            lcplx next = 0.0L;
            long double hp = 1.0L;
            for (int n = 0; n <= stepOrder; ++n) {
                next += a[n] * hp;
                hp *= static_cast<long double>(kStep);
            }
            phi0 = next;
        }
    }
};

const TaylorTable& table()
{
    static const TaylorTable t;
    return t;
}

cplx table_eval(int k, double r)
{
    const auto& T = table();
    int j = static_cast<int>(std::lround(r / kStep));
    double d = r - j * kStep;
    const auto& c = T.coef[k][j];
    cplx s = c[kOrder - 1];
    for (int n = kOrder - 2; n >= 0; --n) s = s * d + c[n];
    return s;
}

// sum_m (i a)^m/m! (k+2m)! (i/v)^(k+2m+1); valid for a >= 0, v > 0, a/v^2 small
void asymptotic_moments(double v, double a, cplx G[3])
{
    // each step multiplies by the imaginary number -i a f / v^2: done in reals
    const double iv = 1.0 / v, z = a * iv * iv;
    double lr = 0.0, li = iv; // k! (i/v)^(k+1)
    for (int k = 0; k < 3; ++k) {
        double tr = lr, ti = li, sr = lr, si = li;
        for (int m = 0; m < 120; ++m) {
            double g = -z * static_cast<double>((k + 2 * m + 1) * (k + 2 * m + 2)) / (m + 1);
            double nr = -ti * g, ni = tr * g;
            tr = nr;
            ti = ni;
            sr += tr;
            si += ti;
            if (tr * tr + ti * ti <= 1e-36 * (sr * sr + si * si)) break;
        }
        G[k] = cplx(sr, si);
        // lead *= (i/v)(k+1)
        double nr = -li * iv * (k + 1), ni = lr * iv * (k + 1);
        lr = nr;
        li = ni;
    }
}

} // namespace

cplx fresnel_tail(double r, int k)
{
    if (!(r >= 0.0) || k < 0 || k > 2) throw std::domain_error("fresnel_tail: need r >= 0, k in 0..2");
    if (r < kAsym) return table_eval(k, r);
    cplx G[3];
    asymptotic_moments(2.0 * r, 1.0, G);
    return G[k];
}

void chirp_moments(double v, double a, cplx G[3])
{
    if (a < 0.0 || (a == 0.0 && v < 0.0)) {
        chirp_moments(-v, -a, G);
        for (int k = 0; k < 3; ++k) G[k] = std::conj(G[k]);
        return;
    }
    if (v < 0.0) throw std::domain_error("chirp_moments: stationary point on the ray");
    if (a == 0.0 && v == 0.0) throw std::domain_error("chirp_moments: divergent moments at v = a = 0");
    // r = v/(2 sqrt a) decides the branch; compare squares to avoid sqrt(0)
    if (v * v >= 4.0 * kAsym * kAsym * a) {
        asymptotic_moments(v, a, G);
        return;
    }
    const double sa = std::sqrt(a);
    const double r = v / (2.0 * sa);
    const double s1 = 1.0 / sa;
    G[0] = table_eval(0, r) * s1;
    G[1] = table_eval(1, r) * (s1 * s1);
    G[2] = table_eval(2, r) * (s1 * s1 * s1);
}

const GaussRule& gauss_legendre(int n)
{
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussRule g;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) { p1 = x; p0 = 1.0; }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        g.nodes[i] = -x;
        g.nodes[n - 1 - i] = x;
        g.weights[i] = w;
        g.weights[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(g)).first->second;
}

namespace {

struct Taylor3 {
    double d[3];
};

inline Taylor3 right_end(const std::array<double, 3>& c, double h)
{
    return {{c[0] + h * (c[1] + h * c[2]), c[1] + 2.0 * h * c[2], c[2]}};
}

inline cplx expi(double t)
{
    return {std::cos(t), std::sin(t)};
}

// |re| + |im|, an upper bound for |z| without hypot
inline double abs1(cplx z)
{
    return std::abs(z.real()) + std::abs(z.imag());
}

} // namespace

ChirpIntegral chirp_integral(const PieceView& p, double A, double B, double phase0)
{
    const std::size_t m = p.c.size();
    ChirpIntegral out{cplx(0.0, 0.0), 0.0, false};
    if (m == 0) return out;
    const double lo = p.x[0], hi = p.x[m];
    const double L = hi - lo, mid = 0.5 * (lo + hi);
    const double var = std::abs(2.0 * A * mid + B) * 0.5 * L + std::abs(A) * 0.25 * L * L;

    if (var <= 6.0) {
        static const GaussRule& g = gauss_legendre(16);
        out.quadrature = true;
        for (std::size_t j = 0; j < m; ++j) {
            const auto& c = p.c[j];
            if (c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0) continue;
            const double a = p.x[j], h = p.x[j + 1] - a;
            cplx s(0.0, 0.0);
            for (std::size_t i = 0; i < g.nodes.size(); ++i) {
                double u = 0.5 * h * (g.nodes[i] + 1.0);
                double t = a + u;
                double val = c[0] + u * (c[1] + u * c[2]);
                s += g.weights[i] * val * expi(A * t * t + B * t + phase0);
            }
            s *= 0.5 * h;
            out.value += s;
            out.magnitude_sum += abs1(s);
        }
        return out;
    }

    const bool has_stat = (A != 0.0);
    const double ts = has_stat ? -B / (2.0 * A) : 0.0;
    cplx G[3];
    for (std::size_t j = 0; j <= m; ++j) {
        const double c = p.x[j];
        double left[3] = {0.0, 0.0, 0.0}, right[3] = {0.0, 0.0, 0.0};
        if (j > 0) {
            Taylor3 t = right_end(p.c[j - 1], c - p.x[j - 1]);
            left[0] = t.d[0]; left[1] = t.d[1]; left[2] = t.d[2];
        }
        if (j < m) {
            right[0] = p.c[j][0]; right[1] = p.c[j][1]; right[2] = p.c[j][2];
        }
        const double v = 2.0 * A * c + B;
        const bool dirL_plus = !has_stat || c > ts;
        const bool dirR_plus = !has_stat || c >= ts;
        const cplx ph = expi(A * c * c + B * c + phase0);
        cplx term(0.0, 0.0);
        if (dirL_plus == dirR_plus) {
            double d0 = left[0] - right[0], d1 = left[1] - right[1], d2 = left[2] - right[2];
            if (d0 == 0.0 && d1 == 0.0 && d2 == 0.0) continue;
            if (dirL_plus) {
                chirp_moments(v, A, G);
                term = -(d0 * G[0] + d1 * G[1] + d2 * G[2]);
            } else {
                chirp_moments(-v, A, G);
                term = d0 * G[0] - d1 * G[1] + d2 * G[2];
            }
        } else {
            // c coincides with the stationary point: F_-[left](c) - F_+[right](c)
            chirp_moments(0.0, A, G);
            term = (left[0] + right[0]) * G[0] + (right[1] - left[1]) * G[1] + (left[2] + right[2]) * G[2];
        }
        term *= ph;
        out.value += term;
        out.magnitude_sum += abs1(term);
    }
    if (has_stat && ts > lo && ts < hi) {
        std::size_t j = 0;
        while (j + 1 < m && p.x[j + 1] <= ts) ++j;
        if (p.x[j] < ts && ts < p.x[j + 1]) {
            const auto& c = p.c[j];
            double u = ts - p.x[j];
            double p0 = c[0] + u * (c[1] + u * c[2]);
            double p2 = c[2];
            if (p0 != 0.0 || p2 != 0.0) {
                chirp_moments(0.0, A, G);
                cplx term = 2.0 * (p0 * G[0] + p2 * G[2]) * expi(A * ts * ts + B * ts + phase0);
                out.value += term;
                out.magnitude_sum += abs1(term);
            }
        }
    }
    return out;
}

MomentResult fresnel_moment(double A, double B, int k, double a, double b)
{
    if (k < 0 || k > 2) throw std::domain_error("fresnel_moment: k must be 0, 1 or 2");
    if (!(std::isfinite(a) && std::isfinite(b))) throw std::domain_error("fresnel_moment: non-finite limits");
    if (a == b) return {cplx(0.0, 0.0), false};
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    // t^k expanded about a
    std::array<double, 3> c{};
    if (k == 0) c = {1.0, 0.0, 0.0};
    if (k == 1) c = {a, 1.0, 0.0};
    if (k == 2) c = {a * a, 2.0 * a, 1.0};
    double x[2] = {a, b};
    std::array<double, 3> cs[1] = {c};
    PieceView pv{std::span<const double>(x, 2), std::span<const std::array<double, 3>>(cs, 1)};
    ChirpIntegral r = chirp_integral(pv, A, B);
    bool lop = !r.quadrature && std::abs(r.value) < 1e-6 * r.magnitude_sum;
    return {sign * r.value, lop};
}

} // namespace wt
