#pragma once

#include <cmath>
#include <vector>

namespace wt::poly {

inline double eval(const std::vector<double>& c, double u)
{
    double s = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) s = s * u + c[k];
    return s;
}

inline std::vector<double> deriv(const std::vector<double>& c)
{
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
    return d;
}

inline std::vector<double> antideriv(const std::vector<double>& c)
{
    std::vector<double> d(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) d[k + 1] = c[k] / static_cast<double>(k + 1);
    return d;
}

inline std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.empty() || b.empty()) return {};
    std::vector<double> r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// coefficients of u -> p(h + u)
inline std::vector<double> shift(std::vector<double> c, double h)
{
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t k = n - 1; k > i; --k) c[k - 1] += h * c[k];
    return c;
}

inline void trim(std::vector<double>& c)
{
    while (!c.empty() && c.back() == 0.0) c.pop_back();
}

// sorted roots of p in the open interval (a, b), found through the critical points
inline std::vector<double> roots(std::vector<double> c, double a, double b)
{
    trim(c);
    std::vector<double> out;
    if (c.size() <= 1) return out;
    std::vector<double> pts{a};
    for (double r : roots(deriv(c), a, b)) pts.push_back(r);
    pts.push_back(b);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double lo = pts[i], hi = pts[i + 1];
        double flo = eval(c, lo), fhi = eval(c, hi);
        if (flo == 0.0) {
            if (i > 0) out.push_back(lo);
            continue;
        }
        if (flo * fhi >= 0.0) continue;
        for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
            double m = 0.5 * (lo + hi);
            if (m <= lo || m >= hi) break;
            double fm = eval(c, m);
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = m;
                flo = fm;
            } else {
                hi = m;
            }
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

// critical points of p in (a, b)
inline std::vector<double> critical(const std::vector<double>& c, double a, double b)
{
    return roots(deriv(c), a, b);
}

} // namespace wt::poly
