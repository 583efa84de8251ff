#include "weyltail/measures.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <numbers>

#include "weyltail/error.hpp"

namespace wt {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::pair<double, double> base_from_uniforms(double x0, double y0)
{
    double x = std::sin(kPi * x0 / 3 - kPi / 6);
    double y = std::sqrt(1 - x * x) / (1 - y0);
    return {x, y};
}

std::pair<double, double> sample_base(RngStream& rng)
{
    double x0 = rng.uniform();
    double y0 = rng.uniform();
    while (y0 >= 1.0) y0 = rng.uniform();
    // x0 = 1 would put x on the excluded edge 1/2; uniform() < 1 so it never happens
    return base_from_uniforms(x0, y0);
}

MeasureSample sample_mu0(RngStream& rng)
{
    auto [x, y] = sample_base(rng);
    double phi = kPi * rng.uniform();
    double u = rng.uniform();
    MeasureSample s{{x, y, phi, 0.0, 0.0}, MeasureTag::Rational};
    if (u >= 2.0 / 3) s.point.xi2 = 0.5;
    else if (u >= 1.0 / 3) s.point.xi1 = 0.5;
    return s;
}

MeasureSample sample_mu(RngStream& rng)
{
    auto [x, y] = sample_base(rng);
    double phi = kPi * rng.uniform();
    double a = rng.uniform(), b = rng.uniform();
    // [0,1) -> (-1/2, 1/2]
    if (a > 0.5) a -= 1.0;
    if (b > 0.5) b -= 1.0;
    return {{x, y, phi, a, b}, MeasureTag::Irrational};
}

MeasureSample sample(RngStream& rng, MeasureTag tag)
{
    return tag == MeasureTag::Rational ? sample_mu0(rng) : sample_mu(rng);
}

bool in_fundamental_domain(const ThetaPoint& p, double tol)
{
    if (!(p.y > 0)) return false;
    if (p.x < -0.5 - tol || p.x >= 0.5 + tol) return false;
    if (p.x * p.x + p.y * p.y < 1.0 - tol) return false;
    if (p.phi < -tol || p.phi >= kPi + tol) return false;
    if (p.xi1 <= -0.5 - tol || p.xi1 > 0.5 + tol) return false;
    if (p.xi2 <= -0.5 - tol || p.xi2 > 0.5 + tol) return false;
    return true;
}

double density(const ThetaPoint& p, MeasureTag tag)
{
    if (!in_fundamental_domain(p)) throw Error(ErrorKind::OutsideFundamentalDomain, "point outside F_Gamma");
    double base = 1.0 / (kPi * kPi * p.y * p.y);
    if (tag == MeasureTag::Irrational) return 3.0 * base;
    bool atom = (p.xi1 == 0.0 && p.xi2 == 0.0) || (p.xi1 == 0.5 && p.xi2 == 0.0) || (p.xi1 == 0.0 && p.xi2 == 0.5);
    return atom ? base : 0.0;
}

const char* tag_name(MeasureTag tag)
{
    return tag == MeasureTag::Rational ? "rational" : "irrational";
}

void write_samples_csv(std::ostream& os, const std::vector<MeasureSample>& samples)
{
    auto old = os.precision(17);
    os << "x,y,phi,xi1,xi2,tag\n";
    for (const auto& s : samples) {
        const auto& p = s.point;
        os << p.x << ',' << p.y << ',' << p.phi << ',' << p.xi1 << ',' << p.xi2 << ',' << tag_name(s.tag) << '\n';
    }
    os.precision(old);
}

} // namespace wt
