#include "weyltail/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "weyltail/constants.hpp"
#include "weyltail/error.hpp"
#include "weyltail/group.hpp"
#include "weyltail/oscillator.hpp"
#include "weyltail/parallel.hpp"
#include "weyltail/weyl.hpp"

namespace wt {

namespace {
constexpr double kPi = std::numbers::pi;
// direct comparison samples use streams far from the per-index ones
constexpr std::uint64_t kDirectA = 1ULL << 40, kDirectB = 2ULL << 40;
} // namespace

std::vector<double> HistogramData::density() const
{
    std::vector<double> d(counts.size(), 0.0);
    if (total == 0) return d;
    for (std::size_t i = 0; i < counts.size(); ++i)
        d[i] = counts[i] / (static_cast<double>(total) * (bin_edges[i + 1] - bin_edges[i]));
    return d;
}

HistogramData make_histogram(const std::vector<double>& values, double lo, double hi, int bins)
{
    if (bins < 1 || !(hi > lo)) throw Error(ErrorKind::ParameterOutOfRange, "histogram needs bins >= 1 and hi > lo");
    HistogramData h;
    h.bin_edges.resize(bins + 1);
    for (int i = 0; i <= bins; ++i) h.bin_edges[i] = lo + (hi - lo) * i / bins;
    h.bin_edges[bins] = hi;
    h.counts.assign(bins, 0);
    for (double v : values) {
        int k = static_cast<int>(std::floor((v - lo) / (hi - lo) * bins));
        k = std::clamp(k, 0, bins - 1);
        ++h.counts[k];
    }
    h.total = static_cast<long>(values.size());
    return h;
}

WeylHistogram run_weyl_histogram(long N, long M, double c, double alpha, int bins, const RunOptions& run,
                                 const XQuantile& x_law)
{
    if (N < 1 || M < 1) throw Error(ErrorKind::ParameterOutOfRange, "histogram needs N >= 1 and M >= 1");
    WeylHistogram out;
    out.values.resize(M);
    const double sN = std::sqrt(static_cast<double>(N));
    parallel_for(M, run.threads, [&](std::size_t i) {
        RngStream rng(run.seed, i);
        double x = x_law ? x_law(rng.uniform()) : rng.uniform();
        out.values[i] = std::abs(weyl_sum(N, x, c, alpha)) / sN;
    });
    out.hist = make_histogram(out.values, 0.0, sN, bins); // |S_N| = N lands in the last bin
    return out;
}

LimitSamples run_limit_law_sampling(MeasureTag tag, const Window& f1, const Window& f2, long M,
                                    const TruncationPolicy& trunc, const RunOptions& run)
{
    if (M < 1) throw Error(ErrorKind::ParameterOutOfRange, "need M >= 1");
    LimitSamples out;
    out.values.resize(M);
    std::vector<double> tails(M);
    const bool same = &f1 == &f2;
    parallel_for(M, run.threads, [&](std::size_t i) {
        RngStream rng(run.seed, i);
        ThetaPoint p = sample(rng, tag).point;
        ThetaValue a = theta(f1, p, trunc);
        if (same) {
            out.values[i] = std::norm(a.value);
            tails[i] = a.tail_estimate;
        } else {
            ThetaValue b = theta(f2, p, trunc);
            out.values[i] = std::abs(a.value) * std::abs(b.value);
            tails[i] = std::max(a.tail_estimate, b.tail_estimate);
        }
    });
    out.max_tail_estimate = *std::max_element(tails.begin(), tails.end());
    return out;
}

Exceedance exceedance(const std::vector<double>& values, double t)
{
    long k = std::count_if(values.begin(), values.end(), [t](double v) { return v > t; });
    double n = static_cast<double>(values.size());
    double p = k / n;
    return {p, std::sqrt(std::max(p * (1 - p), 1.0 / n) / n), k};
}

TailCheck check_tail(const std::vector<double>& values, MeasureTag tag, double R, double threshold, double eps)
{
    Exceedance e = exceedance(values, threshold);
    const bool rat = tag == MeasureTag::Rational;
    TailCheck c{};
    c.R = R;
    c.empirical = e.p;
    c.se = e.se;
    c.asymptotic = (rat ? 4 * std::numbers::ln2 / (kPi * kPi) : 6 / (kPi * kPi)) * std::pow(R, rat ? -4 : -6);
    c.correction = c.asymptotic * std::pow(R, -(2 - eps));
    double d = std::abs(e.p - c.asymptotic);
    c.strict = d <= 3 * e.se;
    c.within_band = d <= 3 * e.se + c.correction;
    return c;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

std::vector<EquidistRow> run_equidistribution_check(const std::vector<double>& t_ladder, long M, MeasureTag tag,
                                                    const RunOptions& run, double c, double alpha,
                                                    const XQuantile& x_law)
{
    if (M < 2) throw Error(ErrorKind::ParameterOutOfRange, "need M >= 2");
    if (!std::is_sorted(t_ladder.begin(), t_ladder.end()))
        throw Error(ErrorKind::ParameterOutOfRange, "t ladder must be increasing");
    auto direct = [&](std::uint64_t base) {
        std::vector<ThetaPoint> v(M);
        parallel_for(M, run.threads, [&](std::size_t i) {
            RngStream rng(run.seed, base + i);
            v[i] = sample(rng, tag).point;
        });
        return v;
    };
    auto cols = [](const std::vector<ThetaPoint>& v, int which) {
        std::vector<double> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            out[i] = which == 0 ? v[i].x : which == 1 ? std::min(v[i].y, 10.0) : v[i].phi;
        return out;
    };
    const auto A = direct(kDirectA), B = direct(kDirectB);
    const double self_phi = ks_two_sample(cols(A, 2), cols(B, 2));

    std::vector<EquidistRow> rows;
    for (double t : t_ladder) {
        std::vector<ThetaPoint> red(M);
        parallel_for(M, run.threads, [&](std::size_t i) {
            RngStream rng(run.seed, i);
            double u = x_law ? x_law(rng.uniform()) : rng.uniform();
            red[i] = to_point(reduce_to_fundamental(horocycle_lift(u, t, c, alpha)).reduced);
        });
        EquidistRow r{};
        r.t = t;
        long atoms[3] = {0, 0, 0}, off = 0;
        for (const auto& p : red) {
            if (p.xi1 == 0.0 && p.xi2 == 0.0) ++atoms[0];
            else if (p.xi1 == 0.5 && p.xi2 == 0.0) ++atoms[1];
            else if (p.xi1 == 0.0 && p.xi2 == 0.5) ++atoms[2];
            else ++off;
        }
        for (int k = 0; k < 3; ++k) r.atom_freq[k] = atoms[k] / static_cast<double>(M);
        r.off_atom_freq = off / static_cast<double>(M);
        r.ks_x = ks_two_sample(cols(red, 0), cols(A, 0));
        r.ks_y = ks_two_sample(cols(red, 1), cols(A, 1));
        r.ks_phi = ks_two_sample(cols(red, 2), cols(A, 2));
        r.ks_phi_self = self_phi;
        rows.push_back(r);
    }
    return rows;
}

TailCurve tail_curve(const std::vector<double>& values, MeasureTag tag, double R_min, double R_max, double R_step,
                     double p_exponent)
{
    // values are |Theta|^2; the survival of |Theta| at R is the exceedance of R^2
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    const double lead = tag == MeasureTag::Rational ? 4 * std::numbers::ln2 / (kPi * kPi) : 6 / (kPi * kPi);
    const int expo = tag == MeasureTag::Rational ? 4 : 6;
    TailCurve c;
    for (int i = 0;; ++i) {
        double R = R_min + i * R_step;
        if (R > R_max + 1e-12) break;
        auto it = std::upper_bound(sorted.begin(), sorted.end(), R * R);
        double p = static_cast<double>(sorted.end() - it) / n;
        double se = std::sqrt(std::max(p * (1 - p), 1 / n) / n);
        double asym = lead * std::pow(R, -expo);
        c.R.push_back(R);
        c.empirical.push_back(p);
        c.asymptotic.push_back(asym);
        c.stderr_.push_back(se);
        c.fluct.push_back((p - asym) * std::pow(R, p_exponent));
        c.fluct_se.push_back(se * std::pow(R, p_exponent));
    }
    return c;
}

TailCurve run_fluctuation_curve(MeasureTag tag, long M, double R_max, double p_exponent, const RunOptions& run,
                                double R_step, const TruncationPolicy& trunc)
{
    Window chi = Window::indicator(1.0);
    LimitSamples s = run_limit_law_sampling(tag, chi, chi, M, trunc, run);
    return tail_curve(s.values, tag, 1.0, R_max, R_step, p_exponent);
}

bool fluctuation_band_ok(const TailCurve& c, double lo, double hi, double k)
{
    double sw = 0, swx = 0;
    for (std::size_t i = 0; i < c.R.size(); ++i) {
        if (c.R[i] < lo || c.R[i] > hi) continue;
        double w = 1 / (c.fluct_se[i] * c.fluct_se[i]);
        sw += w;
        swx += w * c.fluct[i];
    }
    if (sw == 0) return false;
    double center = swx / sw;
    for (std::size_t i = 0; i < c.R.size(); ++i) {
        if (c.R[i] < lo || c.R[i] > hi) continue;
        if (std::abs(c.fluct[i] - center) > k * c.fluct_se[i]) return false;
    }
    return true;
}

EnvelopeResult run_l21_envelope_check(const Window& f1, const Window& f2, double eta, long M, const RunOptions& run)
{
    for (const Window* f : {&f1, &f2})
        if (f->kind() != Window::Kind::Piecewise || !std::isfinite(decay_bounds(*f).B2))
            throw Error(ErrorKind::PreconditionViolated, "envelope check needs C^1 piecewise windows of finite sp norm");
    if (!(eta > 1 && eta <= 2)) throw Error(ErrorKind::ParameterOutOfRange, "eta must lie in (1, 2]");
    if (M < 1) throw Error(ErrorKind::ParameterOutOfRange, "need M >= 1");
    EnvelopeResult r{};
    r.C_eta = c_eta(eta);
    GridSpec g{256, 2048, 64};
    KappaResult k1 = kappa_eta(f1, eta, g, run.threads), k2 = kappa_eta(f2, eta, g, run.threads);
    r.kappa1 = std::max(k1.grid_max, k1.tail_bound);
    r.kappa2 = std::max(k2.grid_max, k2.tail_bound);
    r.kappa1_cert = k1.certified;
    r.kappa2_cert = k2.certified;
    std::vector<double> ratio(M);
    parallel_for(M, run.threads, [&](std::size_t i) {
        RngStream rng(run.seed, i);
        ThetaPoint p = sample_mu(rng).point;
        // F_Gamma already has y >= sqrt3/2 > 1/2
        double theta_frac = p.xi2 - std::ceil(p.xi2 - 0.5);
        double sy = std::sqrt(p.y);
        Transformer t1(f1, p.phi), t2(f2, p.phi);
        cplx main = sy * t1(-theta_frac * sy) * std::conj(t2(-theta_frac * sy));
        cplx full = theta(f1, p).value * std::conj(theta(f2, p).value);
        ratio[i] = std::abs(full - main) * std::pow(p.y, (eta - 1) / 2);
    });
    double mx = *std::max_element(ratio.begin(), ratio.end());
    r.max_ratio = mx / (r.kappa1 * r.kappa2);
    r.max_ratio_cert = mx / (r.kappa1_cert * r.kappa2_cert);
    r.points = M;
    return r;
}

} // namespace wt
