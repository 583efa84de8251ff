#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "weyltail/measures.hpp"
#include "weyltail/theta.hpp"
#include "weyltail/windows.hpp"

namespace wt {

// Monte Carlo runs draw sample i from RngStream(seed, i), so output is independent of threads.
struct RunOptions {
    std::uint64_t seed = 1;
    int threads = 1;
};

// law of the horocycle parameter x, given by its quantile function on [0, 1); empty means uniform
using XQuantile = std::function<double(double)>;

struct HistogramData {
    std::vector<double> bin_edges;
    std::vector<long> counts;
    long total = 0;
    std::vector<double> density() const;
};
HistogramData make_histogram(const std::vector<double>& values, double lo, double hi, int bins);

struct WeylHistogram {
    HistogramData hist;
    std::vector<double> values; // |S_N|/sqrt N in sample order
};
// |S_N(x; c, alpha)|/sqrt N for M draws of x (uniform on [0, 1) by default), bins on [0, sqrt N]
WeylHistogram run_weyl_histogram(long N, long M, double c, double alpha, int bins, const RunOptions& run,
                                 const XQuantile& x_law = {});

struct LimitSamples {
    std::vector<double> values; // |Theta_f1 conj Theta_f2| per sample
    double max_tail_estimate = 0;
};
LimitSamples run_limit_law_sampling(MeasureTag tag, const Window& f1, const Window& f2, long M,
                                    const TruncationPolicy& trunc, const RunOptions& run);

// fraction of values strictly above t and its binomial standard error
struct Exceedance {
    double p, se;
    long count;
};
Exceedance exceedance(const std::vector<double>& values, double t);

struct EquidistRow {
    double t;
    std::array<double, 3> atom_freq; // (0,0), (1/2,0), (0,1/2); rational case only
    double off_atom_freq;
    double ks_x, ks_y, ks_phi; // against direct samples; y capped at 10
    double ks_phi_self;        // two independent direct sample sets
};
std::vector<EquidistRow> run_equidistribution_check(const std::vector<double>& t_ladder, long M, MeasureTag tag,
                                                    const RunOptions& run, double c = 0.0, double alpha = 0.0,
                                                    const XQuantile& x_law = {});

// survival at R against the leading law; band = 3 SE + leading * R^-(2 - eps) (unit implied constant)
struct TailCheck {
    double R, empirical, se, asymptotic, correction;
    bool strict;      // within 3 SE
    bool within_band; // within 3 SE plus the correction
};
// `threshold` is what values are compared against: R^2 for |Theta|^2 samples, R for |S_N|/sqrt N
TailCheck check_tail(const std::vector<double>& values, MeasureTag tag, double R, double threshold, double eps = 0.5);

double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct TailCurve {
    std::vector<double> R, empirical, asymptotic, stderr_, fluct, fluct_se;
};
// survival of |Theta_chi| against the leading law; fluct = (survival - asymptotic) R^p
TailCurve run_fluctuation_curve(MeasureTag tag, long M, double R_max, double p_exponent, const RunOptions& run,
                                double R_step = 0.25, const TruncationPolicy& trunc = {});
TailCurve tail_curve(const std::vector<double>& values, MeasureTag tag, double R_min, double R_max, double R_step,
                     double p_exponent);
// every point of [lo, hi] lies within k SE of the inverse-variance weighted mean
bool fluctuation_band_ok(const TailCurve& c, double lo, double hi, double k = 5.0);

struct EnvelopeResult {
    double max_ratio;       // with the grid estimates of kappa (the stricter check)
    double max_ratio_cert;  // with certified kappa bounds
    double C_eta;
    double kappa1, kappa2, kappa1_cert, kappa2_cert;
    long points;
};
// throws PreconditionViolated unless both windows are compact piecewise (trapezoid-like)
EnvelopeResult run_l21_envelope_check(const Window& f1, const Window& f2, double eta, long M, const RunOptions& run);

} // namespace wt
