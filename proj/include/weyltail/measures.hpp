#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "weyltail/group.hpp"
#include "weyltail/philox.hpp"

namespace wt {

enum class MeasureTag { Rational, Irrational };

struct MeasureSample {
    ThetaPoint point;
    MeasureTag tag;
};

// inverse-CDF map of two uniforms to (x, y) with density (3/pi) y^{-2} on the modular domain
std::pair<double, double> base_from_uniforms(double x0, double y0);
std::pair<double, double> sample_base(RngStream& rng);
MeasureSample sample_mu0(RngStream& rng);
MeasureSample sample_mu(RngStream& rng);
MeasureSample sample(RngStream& rng, MeasureTag tag);

// 3/(pi^2 y^2) for mu (per unit d xi), 1/(pi^2 y^2) per atom for mu0; throws OutsideFundamentalDomain
double density(const ThetaPoint& p, MeasureTag tag);

bool in_fundamental_domain(const ThetaPoint& p, double tol = 1e-12);

const char* tag_name(MeasureTag tag);
// header x,y,phi,xi1,xi2,tag; 17 significant digits
void write_samples_csv(std::ostream& os, const std::vector<MeasureSample>& samples);

} // namespace wt
