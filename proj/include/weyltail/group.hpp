#pragma once

#include <vector>

namespace wt {

// (M; xi) in ASL(2,R), M = [[m11, m12], [m21, m22]], product (M;xi)(M';xi') = (MM'; xi + M xi')
struct GroupElement {
    double m11 = 1, m12 = 0, m21 = 0, m22 = 1;
    double xi1 = 0, xi2 = 0;
};

struct IwasawaCoords {
    double x = 0, y = 1, phi = 0;
};

GroupElement identity();
GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
double det(const GroupElement& g);
double max_entry_diff(const GroupElement& g, const GroupElement& h);

// (x + iy, phi; xi) coordinates of a point of G
struct ThetaPoint {
    double x = 0, y = 1, phi = 0, xi1 = 0, xi2 = 0;
};
GroupElement to_group(const ThetaPoint& p);
ThetaPoint to_point(const GroupElement& g);

// M = n_x a_y k_phi; throws DegenerateMatrix if |det - 1| > 1e-6
IwasawaCoords iwasawa(const GroupElement& g);
GroupElement from_iwasawa(const IwasawaCoords& c, double xi1 = 0, double xi2 = 0);

enum class Special { Geodesic, Horocycle, Gamma1, Gamma2, Gamma3, Gamma4 };
// param is t for Geodesic, x for Horocycle, ignored otherwise
GroupElement special_element(Special kind, double param = 0.0);

enum class Generator { G1, G2, G3, G4 };
struct WordStep {
    Generator gen;
    long power;
};
GroupElement generator_power(Generator gen, long power);
// applies the steps in order, each one acting on the left
GroupElement apply_word(const std::vector<WordStep>& word, const GroupElement& g);

struct ReductionResult {
    GroupElement reduced;
    std::vector<WordStep> word;
};

bool in_fundamental_domain(const GroupElement& g, double tol = 1e-12);
// throws NonConvergence after 10^4 steps
ReductionResult reduce_to_fundamental(const GroupElement& g);

// (I; (alpha + c u, 0)) Psi^u Phi^t
GroupElement horocycle_lift(double u, double t, double c, double alpha);

} // namespace wt
