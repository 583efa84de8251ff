#pragma once

#include <optional>

namespace wt {

// 2 log 2 at b = 1, closed form above
double d_rat(double b);
// independent quadrature of int_0^pi |chi_phi(0)|^2 |(chi_b)_phi(0)|^2 dphi; any b > 0
double d_rat_quadrature(double b, double tol = 1e-10);
// int int |chi_phi(w) (chi_b)_phi(w)|^3 dphi dw
double d_irr(double b, double tol = 1e-5);

struct ZetaSuite {
    double zeta;       // via the alternating series
    double zeta_alt;   // sum (-1)^{n-1} n^{-eta}
    double lower, upper; // two-sided bound from the alternating series
    double c_of_eta0;    // constant in zeta(eta) <= c/(eta - 1) on (1, eta0]
};
ZetaSuite zeta_suite(double eta);
double zeta_alt(double eta);
double zeta(double eta);
double c_eta0(double eta0);

double c_eta(double eta);        // 2^{6 eta} zeta(eta)^2
double k_const(double s);        // kappa bound for the dyadic windows
double k_left_const(double s);   // same for the left halves
double sp_chi(double s);         // max{2s, 9}
double sp_chi_left(double s);    // max{s, 9}

double eta_rat(double eps);
double eta_irr(double eps);

struct ExplicitConstants {
    double b, eta, eps;
    double C_eta, K, K_L, sp_chi_b, sp_chi_b_left;
    double R0_rat, P_rat, R_rat, implied_rat;
    double R0_irr, P_irr, R_irr, implied_irr;
    double eta_rat_of_eps, eta_irr_of_eps;
    double D_rat, D_irr;
    // P_irr and implied_irr divide by D_irr; D_irr(b) >= 3 is only conjectured
    bool d_irr_conjecture_holds;
};
// d_irr_value skips the 2-D quadrature when given
ExplicitConstants explicit_constants(double b, double eta, double eps, std::optional<double> d_irr_value = {});

enum class TailCase { Rational, Irrational };
enum class TailForm { Eta, Eps };
struct TailLaw {
    int exponent;
    double leading_coefficient;
    double error_exponent;
    double implied_constant;
    double validity_threshold;
    double probability(double R) const; // leading term only
};
// param is eta for TailForm::Eta and eps for TailForm::Eps
TailLaw tail_law(TailCase c, double b, TailForm form, double param, std::optional<double> d_irr_value = {});

struct InequalityReport {
    bool k4_dominates_sp;      // K(b)^4 >= 2^14 b sp(chi_b)^3 on b in [1, 100]
    bool sp_left_le_sp;        // sp(chi_{b,L}) <= sp(chi_b)
    bool c_eta_ge_64;          // from the zeta lower bound on (1, 5/4]
    bool r0_rat_le_r_rat;      // R0_rat(b, eta(eps)) <= R_rat(b, eps) on [1,10] x [0.05,1]
    bool r0_irr_le_r_irr;
    bool zeta_bounds;          // 1/(eta-1) < zeta <= sqrt2/(eta-1) on (1, 5/4]
    bool all() const
    {
        return k4_dominates_sp && sp_left_le_sp && c_eta_ge_64 && r0_rat_le_r_rat && r0_irr_le_r_irr && zeta_bounds;
    }
};
InequalityReport inequality_checks(int grid = 200);

} // namespace wt
