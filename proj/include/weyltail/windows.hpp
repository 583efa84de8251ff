#pragma once

#include <array>
#include <optional>
#include <vector>

namespace wt {

// Compactly supported piecewise polynomial. Piece j lives on (x[j], x[j+1]] and is
// sum_k c[j][k] (w - x[j])^k. Zero outside [x.front(), x.back()].
struct PiecewisePoly {
    std::vector<double> x;
    std::vector<std::vector<double>> c;

    std::size_t pieces() const { return c.size(); }
    int degree() const;
    double operator()(double w) const;
    double lo() const { return x.empty() ? 0.0 : x.front(); }
    double hi() const { return x.empty() ? 0.0 : x.back(); }
    // right limit minus left limit at each breakpoint (size pieces()+1)
    std::vector<double> jumps() const;
    // piecewise derivative; jumps of *this are dropped
    PiecewisePoly derivative() const;
    // w^p * (*this)
    PiecewisePoly times_power(int p) const;
    // drop zero-width pieces
    void normalize();
};

PiecewisePoly pp_sum(const PiecewisePoly& f, const PiecewisePoly& g);
PiecewisePoly pp_scale(const PiecewisePoly& f, double s);

struct Norms {
    double L1 = 0, L2 = 0, Linf = 0, TV = 0;
    double sp = 0; // NaN when undefined (unbounded support)
};

// L1, L2, sup, total variation (smooth part plus jumps), sp
Norms pp_norms(const PiecewisePoly& f);

class Window {
public:
    enum class Kind { Indicator, Piecewise, Gaussian, Hermite1 };

    // 1_{(lo, hi)} times height
    static Window indicator(double lo, double hi, double height = 1.0);
    static Window indicator(double s) { return indicator(0.0, s); }
    static Window piecewise(PiecewisePoly p);
    // amp * exp(-pi a w^2) and amp * w * exp(-pi a w^2)
    static Window gaussian(double a = 1.0, double amp = 1.0);
    static Window hermite1(double a = 1.0, double amp = 1.0);

    Kind kind() const { return kind_; }
    double operator()(double w) const;
    bool compact() const { return kind_ == Kind::Indicator || kind_ == Kind::Piecewise; }
    // only for compact kinds
    const PiecewisePoly& poly() const { return pp_; }
    const std::vector<std::array<double, 3>>& quad() const { return quad_; }
    double gauss_a() const { return a_; }
    double amp() const { return amp_; }
    double indicator_lo() const { return lo_; }
    double indicator_hi() const { return hi_; }
    const Norms& norms() const { return norms_; }

private:
    Kind kind_ = Kind::Piecewise;
    PiecewisePoly pp_;
    std::vector<std::array<double, 3>> quad_;
    double a_ = 1.0, amp_ = 1.0;
    double lo_ = 0.0, hi_ = 0.0;
    Norms norms_;
    void finish();
};

// T_{a,b}^{eps,delta}; throws InvalidInterval if a > b or eps, delta < 0
Window trapezoid(double a, double b, double eps, double delta);

// the basic partition element T_{1/3,1/3}^{1/6,1/3} and its mirror
Window delta_window();
Window delta_minus_window();

enum class DyadicPart { Full, Left, Right };
Window dyadic_truncation(double s, int J, DyadicPart part = DyadicPart::Full);

double partition_sum(double w, int j_max);

// w -> e^{-t/4} f(e^{-t/2} w)
Window dilate(const Window& f, double t);
// w -> f(-w)
Window mirror(const Window& f);
// w -> f(w - s)
Window shift(const Window& f, double s);
Window scale(const Window& f, double c);
// pointwise sum of two compact windows
Window sum(const Window& f, const Window& g);

// throws UnboundedSupport for the Gaussian kinds
double sp_norm(const Window& f);

enum class NormKind { L1, Sp };
// || w^p f^(q) ||, derivatives piecewise; delta masses of jumps count in L1
double h_norm(const Window& f, int p, int q, NormKind norm);

} // namespace wt
