#pragma once

#include <vector>

#include "reslab/exppoly.hpp"

namespace reslab {

enum class ZeroKind { eigenvalue, resonance, real_axis };

struct Zero {
    Complex kappa{0.0, 0.0};
    int multiplicity = 1;
    ZeroKind kind = ZeroKind::resonance;
    /// False when Newton could not pin the location; kappa is then the
    /// center of the smallest isolating box and uncertainty its half-diagonal.
    bool polished = true;
    double uncertainty = 0.0;
};

struct Rect {
    double x0 = 0.0;
    double x1 = 0.0;
    double y0 = 0.0;
    double y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    Complex center() const { return Complex(0.5 * (x0 + x1), 0.5 * (y0 + y1)); }
};

/// Disc count plus the radius actually integrated over (nudged off zeros).
struct DiscCount {
    int count = 0;
    double radius = 0.0;
};

struct CurveSample {
    double radius = 0.0;
    int count = 0;
};

struct CountingCurve {
    std::vector<CurveSample> samples;
    double slope = 0.0;
    double intercept = 0.0;
    double fit_residual = 0.0;
};

/// Winding number of F along the boundary, by adaptive phase tracking
/// (consecutive phase steps kept below pi/2).  Throws ContourError when a
/// zero sits on (or hugs) the contour.
int winding_number_rect(const ExpPolynomial& f, const Rect& rect);
int winding_number_circle(const ExpPolynomial& f, Complex center, double radius);

/// Zeros inside |kappa| < R with multiplicity.  R is nudged up by 1e-4
/// relative, at most 5 times, when a zero blocks the contour.
int count_zeros_disc(const ExpPolynomial& f, double alpha, double radius);
DiscCount count_zeros_disc_detail(const ExpPolynomial& f, double alpha, double radius);

/// All zeros in the rectangle, each exactly once, multiplicities summing to
/// the region's winding number.  tol >= 1e-12.
std::vector<Zero> locate_zeros(const ExpPolynomial& f, double alpha, const Rect& region,
                               double tol = 1e-10);

/// N(R) sampled on an equispaced radius grid with a linear fit on the upper
/// half.  Requires R_max >= 20*(2pi/W_X) when W_X > 0 and steps >= 10.
CountingCurve counting_curve(const ExpPolynomial& f, double alpha, double r_max, int steps);

ZeroKind classify_zero(Complex kappa, double eps = 1e-8);
ZeroKind classify_zero(const Zero& z, double eps = 1e-8);

}  // namespace reslab
