#pragma once

#include <complex>
#include <vector>

#include "reinhardt/dynamics.h"
#include "reinhardt/sl2.h"

namespace reinhardt {

enum class PolygonFamily { Plus, Minus };  // 6k+2 and 6k-2 gons

struct PolygonParams {
    int k = 1;
    PolygonFamily family = PolygonFamily::Plus;
    double y0 = 0;      // starting height, z0 = i y0
    double t_sw = 0;    // arc duration (negative for the minus family)
    double area = 0;
    double density = 0;
    bool extremal = true;  // minus family fails the maximum principle

    // invariant: 4 / (3 y0^2 + 1) = 2 cos(pi k / (3k +- 1))
    void check(double tol = 1e-12) const;
};

// Smoothed 6k+2-gon (or 6k-2-gon) parameters; area accumulated from the
// 3k+-1 congruent arc costs.  Throws std::domain_error for invalid k.
PolygonParams solve_polygon(int k, PolygonFamily family = PolygonFamily::Plus);

// Bang-bang schedule of the smoothed polygon (plus family only).
ControlSchedule polygon_schedule(const PolygonParams& p);

// Costate initial data making the polygon a Pontryagin extremal, with
// cost multiplier -1.  Valid for y0 in (1/sqrt(3), 1).
struct CostateInit {
    Mat2 Lambda1 = Mat2::Zero();
    Mat2 LambdaR = Mat2::Zero();
    double d = 0;  // det(Lambda1)
};

CostateInit costate_init(double y0);

// Grid certificate that the two inactive switching functions stay
// nonnegative along a polygon arc: min of the certificate function over
// the triangular region [2,4]^2 with y <= r.
struct CertificateReport {
    double min_value = 0;
    double max_diag_abs = 0;  // |f| on the diagonal y = r (exact zero locus)
    bool nonnegative = false;
};

CertificateReport switching_certificate(int grid_n = 400);

// The certificate function itself.
double certificate_function(double y, double r);

// Closed boundary multicurve of the smoothed polygon in the plane.
std::vector<std::complex<double>> polygon_boundary(const PolygonParams& p,
                                                   int samples_per_arc = 32);

// Area through the cost one-form: pi - (3/2) * contour integral of dx/y
// along the closed half-plane trajectory of one arc block.
double kuperberg_area(const PolygonParams& p);

// Hypotrochoid multicurve component sigma_{2j}.
std::complex<double> hypotrochoid_multicurve(double r, double r0, int n, int j,
                                             double t);

}  // namespace reinhardt
