#pragma once

#include <vector>

#include "reinhardt/fuller.h"
#include "reinhardt/pontryagin.h"

namespace reinhardt {

// Chart near the singular locus: X = J + r X~, Lambda1 = -(3/2)J + r^2 L~1,
// LambdaR = r^3 L~R, made unique by x~11 = 1.  The free coordinates are
// (r, x~21, l~11, l~21); x~12, l~12 are recovered from det X = 1,
// det Lambda1 = 9/4, and L~R from a full-rank 3x3 linear system.
struct BlowupChart {
    double r = 0;
    double xt21 = 0;
    double lt11 = 0;
    double lt21 = 0;
};

// L~R = LambdaR / r^3 as the solution of <X, LambdaR> = H = chi = 0,
// divided through so the system stays full rank at r = 0.  Throws
// RankDeficiency if the system degenerates.
Mat2 lambda_r_tilde(const BlowupChart& bc);

// Assemble the full extremal state from the chart (r > 0; at r = 0 this is
// the singular locus itself).
CostateTriple chart_to_state(const BlowupChart& bc);
// Inverse on the chart's domain; requires X(0,0) = r > 0.
BlowupChart state_to_chart(const CostateTriple& q);

// Angular limit of the chart on the exceptional divisor as a Fuller state:
// z1 = (x~21 + i)/2, z2 = (l~11 - i l~21)/6, z3 = (l~R12 + l~R21)/24
// with L~R evaluated at r = 0.
FullerState fuller_limit(const BlowupChart& bc);

// The outward fixed point (0, x~out) on the exceptional divisor.
BlowupChart blowup_fixed_point();

struct LocalStep {
    BlowupChart chart;
    double s_sw = 0;     // switching time in rescaled units s = t/r
    bool cyclic = true;  // the back-switch function stayed nonnegative
};

// One wall-to-wall step in chart coordinates: integrate the rescaled
// constant-control system to the first switching zero (NoSwitch beyond
// s = 40), rotate by the hexagonal symmetry, renormalize x~11 = 1.
// Polynomial in r, so it evaluates across r = 0.  Throws StarViolation if
// the segment reaches the star boundary before the switch.
LocalStep local_poincare(const BlowupChart& bc);

struct UnstableCurveResult {
    std::vector<BlowupChart> points;  // resampled at uniform r spacing
    double boundary_r = 0;    // where x~21 meets the star boundary sqrt(3)-1/r
    double exit_onset_r = 0;  // smallest source r whose segment leaves the
                              // star cone before switching (0 if none seen)
    bool cyclic = true;       // switching order stayed cyclic on every step
};

// Trace the one-dimensional unstable manifold of (0, x~out), parameterized
// by r, by forward iteration of local_poincare from seeds near the divisor.
UnstableCurveResult unstable_curve(double max_r, double step);

}  // namespace reinhardt
