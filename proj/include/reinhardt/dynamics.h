#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "reinhardt/sl2.h"

namespace reinhardt {

// One bang-bang segment: control is the base control rotated k times,
// applied for duration dt > 0.
struct ScheduleSegment {
    int k = 0;
    double dt = 0;
};

struct ControlSchedule {
    ControlVector base = ControlVector::vertex(2);
    std::vector<ScheduleSegment> segments;
};

struct TrajectorySample {
    double t = 0;
    HalfPlanePoint z;
    Mat2 g = Mat2::Identity();
    double cost = 0;
};

using Trajectory = std::vector<TrajectorySample>;

// Rotation action on controls: one application maps (u0,u1,u2) to (u1,u2,u0).
ControlVector rotate_control(const ControlVector& u, int k);

// Vector field on the upper half-plane under constant control u.
// Throws StarViolation when the field denominator vanishes.
std::pair<double, double> half_plane_field(const HalfPlanePoint& z,
                                           const ControlVector& u);

// Normalized control generator P0 = Z_u / <Z_u, phi(z0)>; it is the constant
// infinitesimal generator of the point flow from z0.
Mat2 control_generator(const HalfPlanePoint& z0, const ControlVector& u);

// Point flow z(t) = exp(t P0) . z0 under constant control.
HalfPlanePoint const_flow(const HalfPlanePoint& z0, const ControlVector& u,
                          double t);

// Frame flow g(t) = g0 exp(t (X0 + P0)) exp(-t P0).
Mat2 const_group_flow(const Mat2& g0, const HalfPlanePoint& z0,
                      const ControlVector& u, double t);

// Cost (3/2) * integral of (x^2 + y^2 + 1)/y along the constant-control arc.
double segment_cost(const HalfPlanePoint& z0, const ControlVector& u, double t);

// End state of a bang-bang schedule started at (g0, z0).
struct SplineState {
    Mat2 g = Mat2::Identity();
    HalfPlanePoint z;
    double cost = 0;
};

SplineState spline(const Mat2& g0, const HalfPlanePoint& z0,
                   const ControlSchedule& schedule);

// Sampled version of the same trajectory, samples_per_segment interior points.
Trajectory spline_trajectory(const Mat2& g0, const HalfPlanePoint& z0,
                             const ControlSchedule& schedule,
                             int samples_per_segment = 64);

// Costates transported along a constant-control arc: Lambda1 by frame
// conjugation, LambdaR through the integral representation (two nested
// quadratures).  lambda_cost is the cost multiplier.
struct CostatePair {
    Mat2 Lambda1 = Mat2::Zero();
    Mat2 LambdaR = Mat2::Zero();
};

CostatePair costate_const_flow(const CostatePair& c0, const HalfPlanePoint& z0,
                               const ControlVector& u, double lambda_cost,
                               double t);

void write_trajectory_csv(std::ostream& os, const Trajectory& tr);
void write_trajectory_json(std::ostream& os, const Trajectory& tr);

}  // namespace reinhardt
