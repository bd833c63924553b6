#pragma once

#include <complex>
#include <utility>

#include "reinhardt/pontryagin.h"
#include "reinhardt/sl2.h"

namespace reinhardt {

using Cx = std::complex<double>;

// [[z]]_eps = sqrt(eps + |z|^2)
double bracket_norm(const Cx& z, int eps = 1);
// R(z1, z2) = Re(conj(z1) z2)
double re_pair(const Cx& z1, const Cx& z2);

// Extremal state in hyperboloid coordinates: X ~ w, Lambda1 ~ (d1, b, eps),
// LambdaR ~ c after conjugation into su(1,1).  rho is the control radius
// parameter of the disk (circular) control family.
struct WBCState {
    Cx w, b, c;
    double rho = 2.0;
    double d1 = 1.5;
    int eps = 1;  // sign of det(Lambda1)
    double lambda_cost = -1.0;
};

WBCState to_wbc(const Mat2& X, const Mat2& Lambda1, const Mat2& LambdaR,
                double rho, double lambda_cost);
WBCState to_wbc(const CostateTriple& q, double rho);

CostateTriple from_wbc(const WBCState& s);

// Both roots of the quadratic selecting the circular control on |z| = 1.
struct ControlRoot {
    Cx z_star;  // Hamiltonian maximizer
    Cx other;
};

// Throws DegenerateControl when c = 0.
ControlRoot optimal_control_root(const WBCState& s);

struct WBCDeriv {
    Cx dw, db, dc;
};

// Circular-control extremal field.  Throws StarViolation when the
// denominator mu = [[w]] - rho R(w, z*) is not positive.
WBCDeriv wbc_rhs(const WBCState& s);

// Conserved quantities of the circular flow.
double angular_momentum(const WBCState& s);
double wbc_hamiltonian(const WBCState& s);

// Integrate the circular flow for duration t (fixed rho, d1, eps).
WBCState wbc_integrate(const WBCState& s0, double t, double tol = 1e-11);

// Closed-form abnormal subsystem (rho = 1, lambda_cost = 0).
WBCDeriv abnormal_rhs(const WBCState& s);
// Half the square norm of the rotational costate; a cubic in time along
// abnormal trajectories.
double abnormal_dR(const WBCState& s);

// Least-squares slope of log(field truncation error) against log(r) as the
// state is scaled into the singular locus; near 1 when the circular Fuller
// system is the correct limit.
double truncation_error_slope();

// Neck chart for eps = -1: b = exp(i theta) sqrt(r^2 + 1).
struct NeckState {
    Cx w;
    double r = 0, theta = 0;
};

NeckState to_neck(const WBCState& s);
WBCState from_neck(const NeckState& n, const WBCState& like);
// (dr, dtheta) induced by the b equation.
std::pair<double, double> neck_rhs(const Cx& w, double r, double theta);

}  // namespace reinhardt
