#pragma once

#include <Eigen/Dense>
#include <vector>

#include "reinhardt/sl2.h"

namespace reinhardt {

// Full extremal state: tangent matrix and the two costates.
struct CostateTriple {
    Mat2 X = Mat2::Zero();
    Mat2 Lambda1 = Mat2::Zero();
    Mat2 LambdaR = Mat2::Zero();
    double lambda_cost = -1.0;

    // det X = 1 and <X, LambdaR> = 0 up to tol
    void check(double tol = 1e-9) const;
};

// Result of maximizing the Hamiltonian over the control triangle.
struct MaximizerFace {
    enum Kind { Vertex, Edge, Singular } kind = Vertex;
    int i = 0, j = 0;  // vertex index, or the two tied vertices of an edge
};

// State of the one-parameter edge subsystem (controls on the u0 = 0 face).
struct EdgeState {
    double s = 0;   // accumulated arc parameter, s' = 1/y
    double x = 0;
    double y = 1;
    double l1 = 0, l2 = 0, l3 = 0;
    double lambda_cost = -1.0;
};

// H(q, u) with the control entering through P = Z_u / <X, Z_u>.
double hamiltonian(const CostateTriple& q, const ControlVector& u);

// chi_{ij} = <LambdaR, P_j - P_i>; nonnegative while vertex i is active,
// zero exactly at a switch from i to j.
double switching_value(const CostateTriple& q, int i, int j);

// Face of the control triangle maximizing H, with tie tolerance.
MaximizerFace maximize_control(const CostateTriple& q, double tie_tol = 1e-11);

// Right-hand side of the extremal system under control u.
CostateTriple rhs(const CostateTriple& q, const ControlVector& u);

struct SwitchRecord {
    double t = 0;
    int from = 0, to = 0;
};

struct ExtremalResult {
    CostateTriple q;
    double t = 0;
    int control = 0;  // active vertex at the end
    std::vector<SwitchRecord> switches;
};

// Integrate the bang-bang extremal flow starting on vertex control c0,
// switching at zeros of the two inactive switching functions, until t_max
// or max_switches.  Throws StarViolation when X leaves the star cone,
// SingularApproach when LambdaR collapses or arcs degenerate.
ExtremalResult integrate_extremal(const CostateTriple& q0, int c0, double t_max,
                                  int max_switches = 1 << 30);

// One step of the self-map of the switching section: flow from a switch
// onto control c until the next switch, then pull back by the hexagonal
// rotation.  p is the previously active vertex (the section is chi_{c,p}=0).
struct PoincareStep {
    CostateTriple q;
    double t_sw = 0;
};

PoincareStep poincare_step(const CostateTriple& q0, int c, int p);

// Finite-difference Jacobian of poincare_step in the 4 coordinates of the
// section (constraints: det X = 1, <X,LambdaR> = 0, det Lambda1 = d, H = 0,
// chi_{c,p} = 0).
Eigen::Matrix4d poincare_jacobian(const CostateTriple& q0, int c, int p,
                                  double fd_step = 1e-6);

// Edge subsystem: bang control u_e = -(1/2) sign(l2), integrated for
// duration dt (switching at zeros of l2).
double edge_field_y(double x, double y, double ue);
double edge_hamiltonian(const EdgeState& e, double ue);
EdgeState edge_system_step(const EdgeState& e0, double dt);

// Costates of the abnormal edge extremal expressed at (x, y).
Mat2 abnormal_edge_lambda1(double x, double y);
Mat2 abnormal_edge_lambdaR(double x, double y);

}  // namespace reinhardt
