#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <utility>

#include "reinhardt/errors.h"

namespace reinhardt {

using Cx = std::complex<double>;

// State of the scale-free limit system z3' = z2, z2' = z1, z1' = -i z3/|z3|.
struct FullerState {
    Cx z1, z2, z3;
};

// Maximized Hamiltonian (i/2)(z2 conj(z1) - conj(z2) z1) + |z3| and the
// angular momentum |z2|^2 - 2 Re(conj(z1) z3); both constant along the flow.
double fuller_hamiltonian(const FullerState& z);
double fuller_angular(const FullerState& z);

// Scaling/rotation action z_j -> exp(i theta) r^j z_j; maps solutions to
// solutions with time scaled by r.
FullerState virial(const FullerState& z, double theta, double r);
// Time reversal as a point map: z(t) -> (conj z1, -conj z2, conj z3)(-t).
FullerState time_reverse(const FullerState& z);

// Self-similar solution z3 = t^(3-i)/10 with H = A = 0, defined for t > 0.
FullerState log_spiral(double t);

// Flow of the disk-control system.  Throws WallHit when z3 reaches 0.
FullerState fuller_flow_circular(const FullerState& z0, double t,
                                 double tol = 1e-10);

// Projection to the scale/rotation quotient.
struct BaseSpacePoint {
    double x2 = 0, x3 = 0;
    int eps2 = 1, eps3 = 1;
};

BaseSpacePoint base_project(const FullerState& z);
// Quotient vector field (v2, v3); throws std::domain_error off the region
// {0 < x2, x2^2/2 <= x3 <= x2}.
std::pair<double, double> base_field(const BaseSpacePoint& p);
// Central-difference Jacobian spectrum at the interior equilibrium
// (2/sqrt(10), sqrt(2)/5) with eps2 = eps3 = +1.
std::pair<Cx, Cx> base_jacobian_eigs();

// --- triangular (cube-root) control ---

// exp(2 pi i k / 3)
Cx cube_root_control(int k);

// Constant-control segment; z3 is an exact cubic polynomial in t.
FullerState triangular_segment(const FullerState& z0, const Cx& u, double t);

// Lexicographic argmax of (Re<z3,u>, Re<z2,u>, Re<z1,u>) over the cube
// roots of unity; a surviving two-way tie {zeta^i, zeta^(i+1)} resolves to
// zeta^i.  A full three-way tie would force z = 0 and is asserted against.
Cx first_control(const FullerState& z0);

// Re<z3(t, z0, u), v1 - v2> along the segment with control u.
double switching_fn(const FullerState& z0, const Cx& u, const Cx& v1,
                    const Cx& v2, double t);

struct SwitchInfo {
    FullerState state;  // at the switching time
    double t_sw = 0;
    Cx control;       // control active on the segment
    Cx next_control;  // competitor that ties at t_sw
};

// First switching event of the bang-bang flow.  Throws NoSwitch if no
// positive root of either switching polynomial exists.
SwitchInfo first_switch(const FullerState& z0);

// Wall-to-wall return map (flow to the first switching time).
FullerState fuller_poincare(const FullerState& z0);

// phi(z) = (|z1|^6 + |z2|^3 + |z3|^2)^(1/6); scales linearly under virial.
double phi_norm(const FullerState& z);

// Rotate by a cube root of unity so z3 lands on the ray (-inf, 0].
FullerState to_wall_representative(const FullerState& z);

// Return map on the angular section: wall-rotate, normalize phi = 1,
// apply the return map, wall-rotate and normalize again.
FullerState fuller_poincare_angular(const FullerState& q);

// Scale factor of the self-similar periodic orbit: the root > 1 of
// 1 - 5r - 7r^2 - 5r^3 - 7r^4 - 5r^5 + r^6.
double r_scale();
// Expanding fixed-point data in closed form: q_out satisfies
// F(q_out) = (zeta^2, r_scale) . q_out; q_in = tau(q_out).
FullerState q_out_state();
FullerState q_in_state();
// Switching time at q_out: 2(1 + r + r^2) / (sqrt(3) (r + 1)).
double q_out_switch_time();

// Coordinates on {z3 real <= 0, vanishing wall Hamiltonian} modulo the
// virial scaling: r1 + r2 = 1, x3 = -2 r1 r2 sin(psi), psi = theta2 - theta1.
struct CellCoordinates {
    double r2 = 0;      // in [0, 1]
    double psi = 0;     // in [0, pi]
    double theta2 = 0;  // in (-pi, pi]
    int eps2 = 1, eps3 = 1;
};

CellCoordinates cell_coords(const FullerState& z);
FullerState from_cell_coords(const CellCoordinates& cc);

enum class CellPart { D0, D1, D2, D3, D4 };

struct CellClass {
    CellPart part = CellPart::D0;
    // box indices inside D1: i over psi (0: (0,pi/3), 1: middle,
    // 2: (2pi/3,pi)), j over theta2 (0: (pi-1.1,pi), 1: middle, 2: (0,1.1))
    int i = -1, j = -1;
    bool in_d_out() const { return part == CellPart::D1 && i == 0 && j == 0; }
    bool in_d_in() const { return part == CellPart::D1 && i == 2 && j == 2; }
};

CellClass cell_classify(const CellCoordinates& cc);
const char* cell_part_name(const CellClass& c);

// Eigenvalues of the return map at q_out restricted to the section
// (cell-coordinate chart), by central differences.
std::array<Cx, 3> q_out_section_eigs();

struct BasinReport {
    int boundary_samples = 0, boundary_failures = 0;
    int table_samples = 0, table_failures = 0;
    int orbits = 0, converged = 0;
    int max_iterations = 0;
    bool ok() const {
        return boundary_failures == 0 && table_failures == 0 &&
               converged == orbits;
    }
};

// (a) return map maps a sampled boundary mesh of the absorbing box into the
// box; (b) sampled verification of the part-transition table; (c) random
// wall states iterate into the box and on to the expanding fixed point.
BasinReport basin_check(int samples, std::uint64_t seed);

}  // namespace reinhardt
