#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "reinhardt/errors.h"

namespace reinhardt {

using Mat2 = Eigen::Matrix2d;
using Mat2c = Eigen::Matrix2cd;

// Traceless 2x2 matrix [[a, b], [c, -a]].
struct Sl2Element {
    double a = 0, b = 0, c = 0;

    Mat2 mat() const {
        Mat2 m;
        m << a, b, c, -a;
        return m;
    }
    static Sl2Element from_mat(const Mat2& m, double tol = 1e-10) {
        if (std::abs(m(0, 0) + m(1, 1)) > tol)
            throw ConventionViolation("Sl2Element: matrix is not traceless");
        return {m(0, 0), m(0, 1), m(1, 0)};
    }
};

// Group element, det = 1 enforced on construction.
struct SL2Element {
    Mat2 g = Mat2::Identity();

    SL2Element() = default;
    explicit SL2Element(const Mat2& m, double tol = 1e-10) : g(m) {
        if (std::abs(m.determinant() - 1.0) > tol)
            throw ConventionViolation("SL2Element: determinant differs from 1");
    }
};

struct HalfPlanePoint {
    double x = 0, y = 1;
    HalfPlanePoint() = default;
    HalfPlanePoint(double x_, double y_) : x(x_), y(y_) {
        if (!(y > 0)) throw ConventionViolation("HalfPlanePoint: y must be positive");
    }
    std::complex<double> z() const { return {x, y}; }
};

enum class ControlMode { Simplex, Disk };

// Control (u0, u1, u2) with u0 + u1 + u2 = 1.  Simplex mode additionally
// expects nonnegative entries; disk mode allows the circular extension.
struct ControlVector {
    double u0 = 1, u1 = 0, u2 = 0;
    ControlMode mode = ControlMode::Simplex;

    ControlVector() = default;
    ControlVector(double a0, double a1, double a2,
                  ControlMode m = ControlMode::Simplex)
        : u0(a0), u1(a1), u2(a2), mode(m) {
        if (std::abs(u0 + u1 + u2 - 1.0) > 1e-12)
            throw ConventionViolation("ControlVector: components must sum to 1");
    }
    static ControlVector vertex(int j) {
        j = ((j % 3) + 3) % 3;
        return ControlVector(j == 0 ? 1 : 0, j == 1 ? 1 : 0, j == 2 ? 1 : 0);
    }
};

// Generator of the rotation group, J = [[0,-1],[1,0]].
Mat2 rot_J();
// R = exp(J pi/3), the hexagonal rotation.
Mat2 rot_R();

// <X, Y> = trace(X Y).
double trace_form(const Mat2& X, const Mat2& Y);

// exp(t X) for traceless X, closed form in the three det branches.
Mat2 exp_sl2(const Sl2Element& X, double t);
Mat2 exp_sl2(const Mat2& X, double t);

// Phi(z) in sl2, the tangent element attached to z = x + iy.
Mat2 phi(const HalfPlanePoint& z);
// Inverse of phi on its image: y = 1/c, x = a/c.
HalfPlanePoint phi_inv(const Mat2& X);

// Barycentric-type coordinates (rho0, rho1, rho2) of a traceless X.
std::array<double, 3> rho(const Mat2& X);

// Z_u, the control matrix of u.
Mat2 control_matrix(const ControlVector& u);
Mat2 control_matrix(double u0, double u1, double u2);

// Conjugation by the Cayley element, taking sl2(R) into su(1,1).
Mat2c cayley(const Mat2& X);

// Mobius action of g on the upper half-plane.
HalfPlanePoint mobius(const Mat2& g, const HalfPlanePoint& z);

// Open star domain: -1/sqrt(3) < x < 1/sqrt(3) and x^2 + y^2 > 1/3.
bool star_domain_test(const HalfPlanePoint& z);

// Star domain truncated at the cusps: removes y > 4.5, the two horodisks of
// radius 4/27 tangent at (+-1/sqrt(3), 0), and the rotated half-planes
// y > 15 (1/sqrt(3) - x).
bool truncated_star_test(const HalfPlanePoint& z);

}  // namespace reinhardt
