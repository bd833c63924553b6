#include "reinhardt/sl2.h"

#include <cmath>

namespace reinhardt {

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

Mat2 rot_J() {
    Mat2 m;
    m << 0, -1, 1, 0;
    return m;
}

Mat2 rot_R() {
    Mat2 m;
    m << 0.5, -0.5 * kSqrt3, 0.5 * kSqrt3, 0.5;
    return m;
}

double trace_form(const Mat2& X, const Mat2& Y) { return (X * Y).trace(); }

Mat2 exp_sl2(const Mat2& X, double t) {
    // X traceless, X^2 = -det(X) I, so exp(tX) = c(t) I + s(t) X with
    // c, s the matched trig/hyperbolic pair for d = det(X).
    const double d = X.determinant();
    double c, s;
    if (std::abs(d) * t * t < 1e-8) {
        // series, stable through d = 0
        const double q = d * t * t;
        c = 1.0 - q / 2.0 + q * q / 24.0;
        s = t * (1.0 - q / 6.0 + q * q / 120.0);
    } else if (d > 0) {
        const double w = std::sqrt(d);
        c = std::cos(w * t);
        s = std::sin(w * t) / w;
    } else {
        const double w = std::sqrt(-d);
        c = std::cosh(w * t);
        s = std::sinh(w * t) / w;
    }
    return c * Mat2::Identity() + s * X;
}

Mat2 exp_sl2(const Sl2Element& X, double t) { return exp_sl2(X.mat(), t); }

Mat2 phi(const HalfPlanePoint& z) {
    Mat2 m;
    m << z.x / z.y, -(z.x * z.x + z.y * z.y) / z.y, 1.0 / z.y, -z.x / z.y;
    return m;
}

HalfPlanePoint phi_inv(const Mat2& X) {
    if (!(X(1, 0) > 0))
        throw ConventionViolation("phi_inv: lower-left entry must be positive");
    return HalfPlanePoint(X(0, 0) / X(1, 0), 1.0 / X(1, 0));
}

std::array<double, 3> rho(const Mat2& X) {
    const double a = X(0, 0), b = X(0, 1), c = X(1, 0);
    return {(c + kSqrt3 * a) / kSqrt3, (c - kSqrt3 * a) / kSqrt3,
            -(3.0 * b + c) / (2.0 * kSqrt3)};
}

Mat2 control_matrix(double u0, double u1, double u2) {
    Mat2 m;
    m << (u1 - u2) / kSqrt3, (u0 - 2.0 * u1 - 2.0 * u2) / 3.0, u0,
        (u2 - u1) / kSqrt3;
    return m;
}

Mat2 control_matrix(const ControlVector& u) {
    return control_matrix(u.u0, u.u1, u.u2);
}

Mat2c cayley(const Mat2& X) {
    using C = std::complex<double>;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Mat2c A, Ainv;
    A << C(inv_sqrt2, 0), C(0, inv_sqrt2), C(0, inv_sqrt2), C(inv_sqrt2, 0);
    Ainv << C(inv_sqrt2, 0), C(0, -inv_sqrt2), C(0, -inv_sqrt2), C(inv_sqrt2, 0);
    return Ainv * X.cast<C>() * A;
}

HalfPlanePoint mobius(const Mat2& g, const HalfPlanePoint& z) {
    const std::complex<double> w =
        (g(0, 0) * z.z() + g(0, 1)) / (g(1, 0) * z.z() + g(1, 1));
    return HalfPlanePoint(w.real(), w.imag());
}

bool star_domain_test(const HalfPlanePoint& z) {
    return z.x > -1.0 / kSqrt3 && z.x < 1.0 / kSqrt3 &&
           z.x * z.x + z.y * z.y > 1.0 / 3.0;
}

bool truncated_star_test(const HalfPlanePoint& z) {
    if (!star_domain_test(z)) return false;
    if (z.y > 4.5) return false;
    const double r_h = 4.0 / 27.0;
    for (double sx : {-1.0, 1.0}) {
        const double dx = z.x - sx / kSqrt3, dy = z.y - r_h;
        if (dx * dx + dy * dy < r_h * r_h) return false;
    }
    // the three rotated cusp half-planes, tested via pullback by R^-i
    const Mat2 Rinv = rot_R().transpose();
    HalfPlanePoint w = z;
    for (int i = 0; i < 3; ++i) {
        if (w.y > 15.0 * (1.0 / kSqrt3 - w.x)) return false;
        w = mobius(Rinv, w);
    }
    return true;
}

}  // namespace reinhardt
