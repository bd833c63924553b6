#include "reinhardt/geometry.h"

#include <cmath>

namespace reinhardt {

namespace {
const double kSqrt3 = std::sqrt(3.0);

std::complex<double> apply(const Mat2& m, const std::complex<double>& v) {
    return {m(0, 0) * v.real() + m(0, 1) * v.imag(),
            m(1, 0) * v.real() + m(1, 1) * v.imag()};
}
}  // namespace

Hexagon::Hexagon(const std::array<std::complex<double>, 6>& v, double tol)
    : vertices(v) {
    for (int j = 0; j < 3; ++j)
        if (std::abs(vertices[j] + vertices[j + 3]) > tol)
            throw ConventionViolation("Hexagon: not centrally symmetric");
}

std::complex<double> Hexagon::edge_midpoint(int j) const {
    j = ((j % 6) + 6) % 6;
    return 0.5 * (vertices[j] + vertices[(j + 1) % 6]);
}

double Hexagon::area() const {
    double s = 0;
    for (int j = 0; j < 6; ++j) {
        const auto& p = vertices[j];
        const auto& q = vertices[(j + 1) % 6];
        s += p.real() * q.imag() - q.real() * p.imag();
    }
    return 0.5 * s;
}

Hexagon hexagon_from_point(const HalfPlanePoint& z) {
    if (!star_domain_test(z))
        throw StarViolation("hexagon_from_point: z outside the star domain");
    const Mat2 X = phi(z);
    const auto r = rho(X);
    const double d = X.determinant();
    std::array<std::complex<double>, 6> v;
    for (int j = 0; j < 6; ++j) {
        const std::complex<double> s =
            std::polar(1.0, M_PI * static_cast<double>(j) / 3.0);
        v[j] = s + (r[(j + 2) % 3] / d) * apply(X, s);
    }
    return Hexagon(v);
}

DensityReport density_report(const HalfPlanePoint& z) {
    if (!star_domain_test(z))
        throw StarViolation("density_report: z outside the star domain");
    const auto r = rho(phi(z));
    DensityReport rep{};
    rep.T = {kSqrt3 / 4 * r[0] * r[2], kSqrt3 / 4 * r[0] * r[1],
             kSqrt3 / 4 * r[1] * r[2]};
    rep.T_ext = {kSqrt3 * r[1] * r[1], kSqrt3 * r[2] * r[2],
                 kSqrt3 * r[0] * r[0]};
    double corner_sum = 0;
    for (int i = 0; i < 3; ++i) {
        rep.indicator[i] = rep.T[i] >= rep.T_ext[i];
        rep.corner[i] =
            rep.indicator[i] ? rep.T[i] - std::sqrt(rep.T_ext[i] * rep.T[i]) : 0.0;
        corner_sum += rep.corner[i];
    }
    rep.delta = 0.75 + corner_sum / kSqrt3;
    return rep;
}

bool exclusion_test(const HalfPlanePoint& z) { return truncated_star_test(z); }

}  // namespace reinhardt
