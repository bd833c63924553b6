#include "reinhardt/extremals.h"

#include <cmath>
#include <algorithm>
#include <limits>
#include <stdexcept>

#include "reinhardt/ode.h"

namespace reinhardt {

namespace {
const double kSqrt3 = std::sqrt(3.0);

double theta_of(int k, PolygonFamily family) {
    const int denom = family == PolygonFamily::Plus ? 3 * k + 1 : 3 * k - 1;
    return M_PI * k / denom;
}

std::complex<double> apply(const Mat2& m, const std::complex<double>& v) {
    return {m(0, 0) * v.real() + m(0, 1) * v.imag(),
            m(1, 0) * v.real() + m(1, 1) * v.imag()};
}
}  // namespace

void PolygonParams::check(double tol) const {
    const double lhs = 4.0 / (3.0 * y0 * y0 + 1.0);
    const double rhs = 2.0 * std::cos(theta_of(k, family));
    if (std::abs(lhs - rhs) > tol)
        throw ConventionViolation("PolygonParams: height invariant violated");
}

PolygonParams solve_polygon(int k, PolygonFamily family) {
    if (family == PolygonFamily::Plus && k < 1)
        throw std::domain_error("solve_polygon: k must be >= 1");
    if (family == PolygonFamily::Minus && k < 2)
        throw std::domain_error(
            "solve_polygon: minus family needs k >= 2 (k = 1 degenerates)");
    PolygonParams p;
    p.k = k;
    p.family = family;
    const double c = std::cos(theta_of(k, family));
    p.y0 = std::sqrt((2.0 / c - 1.0) / 3.0);
    p.t_sw = std::log(4.0 / (3.0 * p.y0 * p.y0 + 1.0)) / (kSqrt3 * p.y0);
    const int nseg = family == PolygonFamily::Plus ? 3 * k + 1 : 3 * k - 1;
    const double arc = segment_cost(HalfPlanePoint(0.0, p.y0),
                                    ControlVector::vertex(2), p.t_sw);
    p.area = nseg * std::abs(arc);
    p.density = p.area / std::sqrt(12.0);
    p.extremal = family == PolygonFamily::Plus;
    return p;
}

ControlSchedule polygon_schedule(const PolygonParams& p) {
    if (p.family != PolygonFamily::Plus)
        throw std::domain_error("polygon_schedule: plus family only");
    ControlSchedule sch;
    sch.base = ControlVector::vertex(2);
    for (int i = 0; i <= 3 * p.k; ++i) sch.segments.push_back({-i, p.t_sw});
    return sch;
}

CostateInit costate_init(double y0) {
    if (!(y0 > 1.0 / kSqrt3 && y0 < 1.0))
        throw std::domain_error("costate_init: y0 must lie in (1/sqrt(3), 1)");
    const double y2 = y0 * y0, y4 = y2 * y2, y6 = y4 * y2;
    const double ell = std::log(4.0 / (3.0 * y2 + 1.0));

    const double lam1 =
        -((1 + 3 * y2) * (-3 - 6 * y2 + (1 + 3 * y2) * ell)) /
        (12 * kSqrt3 * y4);
    Mat2 base;
    base << 0, 4 * kSqrt3 * y4, -kSqrt3 * (1 + y2) * (3 * y2 - 1), 0;
    base /= 2 * y2 * (1 + 3 * y2);

    const double lamR =
        -(3 - 12 * y2 - 9 * y4 + 18 * y6 +
          (-1 + 3 * y2 + 21 * y4 + 9 * y6) * ell) /
        (24 * y6);
    Mat2 LR;
    LR << 0, y2, 1, 0;

    CostateInit out;
    out.Lambda1 = lam1 * base;
    out.LambdaR = lamR * LR;
    out.d = out.Lambda1.determinant();
    return out;
}

double certificate_function(double y, double r) {
    return 2 * r * (y - 1) * y * std::log(r) -
           (r - y) * (r * (y - 1) + y * (2 * y - 5) +
                      y * y * std::log(4.0 / y)) -
           2 * r * (y - 1) * y * std::log(y);
}

CertificateReport switching_certificate(int grid_n) {
    CertificateReport rep;
    rep.min_value = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid_n; ++i) {
        const double r = 2.0 + 2.0 * i / grid_n;
        for (int j = 0; j <= grid_n; ++j) {
            const double y = 2.0 + (r - 2.0) * j / grid_n;  // y <= r
            rep.min_value = std::min(rep.min_value, certificate_function(y, r));
        }
        rep.max_diag_abs =
            std::max(rep.max_diag_abs, std::abs(certificate_function(r, r)));
    }
    rep.nonnegative = rep.min_value >= -1e-9;
    return rep;
}

std::vector<std::complex<double>> polygon_boundary(const PolygonParams& p,
                                                   int samples_per_arc) {
    const auto sch = polygon_schedule(p);
    const HalfPlanePoint z0(0.0, p.y0);
    const auto tr =
        spline_trajectory(Mat2::Identity(), z0, sch, samples_per_arc);

    // g(t_f) permutes the sixth roots of unity by a rotation step m
    const Mat2 M = tr.back().g;
    const auto v = apply(M, {1.0, 0.0});
    const int m =
        ((static_cast<int>(std::lround(std::arg(v) / (M_PI / 3))) % 6) + 6) % 6;

    std::vector<std::complex<double>> pts;
    for (int b = 0; b < 6; ++b) {
        const auto s =
            std::polar(1.0, M_PI * static_cast<double>((m * b) % 6) / 3.0);
        for (size_t i = 0; i + 1 < tr.size(); ++i)
            pts.push_back(apply(tr[i].g, s));
        if (b == 5) pts.push_back(apply(tr.back().g, s));
    }
    return pts;
}

double kuperberg_area(const PolygonParams& p) {
    const auto sch = polygon_schedule(p);
    HalfPlanePoint z = HalfPlanePoint(0.0, p.y0);
    Mat2 g = Mat2::Identity();
    double contour = 0;
    const HalfPlanePoint base_pt(0.0, 1.0);  // the point i
    for (const auto& seg : sch.segments) {
        const auto u = rotate_control(sch.base, seg.k);
        const Mat2 g_start = g;
        const HalfPlanePoint z_start = z;
        auto integrand = [&](double t) {
            const Mat2 gt = const_group_flow(g_start, z_start, u, t);
            const Mat2 X = phi(const_flow(z_start, u, t));
            const Mat2 Y = gt * X * gt.inverse();
            const auto w = mobius(gt, base_pt).z();
            const std::complex<double> vel =
                Y(0, 1) + 2.0 * Y(0, 0) * w - Y(1, 0) * w * w;
            return vel.real() / w.imag();
        };
        contour += quad(integrand, 0.0, seg.dt, 1e-12);
        g = const_group_flow(g, z, u, seg.dt);
        z = const_flow(z, u, seg.dt);
    }
    return M_PI - 1.5 * contour;
}

std::complex<double> hypotrochoid_multicurve(double r, double r0, int n, int j,
                                             double t) {
    const std::complex<double> zeta = std::polar(1.0, 2.0 * M_PI / 3.0);
    return r * std::polar(1.0, t) * std::pow(zeta, j) +
           r0 * std::polar(1.0, -t / n) * std::pow(zeta, -j);
}

}  // namespace reinhardt
