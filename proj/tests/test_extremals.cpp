#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.h"
#include "reinhardt/extremals.h"

using namespace reinhardt;

TEST_CASE("octagon parameters") {
    const auto p = solve_polygon(1);
    CHECK(p.y0 == doctest::Approx(oracle::octagon_y0()).epsilon(1e-13));
    CHECK(p.t_sw == doctest::Approx(oracle::octagon_tsw()).epsilon(1e-13));
    CHECK(p.area == doctest::Approx(oracle::octagon_area()).epsilon(1e-10));
    CHECK(p.density == doctest::Approx(oracle::octagon_density()).epsilon(1e-10));
    CHECK(p.extremal);
    CHECK_NOTHROW(p.check());
    CHECK_THROWS_AS(solve_polygon(0), std::domain_error);
}

TEST_CASE("plus family densities increase to the circle") {
    double prev = 0;
    const double limit = M_PI / std::sqrt(12.0);
    for (int k = 1; k <= 10; ++k) {
        const auto p = solve_polygon(k);
        CHECK_NOTHROW(p.check());
        CHECK(p.density > prev);
        CHECK(p.density < limit);
        prev = p.density;
    }
    const auto big = solve_polygon(100);
    CHECK(std::abs(big.density - limit) < 1e-3);
}

TEST_CASE("minus family sits above the circle and is not extremal") {
    CHECK_THROWS_AS(solve_polygon(1, PolygonFamily::Minus), std::domain_error);
    double prev = 1e9;
    for (int k = 2; k <= 10; ++k) {
        const auto p = solve_polygon(k, PolygonFamily::Minus);
        CHECK_NOTHROW(p.check());
        CHECK(p.y0 > 1.0);
        CHECK(p.t_sw < 0.0);
        CHECK_FALSE(p.extremal);
        CHECK(p.area > M_PI);
        CHECK(p.area < prev);
        prev = p.area;
    }
}

TEST_CASE("costate initialization") {
    CHECK_THROWS_AS(costate_init(0.5), std::domain_error);
    CHECK_THROWS_AS(costate_init(1.05), std::domain_error);

    double prev_d = -1;
    for (double y0 = 0.60; y0 < 0.995; y0 += 0.02) {
        const auto c = costate_init(y0);
        const double y2 = y0 * y0;
        const double ell = std::log(4.0 / (3 * y2 + 1));
        const double d_closed =
            (-1 + 2 * y2 + 3 * y2 * y2) *
            std::pow(3 + 6 * y2 - (1 + 3 * y2) * ell, 2) /
            (144 * std::pow(y0, 8));
        CHECK(c.d == doctest::Approx(d_closed).epsilon(1e-10));
        CHECK(c.d > 0);
        CHECK(c.d < 2.25);
        CHECK(c.d > prev_d);
        prev_d = c.d;

        // transversality of the rotational costate to the tangent direction
        const Mat2 X0 = phi(HalfPlanePoint(0.0, y0));
        CHECK(std::abs(trace_form(X0, c.LambdaR)) < 1e-12);
    }
}

TEST_CASE("rotational costate is conjugated by R over one arc") {
    const auto p = solve_polygon(1);
    const auto c = costate_init(p.y0);
    CostatePair c0{c.Lambda1, c.LambdaR};
    const auto out = costate_const_flow(c0, HalfPlanePoint(0.0, p.y0),
                                        ControlVector::vertex(2), -1.0, p.t_sw);
    const Mat2 R = rot_R();
    const Mat2 expect = R.transpose() * c.LambdaR * R;
    CHECK((out.LambdaR - expect).cwiseAbs().maxCoeff() < 1e-7);
    CHECK(out.Lambda1.determinant() == doctest::Approx(c.d).epsilon(1e-9));
}

TEST_CASE("switching certificate") {
    const auto rep = switching_certificate(400);
    CHECK(rep.nonnegative);
    CHECK(rep.min_value >= -1e-9);
    CHECK(rep.max_diag_abs < 1e-10);
    // interior sample is strictly positive
    CHECK(certificate_function(2.5, 3.5) > 0);
}

TEST_CASE("polygon boundary geometry") {
    for (int k : {1, 2, 3}) {
        const auto p = solve_polygon(k);
        const auto pts = polygon_boundary(p, 48);
        CHECK(std::abs(pts.front() - pts.back()) < 1e-8);

        // winding number about the origin
        double total = 0;
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            double d = std::arg(pts[i + 1]) - std::arg(pts[i]);
            if (d > M_PI) d -= 2 * M_PI;
            if (d < -M_PI) d += 2 * M_PI;
            total += d;
        }
        CHECK(total / (2 * M_PI) == doctest::Approx(1.0).epsilon(1e-8));

        // convexity: consecutive edges never turn clockwise
        for (size_t i = 0; i + 2 < pts.size(); ++i) {
            const auto e1 = pts[i + 1] - pts[i];
            const auto e2 = pts[i + 2] - pts[i + 1];
            const double cross =
                e1.real() * e2.imag() - e1.imag() * e2.real();
            CHECK(cross >= -1e-9);
        }

        // shoelace area equals the cost-accumulated area
        double sh = 0;
        for (size_t i = 0; i + 1 < pts.size(); ++i)
            sh += pts[i].real() * pts[i + 1].imag() -
                  pts[i + 1].real() * pts[i].imag();
        CHECK(0.5 * sh == doctest::Approx(p.area).epsilon(1e-4));
    }
}

TEST_CASE("area through the cost one-form") {
    const auto p = solve_polygon(1);
    CHECK(kuperberg_area(p) == doctest::Approx(p.area).epsilon(1e-9));
    const auto p2 = solve_polygon(2);
    CHECK(kuperberg_area(p2) == doctest::Approx(p2.area).epsilon(1e-9));
}

TEST_CASE("hypotrochoid multicurve identities") {
    const double r = 1.3, r0 = 0.4;
    const int n = 7;
    for (double t = 0; t < 3.0; t += 0.37) {
        const auto s0 = hypotrochoid_multicurve(r, r0, n, 0, t);
        const auto s1 = hypotrochoid_multicurve(r, r0, n, 1, t);
        const auto s2 = hypotrochoid_multicurve(r, r0, n, 2, t);
        CHECK(std::abs(s0 + s1 + s2) < 1e-12);

        const double det = s0.real() * s1.imag() - s0.imag() * s1.real();
        const auto s0b = hypotrochoid_multicurve(r, r0, n, 0, 0.0);
        const auto s1b = hypotrochoid_multicurve(r, r0, n, 1, 0.0);
        const double det0 = s0b.real() * s1b.imag() - s0b.imag() * s1b.real();
        CHECK(det == doctest::Approx(det0).epsilon(1e-12));

        // block shift by one third of the period
        const auto shifted =
            hypotrochoid_multicurve(r, r0, n, 0, t + 2 * M_PI * n / 3.0);
        CHECK(std::abs(shifted - s1) < 1e-10);
    }
}
