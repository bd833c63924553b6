#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.h"
#include "reinhardt/blowup.h"
#include "reinhardt/ode.h"

using namespace reinhardt;

namespace {

BlowupChart random_chart(std::mt19937_64& g, double rmax = 0.1) {
    std::uniform_real_distribution<double> u(0, 1);
    BlowupChart bc;
    bc.r = 0.01 + (rmax - 0.01) * u(g);
    bc.xt21 = -3.0 + 4.0 * u(g);
    bc.lt11 = -6.0 + 8.0 * u(g);
    bc.lt21 = -3.0 + 4.0 * u(g);
    return bc;
}

double chart_dist(const BlowupChart& a, const BlowupChart& b) {
    return std::abs(a.r - b.r) + std::abs(a.xt21 - b.xt21) +
           std::abs(a.lt11 - b.lt11) + std::abs(a.lt21 - b.lt21);
}

double fuller_dist(const FullerState& a, const FullerState& b) {
    return std::abs(a.z1 - b.z1) + std::abs(a.z2 - b.z2) +
           std::abs(a.z3 - b.z3);
}

Vec pack_triple(const CostateTriple& q) {
    return {q.X(0, 0),       q.X(0, 1),       q.X(1, 0),
            q.Lambda1(0, 0), q.Lambda1(0, 1), q.Lambda1(1, 0),
            q.LambdaR(0, 0), q.LambdaR(0, 1), q.LambdaR(1, 0)};
}

CostateTriple unpack_triple(const Vec& y) {
    CostateTriple q;
    q.X << y[0], y[1], y[2], -y[0];
    q.Lambda1 << y[3], y[4], y[5], -y[3];
    q.LambdaR << y[6], y[7], y[8], -y[6];
    q.lambda_cost = -1;
    return q;
}

}  // namespace

TEST_CASE("chart reconstructs a consistent extremal state") {
    auto g = oracle::rng(51);
    for (int n = 0; n < 50; ++n) {
        const BlowupChart bc = random_chart(g);
        CostateTriple q;
        try {
            q = chart_to_state(bc);
        } catch (const ConventionViolation&) {
            continue;  // sampled outside the chart domain
        }
        CHECK(std::abs(q.X.determinant() - 1.0) < 1e-12);
        CHECK(std::abs(q.X.trace()) < 1e-14);
        CHECK(std::abs(q.Lambda1.determinant() - 2.25) < 1e-12);
        CHECK(std::abs(trace_form(q.X, q.LambdaR)) < 1e-12);
        // the defining linear constraints: vanishing Hamiltonian on the
        // active control and vanishing wall switching function
        CHECK(std::abs(hamiltonian(q, ControlVector::vertex(1))) < 1e-12);
        CHECK(std::abs(switching_value(q, 1, 2)) < 1e-12);
        // round trip
        CHECK(chart_dist(state_to_chart(q), bc) < 1e-10);
    }
}

TEST_CASE("chart degenerates to the singular locus at r = 0") {
    const BlowupChart fp = blowup_fixed_point();
    for (double r : {1e-2, 1e-4, 0.0}) {
        BlowupChart bc = fp;
        bc.r = r;
        const CostateTriple q = chart_to_state(bc);
        CHECK((q.X - rot_J()).norm() <= 4 * r);
        CHECK((q.Lambda1 + 1.5 * rot_J()).norm() <= 30 * r * r);
        CHECK(q.LambdaR.norm() <= 30 * r * r * r);
    }
}

TEST_CASE("rotational costate entry orders") {
    // diagonal O(r^4), off-diagonal O(r^3): slope fit over a decade
    const BlowupChart fp = blowup_fixed_point();
    double diag[2], offd[2];
    const double rs[2] = {1e-2, 1e-3};
    for (int i = 0; i < 2; ++i) {
        BlowupChart bc = fp;
        bc.r = rs[i];
        const CostateTriple q = chart_to_state(bc);
        diag[i] = std::abs(q.LambdaR(0, 0));
        offd[i] = std::abs(q.LambdaR(0, 1));
    }
    CHECK(std::log10(diag[0] / diag[1]) == doctest::Approx(4.0).epsilon(0.05));
    CHECK(std::log10(offd[0] / offd[1]) == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("exceptional-divisor limit hits the outward fixed point") {
    const BlowupChart fp = blowup_fixed_point();
    CHECK(fp.xt21 == doctest::Approx(-2.39).epsilon(2e-3));
    CHECK(fp.lt11 == doctest::Approx(-4.90).epsilon(2e-3));
    CHECK(fp.lt21 == doctest::Approx(-1.12).epsilon(7e-3));

    // the limit state equals q_out rescaled to the chart normalization
    FullerState q = q_out_state();
    q = virial(q, 0.0, 1.0 / (2.0 * q.z1.imag()));
    CHECK(fuller_dist(fuller_limit(fp), q) < 1e-12);

    // the linear constraints force both triangle Hamiltonians to vanish
    auto g = oracle::rng(52);
    for (int n = 0; n < 20; ++n) {
        BlowupChart bc = random_chart(g);
        bc.r = 0;
        const FullerState z = fuller_limit(bc);
        for (int k : {1, 2}) {
            const double hf = -std::imag(z.z2 * std::conj(z.z1)) +
                              std::real(std::conj(z.z3) * cube_root_control(k));
            CHECK(std::abs(hf) < 1e-12);
        }
    }
}

TEST_CASE("Hamiltonian and switching asymptotics in r") {
    const BlowupChart fp = blowup_fixed_point();
    BlowupChart base = fp;
    base.xt21 += 0.3;
    base.lt11 -= 0.5;
    base.lt21 += 0.2;
    const FullerState z = fuller_limit(base);
    const Cx zeta(-0.5, std::sqrt(3.0) / 2.0);

    // H(Z_100) = 24 r^3 H_F(1, z) + O(r^4)
    const double hf =
        -std::imag(z.z2 * std::conj(z.z1)) + std::real(z.z3);
    double resid[2];
    const double rs[2] = {1e-2, 1e-3};
    for (int i = 0; i < 2; ++i) {
        BlowupChart bc = base;
        bc.r = rs[i];
        const double h = hamiltonian(chart_to_state(bc),
                                     ControlVector::vertex(0));
        resid[i] = std::abs(h - 24.0 * std::pow(rs[i], 3) * hf);
    }
    CHECK(std::log10(resid[0] / resid[1]) ==
          doctest::Approx(4.0).epsilon(0.05));

    // chi_21 = 24 r^3 Re<z3, zeta - 1> + O(r^4) at the segment start
    const double chif = std::real(std::conj(zeta - Cx(1, 0)) * z.z3);
    for (double r : {1e-3, 1e-4}) {
        BlowupChart bc = base;
        bc.r = r;
        const double chi = switching_value(chart_to_state(bc), 1, 0);
        CHECK(chi / (24.0 * r * r * r * chif) ==
              doctest::Approx(1.0).epsilon(0.01));
    }
}

TEST_CASE("local return map fixes the blowup point") {
    const BlowupChart fp = blowup_fixed_point();
    const LocalStep st = local_poincare(fp);
    CHECK(chart_dist(st.chart, fp) < 1e-8);
    CHECK(st.s_sw == doctest::Approx(8.84).epsilon(1e-2 / 8.84));
    CHECK(st.cyclic);
}

TEST_CASE("radial multiplier and hyperbolic spectrum") {
    const BlowupChart fp = blowup_fixed_point();
    const double h = 1e-6;
    auto map = [](BlowupChart c) { return local_poincare(c).chart; };

    Eigen::Matrix4d Jm;
    for (int col = 0; col < 4; ++col) {
        BlowupChart p = fp, m = fp;
        double* cp[4] = {&p.r, &p.xt21, &p.lt11, &p.lt21};
        double* cm[4] = {&m.r, &m.xt21, &m.lt11, &m.lt21};
        *cp[col] += h;
        *cm[col] -= h;
        const BlowupChart a = map(p), b = map(m);
        Jm(0, col) = (a.r - b.r) / (2 * h);
        Jm(1, col) = (a.xt21 - b.xt21) / (2 * h);
        Jm(2, col) = (a.lt11 - b.lt11) / (2 * h);
        Jm(3, col) = (a.lt21 - b.lt21) / (2 * h);
    }
    const Eigen::EigenSolver<Eigen::Matrix4d> es(Jm);
    int expanding = 0, contracting = 0;
    for (int i = 0; i < 4; ++i) {
        const double mod = std::abs(es.eigenvalues()(i));
        if (mod > 1) {
            ++expanding;
            CHECK(mod == doctest::Approx(oracle::r_scale()).epsilon(1e-2 / 6.27));
        } else {
            ++contracting;
            CHECK(mod < 0.1);
        }
    }
    CHECK(expanding == 1);
    CHECK(contracting == 3);
}

TEST_CASE("restriction to r = 0 is the Fuller return map") {
    const BlowupChart fp = blowup_fixed_point();
    double worst = 0;
    for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j)
            for (int k = -2; k <= 2; ++k) {
                const BlowupChart c{0, fp.xt21 + 0.05 * i, fp.lt11 + 0.05 * j,
                                    fp.lt21 + 0.05 * k};
                const FullerState a = fuller_limit(local_poincare(c).chart);
                FullerState f = fuller_poincare(fuller_limit(c));
                f = to_wall_representative(f);
                f = virial(f, 0.0, 1.0 / (2.0 * f.z1.imag()));
                worst = std::max(worst, fuller_dist(a, f));
            }
    CHECK(worst < 1e-8);
}

TEST_CASE("rescaled map matches unscaled integration at r > 0") {
    auto g = oracle::rng(53);
    const BlowupChart fp = blowup_fixed_point();
    std::uniform_real_distribution<double> u(-0.05, 0.05);
    for (int n = 0; n < 5; ++n) {
        const BlowupChart bc{0.01 + 0.01 * n, fp.xt21 + u(g), fp.lt11 + u(g),
                             fp.lt21 + u(g)};
        const CostateTriple q0 = chart_to_state(bc);
        const LocalStep lp = local_poincare(bc);

        OdeOptions o;
        o.abs_tol = o.rel_tol = 1e-12;
        o.event_time_tol = 1e-13;
        const EventFn ev = [&](double, const Vec& y) {
            return switching_value(unpack_triple(y), 1, 0);
        };
        const OdeResult res = integrate(
            [&](double, const Vec& y, Vec& dy) {
                dy = pack_triple(rhs(unpack_triple(y),
                                     ControlVector::vertex(1)));
            },
            0, pack_triple(q0), 5.0, o, {ev});
        REQUIRE(res.event_hit);
        CHECK(std::abs(res.t - bc.r * lp.s_sw) < 1e-9);

        const CostateTriple qe = unpack_triple(res.y);
        const Mat2 R = rot_R();
        const CostateTriple ql = chart_to_state(lp.chart);
        CHECK((ql.X - R.transpose() * qe.X * R).norm() < 1e-9);
        CHECK((ql.Lambda1 - R.transpose() * qe.Lambda1 * R).norm() < 1e-9);
        // LambdaR of the image chart is rebuilt from the linear system, so
        // agreement here shows the constraints are transported by the flow
        CHECK((ql.LambdaR - R.transpose() * qe.LambdaR * R).norm() < 1e-9);
    }
}

TEST_CASE("map extends smoothly across r = 0") {
    const BlowupChart fp = blowup_fixed_point();
    auto map = [&](double r) {
        BlowupChart c = fp;
        c.r = r;
        return local_poincare(c).chart;
    };
    const double h = 1e-4;
    const BlowupChart a = map(h), b = map(0.0), c = map(-h);
    // one-sided differences agree: the extension is differentiable
    const double d1 = (a.xt21 - b.xt21) / h, d2 = (b.xt21 - c.xt21) / h;
    CHECK(std::abs(d1 - d2) < 1e-2);
    CHECK(chart_dist(a, b) < 200 * h);
    CHECK(chart_dist(c, b) < 200 * h);
    CHECK(map(-1e-3).r == doctest::Approx(-1e-3 * oracle::r_scale())
                              .epsilon(0.02));
}

TEST_CASE("unstable curve reaches the star boundary") {
    const UnstableCurveResult uc = unstable_curve(0.25, 5e-4);
    REQUIRE(uc.points.size() > 400);
    CHECK(uc.cyclic);
    CHECK(uc.boundary_r == doctest::Approx(0.21).epsilon(0.02 / 0.21));
    CHECK(uc.points.back().xt21 == doctest::Approx(-3.03).epsilon(0.02 / 3.03));
    CHECK(uc.exit_onset_r == doctest::Approx(0.065).epsilon(0.01 / 0.065));
    // monotone parameterization by r at the requested spacing
    for (std::size_t i = 1; i < uc.points.size(); ++i) {
        CHECK(uc.points[i].r > uc.points[i - 1].r);
        CHECK(std::abs(uc.points[i].r - uc.points[i - 1].r - 5e-4) < 1e-9);
    }
}

TEST_CASE("no return to the exceptional divisor") {
    // r strictly grows along forward iterates until the trajectory leaves
    // the star domain
    const BlowupChart fp = blowup_fixed_point();
    for (double r0 : {1e-3, 3e-3, 1e-2}) {
        BlowupChart c = fp;
        c.r = r0;
        bool exited = false;
        for (int it = 0; it < 50 && !exited; ++it) {
            try {
                const BlowupChart next = local_poincare(c).chart;
                CHECK(next.r > c.r);
                CHECK(next.r > 1e-3);
                c = next;
            } catch (const StarViolation&) {
                exited = true;
            }
        }
        CHECK(exited);
    }
}
