// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>

#include "oracles.h"
#include "reinhardt/blowup.h"
#include "reinhardt/extremals.h"
#include "reinhardt/fuller.h"
#include "reinhardt/geometry.h"
#include "reinhardt/hyperboloid.h"
#include "reinhardt/ode.h"
#include "reinhardt/pontryagin.h"

using namespace reinhardt;

namespace {

constexpr double kPi = 3.14159265358979323846;
int failures = 0;

void report(int n, bool ok, const char* what) {
    std::printf("criterion %2d: %s  %s\n", n, ok ? "PASS" : "FAIL", what);
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <typename F>
bool guarded(F f) {
    try {
        return f();
    } catch (const std::exception& e) {
        std::printf("  (unhandled: %s)\n", e.what());
        return false;
    }
}

double now_minus(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

CostateTriple octagon_state() {
    const auto p = solve_polygon(1);
    const auto c = costate_init(p.y0);
    CostateTriple q;
    q.X = phi(HalfPlanePoint(0.0, p.y0));
    q.Lambda1 = c.Lambda1;
    q.LambdaR = c.LambdaR;
    q.lambda_cost = -1.0;
    return q;
}

double fuller_dist(const FullerState& a, const FullerState& b) {
    return std::abs(a.z1 - b.z1) + std::abs(a.z2 - b.z2) +
           std::abs(a.z3 - b.z3);
}

// 1. octagon density by segment costs and by the contour-integral route,
// both against the closed form
bool crit1() {
    const auto t0 = std::chrono::steady_clock::now();
    const double closed = oracle::octagon_density();
    const PolygonParams p = solve_polygon(1);
    const double via_contour = kuperberg_area(p) / std::sqrt(12.0);
    return std::abs(p.density - closed) < 1e-9 &&
           std::abs(via_contour - closed) < 1e-9 && now_minus(t0) < 1.0;
}

// 2. circle: center trajectory under the barycentric control, cost pi
bool crit2() {
    const ControlVector center(1.0 / 3, 1.0 / 3, 1.0 / 3);
    const double cost =
        segment_cost(HalfPlanePoint(0.0, 1.0), center, kPi / 3.0);
    return std::abs(cost - kPi) < 1e-9;
}

// 3. octagon extremal: conservation, switching zeros, transversality,
// four-switch return
bool crit3() {
    const auto t0 = std::chrono::steady_clock::now();
    const CostateTriple q0 = octagon_state();
    const double H0 = hamiltonian(q0, ControlVector::vertex(2));
    bool ok = std::abs(H0) < 1e-8;
    ok = ok && std::abs(switching_value(q0, 1, 2)) < 1e-8;

    const auto one = integrate_extremal(q0, 2, 1e6, 1);
    ok = ok && std::abs(switching_value(one.q, 2, 0)) < 1e-8;
    const Mat2 R = rot_R();
    ok = ok && (one.q.LambdaR - R.transpose() * q0.LambdaR * R)
                       .cwiseAbs()
                       .maxCoeff() < 1e-7;

    const auto four = integrate_extremal(q0, 2, 4 * oracle::octagon_tsw() - 1e-9);
    const double H1 = hamiltonian(four.q, ControlVector::vertex(four.control));
    ok = ok && std::abs(H1 - H0) < 1e-7;

    CostateTriple q = q0;
    for (int i = 0; i < 4; ++i) q = poincare_step(q, 2, 1).q;
    ok = ok && (q.X - q0.X).cwiseAbs().maxCoeff() < 1e-7 &&
         (q.Lambda1 - q0.Lambda1).cwiseAbs().maxCoeff() < 1e-7 &&
         (q.LambdaR - q0.LambdaR).cwiseAbs().maxCoeff() < 1e-7;
    return ok && now_minus(t0) < 5.0;
}

// 4. 6k+2 densities increase toward pi/sqrt(12)
bool crit4() {
    const double bound = kPi / std::sqrt(12.0);
    double prev = 0;
    bool ok = true;
    for (int k = 1; k <= 10; ++k) {
        const double d = solve_polygon(k).density;
        ok = ok && d > prev && d < bound;
        prev = d;
    }
    return ok && std::abs(solve_polygon(100).density - bound) < 1e-3;
}

// 5. self-similar fixed point of the triangular Fuller map
bool crit5() {
    const double r = r_scale();
    bool ok = std::abs(r - oracle::r_scale()) < 1e-12;

    const double closed = 2.0 * (1 + r + r * r) / (std::sqrt(3.0) * (r + 1));
    ok = ok && std::abs(first_switch(q_out_state()).t_sw - closed) < 1e-12;

    FullerState q = to_wall_representative(q_out_state());
    q = virial(q, 0.0, 1.0 / phi_norm(q));
    ok = ok && fuller_dist(fuller_poincare_angular(q), q) < 1e-10;

    for (const auto& e : q_out_section_eigs()) ok = ok && std::abs(e) < 0.1;
    return ok;
}

// 6. circular Fuller: log-spiral solution property and base-space spectrum
bool crit6() {
    bool ok = true;
    const double h = 0.05;
    for (int i = 0; i < 50; ++i) {
        const double t = 0.1 + (10.0 - h - 0.1) * i / 49.0;
        const FullerState a = fuller_flow_circular(log_spiral(t), h, 1e-13);
        ok = ok && fuller_dist(a, log_spiral(t + h)) < 1e-10;
    }
    const auto [e1, e2] = base_jacobian_eigs();
    const Cx target(-std::sqrt(2.0), std::sqrt(3.0));
    ok = ok && std::abs(e1 - target) < 1e-6 && std::abs(e2 - std::conj(target)) < 1e-6;
    return ok;
}

// 7. conservation along the circular-control hyperboloid flow and the
// abnormal cubic
bool crit7() {
    auto g = oracle::rng(77);
    std::uniform_real_distribution<double> d(-1, 1);
    bool ok = true;
    int done = 0, tries = 0;
    while (done < 20 && tries++ < 500) {
        WBCState s;
        s.rho = 2.0;
        s.d1 = 1.5;
        s.eps = 1;
        s.lambda_cost = -1.0;
        const double T = 3.0;
        try {
            s.w = Cx(0.3 * d(g), 0.3 * d(g));
            s.b = Cx(0.6 * d(g), 0.6 * d(g));
            s.c = Cx(0.5 + 0.3 * d(g), 0.6 * d(g));
            const double H = wbc_hamiltonian(s), A = angular_momentum(s);
            const WBCState e = wbc_integrate(s, T, 1e-12);
            ok = ok && std::abs(wbc_hamiltonian(e) - H) / T < 1e-8 &&
                 std::abs(angular_momentum(e) - A) / T < 1e-8;
            ++done;
        } catch (const std::exception&) {
            // flow hit a domain boundary or singular approach; redraw
        }
    }
    ok = ok && done == 20;

    // abnormal branch: rescale c onto the H = 0 level, fit a cubic to the
    // costate square norm
    for (int n = 0; n < 5; ++n) {
        WBCState s;
        s.rho = 1.0;
        s.d1 = -1.5;
        s.eps = 1;
        s.lambda_cost = 0.0;
        s.w = Cx(0.3 * d(g), 0.3 * d(g));
        s.b = Cx(0.6 * d(g), 0.6 * d(g));
        s.c = Cx(0.5 + 0.3 * d(g), 0.6 * d(g));
        const double H = wbc_hamiltonian(s);
        const double c1 =
            2.0 * s.d1 *
            (re_pair(s.w, s.b) + bracket_norm(s.b, 1) * bracket_norm(s.w, 1));
        s.c *= -c1 / (H - c1);

        const int N = 80;
        const double h = 0.005;
        Eigen::MatrixXd M(N + 1, 4);
        Eigen::VectorXd v(N + 1);
        WBCState cur = s;
        for (int i = 0; i <= N; ++i) {
            double p = 1;
            for (int j = 0; j < 4; ++j) {
                M(i, j) = p;
                p *= i * h;
            }
            v(i) = abnormal_dR(cur);
            cur = wbc_integrate(cur, h, 1e-12);
        }
        const Eigen::VectorXd coef = M.colPivHouseholderQr().solve(v);
        ok = ok && (M * coef - v).cwiseAbs().maxCoeff() < 1e-7;
    }
    return ok;
}

// 8. cell geometry: fixed-point coordinates, transition table, basin
bool crit8() {
    const CellCoordinates cc = cell_coords(q_out_state());
    bool ok = std::abs(cc.r2 - 0.267949) < 1e-4 &&
              std::abs(cc.psi - 0.170594) < 1e-4 &&
              std::abs(cc.theta2 - 2.91574) < 1e-4;
    const BasinReport rep = basin_check(1000, 2026);
    ok = ok && rep.table_samples >= 7000 && rep.table_failures == 0 &&
         rep.boundary_failures == 0 && rep.orbits == 1000 &&
         rep.converged == 1000;
    return ok;
}

// 9. blowup: exceptional-divisor agreement, radial multiplier, rescaled
// switch, unstable-curve boundary
bool crit9() {
    const BlowupChart fp = blowup_fixed_point();
    double worst = 0;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j)
            for (int k = -1; k <= 1; ++k) {
                const BlowupChart c{0, fp.xt21 + 0.08 * i, fp.lt11 + 0.08 * j,
                                    fp.lt21 + 0.08 * k};
                const FullerState a = fuller_limit(local_poincare(c).chart);
                FullerState f = fuller_poincare(fuller_limit(c));
                f = to_wall_representative(f);
                f = virial(f, 0.0, 1.0 / (2.0 * f.z1.imag()));
                worst = std::max(worst, fuller_dist(a, f));
            }
    bool ok = worst < 1e-8;

    const LocalStep st = local_poincare(fp);
    ok = ok && std::abs(st.s_sw - 8.84) < 1e-2;
    const double h = 1e-6;
    BlowupChart pc = fp;
    pc.r = h;
    ok = ok && std::abs(local_poincare(pc).chart.r / h - 6.27) < 1e-2;

    const UnstableCurveResult uc = unstable_curve(0.25, 1e-3);
    ok = ok && !uc.points.empty() && std::abs(uc.boundary_r - 0.21) < 0.02 &&
         std::abs(uc.points.back().xt21 + 3.03) < 0.02;
    return ok;
}

// 10. compactified density and the triangle-area identity
bool crit10() {
    const DensityReport rep = density_report(HalfPlanePoint(0.0, 4.5));
    bool ok = std::abs(rep.delta - oracle::density_at_0_45()) < 1e-3 &&
              rep.delta > oracle::octagon_density();

    auto g = oracle::rng(10);
    std::uniform_real_distribution<double> dx(-1.0 / std::sqrt(3.0),
                                              1.0 / std::sqrt(3.0)),
        dy(0.0, 4.0);
    int done = 0;
    double worst = 0;
    while (done < 100000) {
        const double x = dx(g), y = dy(g);
        if (y <= 0 || !star_domain_test(HalfPlanePoint(x, std::max(y, 1e-9))))
            continue;
        try {
            const DensityReport r = density_report(HalfPlanePoint(x, y));
            worst = std::max(worst, std::abs(r.T[0] + r.T[1] + r.T[2] -
                                             std::sqrt(3.0) / 4.0));
            ++done;
        } catch (const StarViolation&) {
        }
    }
    return ok && worst < 1e-12;
}

// 11. closed-form constant-control flow against adaptive integration
bool crit11() {
    auto g = oracle::rng(11);
    std::uniform_real_distribution<double> dx(-0.3, 0.3), dy(0.8, 1.3),
        du(0.05, 1.0);
    double worst = 0;
    int done = 0;
    while (done < 100) {
        const HalfPlanePoint z0(dx(g), dy(g));
        const double a = du(g), b = du(g), c = du(g);
        const ControlVector u(a / (a + b + c), b / (a + b + c),
                              c / (a + b + c));
        try {
            OdeOptions o;
            o.abs_tol = o.rel_tol = 1e-12;
            double sup = 0;
            for (int i = 1; i <= 10; ++i) {
                const double t = 0.05 * i;
                const HalfPlanePoint ze = const_flow(z0, u, t);
                const OdeResult res = integrate(
                    [&](double, const Vec& y, Vec& dy) {
                        const auto f =
                            half_plane_field(HalfPlanePoint(y[0], y[1]), u);
                        dy = {f.first, f.second};
                    },
                    0, {z0.x, z0.y}, t, o);
                sup = std::max(sup, std::hypot(res.y[0] - ze.x,
                                               res.y[1] - ze.y));
            }
            worst = std::max(worst, sup);
            ++done;
        } catch (const ReinhardtError&) {
            // flow left the admissible region before t = 0.5; redraw
        }
    }
    return worst < 1e-8;
}

}  // namespace

int main() {
    report(1, guarded(crit1), "octagon density, both routes, < 1s");
    report(2, guarded(crit2), "circle cost pi over t_f = pi/3");
    report(3, guarded(crit3), "octagon extremal invariants and return, < 5s");
    report(4, guarded(crit4), "6k+2 densities increase toward pi/sqrt(12)");
    const bool c5 = guarded(crit5);
    report(5, c5, "triangular Fuller fixed point");
    report(6, guarded(crit6), "log spiral and base-space spectrum");
    report(7, guarded(crit7), "hyperboloid conservation and abnormal cubic");
    const bool c8 = guarded(crit8);
    report(8, c8, "cell coordinates, transition table, basin");
    const bool c9 = guarded(crit9);
    report(9, c9, "blowup agreement, multiplier, unstable curve");
    report(10, guarded(crit10), "compactified density and triangle areas");
    report(11, guarded(crit11), "constant-control flow oracle equivalence");
    // the classification theorem itself is not a single desk-checkable
    // number; its computational ingredients are criteria 5, 8, and 9
    report(12, c5 && c8 && c9, "classification ingredients (via 5, 8, 9)");
    return failures == 0 ? 0 : 1;
}
