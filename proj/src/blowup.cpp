#include "reinhardt/blowup.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "reinhardt/ode.h"

namespace reinhardt {

namespace {

Mat2 commutator(const Mat2& A, const Mat2& B) { return A * B - B * A; }

// trace pairing of [[a,b],[c,-a]] against M, as a row over (a, b, c)
struct Row {
    double a, b, c;
};
Row pair_row(const Mat2& M) {
    return {M(0, 0) - M(1, 1), M(1, 0), M(0, 1)};
}

Mat2 sl2_of(double a, double b, double c) {
    Mat2 m;
    m << a, b, c, -a;
    return m;
}

// X in matrix form; det = 1, trace = 0 exactly
Mat2 chart_X(double r, double xt21) {
    const double den = 1.0 + r * xt21;
    if (std::abs(den) < 1e-12)
        throw ConventionViolation("blowup chart: 1 + r x~21 vanished");
    Mat2 X;
    X << r, -(1.0 + r * r) / den, den, -r;
    return X;
}

// x~12 from det X = 1
double chart_xt12(double r, double xt21) {
    return (xt21 - r) / (1.0 + r * xt21);
}

// l~12 from det Lambda1 = 9/4
double chart_lt12(double r, double lt11, double lt21) {
    const double den = 1.5 - r * r * lt21;
    if (den <= 0)
        throw ConventionViolation("blowup chart: l~21 r^2 >= 3/2");
    return (1.5 * lt21 + r * r * lt11 * lt11) / den;
}

// (l~12 - l~21) / r, analytic through r = 0
double chart_lt_skew(double r, double lt11, double lt21) {
    const double den = 1.5 - r * r * lt21;
    return r * (lt11 * lt11 + lt21 * lt21) / den;
}

struct TildeState {
    Mat2 Xt, L1t, LRt;
};

Mat2 solve_lambda_r_tilde(double r, const Mat2& Xt, const Mat2& L1t,
                          double skew_over_r) {
    const Mat2 J = rot_J();
    const Mat2 X = J + r * Xt;
    const Mat2 Z1 = control_matrix(ControlVector::vertex(1));
    const Mat2 Z0 = control_matrix(ControlVector::vertex(0));
    const Mat2 Z2 = control_matrix(ControlVector::vertex(2));
    const double p1 = trace_form(X, Z1), p2 = trace_form(X, Z2);
    if (std::abs(p1) < 1e-12 || std::abs(p2) < 1e-12)
        throw RankDeficiency("lambda_r_tilde: control pairing vanished");

    // rows: <X, LR~> = 0; <LR~, Z1> = <X, Z1> tr((L1 + 3J/2) X)/r^3;
    // chi_23 = <LR~, P2 - P1> = 0
    const Row r1 = pair_row(X);
    const Row r2 = pair_row(Z1);
    const Row r3 = pair_row(Z2 / p2 - Z1 / p1);
    // tr((Lambda1 + 1.5 J) X) / r^3 = (l~12 - l~21)/r + tr(L~1 X~)
    const double rhs2 =
        p1 * (skew_over_r + trace_form(L1t, Xt));

    Eigen::Matrix3d M;
    M << r1.a, r1.b, r1.c, r2.a, r2.b, r2.c, r3.a, r3.b, r3.c;
    Eigen::Vector3d rhs(0.0, rhs2, 0.0);
    const Eigen::FullPivLU<Eigen::Matrix3d> lu(M);
    if (lu.rcond() < 1e-10)
        throw RankDeficiency("lambda_r_tilde: linear system degenerate");
    const Eigen::Vector3d sol = lu.solve(rhs);
    return sl2_of(sol(0), sol(1), sol(2));
}

TildeState tilde_state(const BlowupChart& bc) {
    TildeState ts;
    ts.Xt = sl2_of(1.0, chart_xt12(bc.r, bc.xt21), bc.xt21);
    ts.L1t = sl2_of(bc.lt11, chart_lt12(bc.r, bc.lt11, bc.lt21), bc.lt21);
    ts.LRt = solve_lambda_r_tilde(bc.r, ts.Xt, ts.L1t,
                                  chart_lt_skew(bc.r, bc.lt11, bc.lt21));
    return ts;
}

Vec pack(const TildeState& ts) {
    return {ts.Xt(0, 0),  ts.Xt(0, 1),  ts.Xt(1, 0),
            ts.L1t(0, 0), ts.L1t(0, 1), ts.L1t(1, 0),
            ts.LRt(0, 0), ts.LRt(0, 1), ts.LRt(1, 0)};
}

TildeState unpack(const Vec& y) {
    return {sl2_of(y[0], y[1], y[2]), sl2_of(y[3], y[4], y[5]),
            sl2_of(y[6], y[7], y[8])};
}

// rescaled-time right-hand side with constant control Z_010; polynomial in
// r, so it integrates natively on and across r = 0
void tilde_rhs(double r, const Vec& y, Vec& dy) {
    const TildeState ts = unpack(y);
    const Mat2 J = rot_J();
    const Mat2 X = J + r * ts.Xt;
    const Mat2 Z1 = control_matrix(ControlVector::vertex(1));
    const double p1 = trace_form(X, Z1);
    if (std::abs(p1) < 1e-12)
        throw StarViolation("blowup flow: <X, Z> vanished");
    const Mat2 P = Z1 / p1;
    const Mat2 dXt = commutator(P, X);
    const Mat2 dL1t = -1.5 * commutator(J, ts.Xt) +
                      r * commutator(ts.L1t, J) +
                      r * r * commutator(ts.L1t, ts.Xt);
    const Mat2 dLRt =
        -commutator(ts.L1t, J) +
        r * (commutator(P, ts.LRt) - trace_form(ts.LRt, P) * dXt -
             commutator(ts.L1t, ts.Xt));
    dy = {dXt(0, 0),  dXt(0, 1),  dXt(1, 0),  dL1t(0, 0), dL1t(0, 1),
          dL1t(1, 0), dLRt(0, 0), dLRt(0, 1), dLRt(1, 0)};
}

// scaled switching function toward vertex j, from the active vertex 1
double chi_tilde(double r, const TildeState& ts, int j) {
    const Mat2 X = rot_J() + r * ts.Xt;
    const Mat2 Z1 = control_matrix(ControlVector::vertex(1));
    const Mat2 Zj = control_matrix(ControlVector::vertex(j));
    const double p1 = trace_form(X, Z1), pj = trace_form(X, Zj);
    if (std::abs(pj) < 1e-12 || std::abs(p1) < 1e-12) return 1e6;
    return trace_form(ts.LRt, Zj / pj - Z1 / p1);
}

const double kMaxS = 40.0;

}  // namespace

Mat2 lambda_r_tilde(const BlowupChart& bc) { return tilde_state(bc).LRt; }

CostateTriple chart_to_state(const BlowupChart& bc) {
    const TildeState ts = tilde_state(bc);
    const Mat2 J = rot_J();
    CostateTriple q;
    q.X = J + bc.r * ts.Xt;
    q.Lambda1 = -1.5 * J + bc.r * bc.r * ts.L1t;
    q.LambdaR = bc.r * bc.r * bc.r * ts.LRt;
    q.lambda_cost = -1.0;
    return q;
}

BlowupChart state_to_chart(const CostateTriple& q) {
    const double r = q.X(0, 0);
    if (!(r > 0))
        throw ConventionViolation("state_to_chart: X(0,0) must be positive");
    BlowupChart bc;
    bc.r = r;
    bc.xt21 = (q.X(1, 0) - 1.0) / r;
    bc.lt11 = q.Lambda1(0, 0) / (r * r);
    bc.lt21 = (q.Lambda1(1, 0) + 1.5) / (r * r);
    return bc;
}

FullerState fuller_limit(const BlowupChart& bc) {
    BlowupChart at0 = bc;
    at0.r = 0;
    const Mat2 LRt = lambda_r_tilde(at0);
    FullerState z;
    z.z1 = Cx(bc.xt21, 1.0) / 2.0;
    z.z2 = Cx(bc.lt11, -bc.lt21) / 6.0;
    z.z3 = Cx((LRt(0, 1) + LRt(1, 0)) / 24.0, 0.0);
    return z;
}

BlowupChart blowup_fixed_point() {
    const FullerState q = q_out_state();
    const double x1 = q.z1.real(), y1 = q.z1.imag();
    const double x2 = q.z2.real(), y2 = q.z2.imag();
    BlowupChart bc;
    bc.r = 0;
    bc.xt21 = x1 / y1;
    bc.lt11 = 3.0 * x2 / (2.0 * y1 * y1);
    bc.lt21 = -3.0 * y2 / (2.0 * y1 * y1);
    return bc;
}

LocalStep local_poincare(const BlowupChart& bc) {
    const double r = bc.r;
    const TildeState ts0 = tilde_state(bc);

    OdeOptions opts;
    opts.abs_tol = opts.rel_tol = 1e-12;
    opts.max_step = 0.5;
    opts.event_time_tol = 1e-13;

    LocalStep out;
    double min_back = 0.0;
    bool past_start = false;
    auto observer = [&](double s, const Vec& y) {
        if (s > 1e-2) {
            const double back = chi_tilde(r, unpack(y), 2);
            if (!past_start || back < min_back) min_back = back;
            past_start = true;
        }
        return true;
    };
    const EventFn ev_switch = [&](double, const Vec& y) {
        return chi_tilde(r, unpack(y), 0);
    };
    // star-cone exit: some barycentric coordinate of X reaches zero.  The
    // switching function has a pole there, so the exit must preempt it.
    const EventFn ev_star = [&](double, const Vec& y) {
        const Mat2 X = rot_J() + r * unpack(y).Xt;
        const auto rh = rho(X);
        return *std::min_element(rh.begin(), rh.end());
    };
    const OdeResult res =
        integrate([&](double, const Vec& y, Vec& dy) { tilde_rhs(r, y, dy); },
                  0.0, pack(ts0), kMaxS, opts, {ev_switch, ev_star}, observer);
    if (res.event_hit && res.event_index == 1)
        throw StarViolation(
            "local_poincare: reached the star boundary before the switch");
    if (!res.event_hit)
        throw NoSwitch("local_poincare: no switching zero before s = 40");
    out.s_sw = res.t;
    out.cyclic = past_start && min_back > -1e-9;

    // rotate by the hexagonal symmetry and renormalize x~11 = 1
    const TildeState te = unpack(res.y);
    const Mat2 R = rot_R();
    const Mat2 Ri = R.transpose();
    const Mat2 Xr = Ri * te.Xt * R;
    const Mat2 L1r = Ri * te.L1t * R;
    const double scale = Xr(0, 0);
    if (!(scale > 0))
        throw ConventionViolation("local_poincare: nonpositive scale factor");
    out.chart.r = r * scale;
    out.chart.xt21 = Xr(1, 0) / scale;
    out.chart.lt11 = L1r(0, 0) / (scale * scale);
    out.chart.lt21 = L1r(1, 0) / (scale * scale);
    return out;
}

UnstableCurveResult unstable_curve(double max_r, double step) {
    UnstableCurveResult res;
    const BlowupChart fp = blowup_fixed_point();
    // multiplier of r at the fixed point, for the seed band
    const double mult = local_poincare({1e-8, fp.xt21, fp.lt11, fp.lt21})
                            .chart.r / 1e-8;

    const int n_seed =
        std::max(64, (int)std::lround(std::ceil(max_r / step)));
    std::vector<BlowupChart> raw;
    res.exit_onset_r = 0;
    for (int i = 0; i < n_seed; ++i) {
        BlowupChart c = fp;
        c.r = 1e-4 * std::pow(mult, (i + 0.5) / n_seed);
        raw.push_back(c);  // off the curve only by O(r)
        while (c.r < 1.25 * max_r) {
            LocalStep st;
            try {
                st = local_poincare(c);
            } catch (const StarViolation&) {
                // forward step undefined past here: the segment exits the
                // star domain before it can switch
                if (res.exit_onset_r == 0 || c.r < res.exit_onset_r)
                    res.exit_onset_r = c.r;
                break;
            } catch (const ReinhardtError&) {
                break;
            }
            if (!st.cyclic) res.cyclic = false;
            c = st.chart;
            raw.push_back(c);
        }
    }
    std::sort(raw.begin(), raw.end(),
              [](const BlowupChart& a, const BlowupChart& b) {
                  return a.r < b.r;
              });

    // resample at uniform r spacing and stop at the star boundary
    auto boundary_gap = [](const BlowupChart& c) {
        return c.xt21 - (std::sqrt(3.0) - 1.0 / c.r);
    };
    std::size_t j = 0;
    res.boundary_r = 0;
    for (double rk = step; rk <= max_r + 1e-15; rk += step) {
        while (j + 1 < raw.size() && raw[j + 1].r < rk) ++j;
        if (j + 1 >= raw.size() || raw[j].r > rk) break;
        const BlowupChart &a = raw[j], &b = raw[j + 1];
        const double w = (rk - a.r) / (b.r - a.r);
        BlowupChart c;
        c.r = rk;
        c.xt21 = a.xt21 + w * (b.xt21 - a.xt21);
        c.lt11 = a.lt11 + w * (b.lt11 - a.lt11);
        c.lt21 = a.lt21 + w * (b.lt21 - a.lt21);
        if (boundary_gap(c) <= 0) {
            // locate the crossing between the previous sample and this one
            if (!res.points.empty()) {
                const BlowupChart& p = res.points.back();
                const double g0 = boundary_gap(p), g1 = boundary_gap(c);
                res.boundary_r = p.r + (c.r - p.r) * g0 / (g0 - g1);
            } else {
                res.boundary_r = c.r;
            }
            res.points.push_back(c);
            break;
        }
        res.points.push_back(c);
    }
    if (res.boundary_r == 0 && !res.points.empty())
        res.boundary_r = res.points.back().r;
    return res;
}

}  // namespace reinhardt
