#include "reinhardt/hyperboloid.h"

#include <cmath>

#include "reinhardt/errors.h"
#include "reinhardt/ode.h"

namespace reinhardt {

namespace {

const Cx kI(0.0, 1.0);

Mat2c cayley_matrix() {
    const double s = 1.0 / std::sqrt(2.0);
    Mat2c A;
    A << Cx(s, 0), Cx(0, s), Cx(0, s), Cx(s, 0);
    return A;
}

// inverse of the cayley() conjugation, with a reality check
Mat2 cayley_inv(const Mat2c& Y) {
    const Mat2c A = cayley_matrix();
    Mat2c Ainv;
    const double s = 1.0 / std::sqrt(2.0);
    Ainv << Cx(s, 0), Cx(0, -s), Cx(0, -s), Cx(s, 0);
    const Mat2c M = A * Y * Ainv;
    if (M.imag().cwiseAbs().maxCoeff() > 1e-9 * (1.0 + M.real().cwiseAbs().maxCoeff()))
        throw ConventionViolation("cayley_inv: matrix is not in su(1,1)");
    return M.real();
}

// coefficients of the control quadratic in the rotated variable
// wt = conj(c) w / |c|
struct QuadCoeffs {
    Cx a0, a1;
};

QuadCoeffs control_quadratic(const Cx& w, const Cx& c, double rho) {
    const Cx wt = std::conj(c) * w / std::abs(c);
    QuadCoeffs q;
    q.a0 = 2.0 + std::norm(wt) - wt * wt;
    q.a1 = 2.0 * rho * (wt - std::conj(wt)) * std::sqrt(1.0 + std::norm(wt));
    return q;
}

double mu_of(const WBCState& s, const Cx& z) {
    return bracket_norm(s.w, 1) - s.rho * re_pair(s.w, z);
}

}  // namespace

double bracket_norm(const Cx& z, int eps) {
    const double q = eps + std::norm(z);
    if (q < 0)
        throw ConventionViolation("bracket_norm: eps + |z|^2 is negative");
    return std::sqrt(q);
}

double re_pair(const Cx& z1, const Cx& z2) {
    return (std::conj(z1) * z2).real();
}

WBCState to_wbc(const Mat2& X, const Mat2& Lambda1, const Mat2& LambdaR,
                double rho, double lambda_cost) {
    WBCState s;
    s.rho = rho;
    s.lambda_cost = lambda_cost;

    const Mat2c CX = cayley(X);
    s.w = CX(0, 1);
    const double bw = -CX(0, 0).imag();
    if (std::abs(CX(0, 0).real()) > 1e-9 ||
        std::abs(CX(1, 0) - std::conj(s.w)) > 1e-9 ||
        std::abs(bw - bracket_norm(s.w, 1)) > 1e-9)
        throw ConventionViolation("to_wbc: X is not a unit hyperboloid point");

    const Mat2c C1 = cayley(Lambda1);
    const double t1 = C1(0, 0).imag();
    const Cx z1 = C1(0, 1);
    if (std::abs(C1(0, 0).real()) > 1e-9 ||
        std::abs(C1(1, 0) - std::conj(z1)) > 1e-9)
        throw ConventionViolation("to_wbc: Lambda1 is not in su(1,1) form");
    const double disc = t1 * t1 - std::norm(z1);  // = eps d1^2
    const double scale1 = std::max(1.0, t1 * t1 + std::norm(z1));
    if (std::abs(disc) <= 1e-12 * scale1) {
        s.eps = 0;
        s.d1 = t1 >= 0 ? 1.0 : -1.0;
    } else if (disc > 0) {
        s.eps = 1;
        s.d1 = (t1 >= 0 ? 1.0 : -1.0) * std::sqrt(disc);
    } else {
        s.eps = -1;
        s.d1 = (t1 >= 0 ? 1.0 : -1.0) * std::sqrt(-disc);
    }
    s.b = z1 / s.d1;

    const Mat2c CR = cayley(LambdaR);
    s.c = CR(0, 1);
    const Cx diag = -kI * re_pair(s.c, s.w) / bw;
    const double scaleR = 1.0 + std::abs(s.c);
    if (std::abs(CR(1, 0) - std::conj(s.c)) > 1e-9 * scaleR ||
        std::abs(CR(0, 0) - diag) > 1e-8 * scaleR)
        throw ConventionViolation(
            "to_wbc: LambdaR diagonal inconsistent with <X, LambdaR> = 0");
    return s;
}

WBCState to_wbc(const CostateTriple& q, double rho) {
    return to_wbc(q.X, q.Lambda1, q.LambdaR, rho, q.lambda_cost);
}

CostateTriple from_wbc(const WBCState& s) {
    const double bw = bracket_norm(s.w, 1);
    const double bb = bracket_norm(s.b, s.eps);
    Mat2c X, L1, LR;
    X << -kI * bw, s.w, std::conj(s.w), kI * bw;
    L1 << kI * s.d1 * bb, s.d1 * s.b, s.d1 * std::conj(s.b), -kI * s.d1 * bb;
    const Cx diag = kI * re_pair(s.c, s.w) / bw;
    LR << -diag, s.c, std::conj(s.c), diag;
    CostateTriple q;
    q.X = cayley_inv(X);
    q.Lambda1 = cayley_inv(L1);
    q.LambdaR = cayley_inv(LR);
    q.lambda_cost = s.lambda_cost;
    return q;
}

ControlRoot optimal_control_root(const WBCState& s) {
    if (std::abs(s.c) < 1e-14)
        throw DegenerateControl("optimal_control_root: c = 0");
    const QuadCoeffs q = control_quadratic(s.w, s.c, s.rho);
    // a1 is purely imaginary, so the discriminant is real
    const double delta = (q.a1 * q.a1).real() + 4.0 * std::norm(q.a0);
    if (!(delta > 0))
        throw DegenerateControl("optimal_control_root: degenerate discriminant");
    const double rt = std::sqrt(delta);
    const Cx phase = s.c / std::abs(s.c);
    ControlRoot r;
    r.z_star = phase * (q.a1 + rt) / (2.0 * std::conj(q.a0));
    r.other = phase * (q.a1 - rt) / (2.0 * std::conj(q.a0));
    return r;
}

WBCDeriv wbc_rhs(const WBCState& s) {
    const Cx z = optimal_control_root(s).z_star;
    const double bw = bracket_norm(s.w, 1);
    const double bb = bracket_norm(s.b, s.eps);
    const double mu = mu_of(s, z);
    if (!(mu > 0))
        throw StarViolation("wbc_rhs: control denominator is not positive");

    const QuadCoeffs q = control_quadratic(s.w, s.c, s.rho);
    WBCDeriv d;
    d.dw = kI * (s.w - s.rho * bw * z) / mu;
    d.db = 2.0 * kI * (bb * s.w + s.b * bw);
    d.dc = kI * (1.0 - s.rho * s.rho) * re_pair(s.c * q.a0, z) * z /
               (2.0 * bw * mu * mu) -
           kI * ((2.0 * s.d1 * bb + 3.0 * s.lambda_cost) * s.w +
                 2.0 * s.b * s.d1 * bw);
    return d;
}

double angular_momentum(const WBCState& s) {
    return 2.0 * s.d1 * bracket_norm(s.b, s.eps) -
           2.0 * re_pair(s.w, s.c) / bracket_norm(s.w, 1);
}

double wbc_hamiltonian(const WBCState& s) {
    const Cx z = optimal_control_root(s).z_star;
    const double bw = bracket_norm(s.w, 1);
    const double bb = bracket_norm(s.b, s.eps);
    const double mu = mu_of(s, z);
    return 2.0 * s.d1 * re_pair(s.w, s.b) +
           (2.0 * s.d1 * bb + 3.0 * s.lambda_cost) * bw -
           re_pair(s.w - s.rho * bw * z, s.c) / (mu * bw);
}

WBCState wbc_integrate(const WBCState& s0, double t, double tol) {
    OdeOptions opts;
    opts.abs_tol = tol;
    opts.rel_tol = tol;
    opts.max_step = 0.1;
    const Vec y0 = {s0.w.real(), s0.w.imag(), s0.b.real(),
                    s0.b.imag(), s0.c.real(), s0.c.imag()};
    WBCState cur = s0;
    auto rhs = [&cur](double, const Vec& y, Vec& dy) {
        cur.w = Cx(y[0], y[1]);
        cur.b = Cx(y[2], y[3]);
        cur.c = Cx(y[4], y[5]);
        const WBCDeriv d = wbc_rhs(cur);
        dy = {d.dw.real(), d.dw.imag(), d.db.real(),
              d.db.imag(), d.dc.real(), d.dc.imag()};
    };
    const OdeResult res = integrate(rhs, 0.0, y0, t, opts);
    WBCState out = s0;
    out.w = Cx(res.y[0], res.y[1]);
    out.b = Cx(res.y[2], res.y[3]);
    out.c = Cx(res.y[4], res.y[5]);
    return out;
}

WBCDeriv abnormal_rhs(const WBCState& s) {
    if (std::abs(s.c) < 1e-14)
        throw DegenerateControl("abnormal_rhs: c = 0");
    const QuadCoeffs q = control_quadratic(s.w, s.c, 1.0);
    const double eta2 = 2.0 * q.a0.real();
    if (!(eta2 > 0))
        throw DegenerateControl("abnormal_rhs: eta degenerates");
    const double eta = std::sqrt(eta2);
    const double bw = bracket_norm(s.w, 1);
    const double bb = bracket_norm(s.b, s.eps);
    const double A = 2.0 * s.d1 * bb - 2.0 * re_pair(s.w, s.c) / bw;
    const Cx K12 = s.d1 * s.b + s.c;

    WBCDeriv d;
    d.dw = -kI * q.a0 * s.c / (std::abs(s.c) * eta);
    d.db = 2.0 * kI * (bb * s.w + s.b * bw);
    d.dc = kI * q.a0 * s.c / bw - kI * (s.w * A + 2.0 * K12 * bw);
    return d;
}

double abnormal_dR(const WBCState& s) {
    const QuadCoeffs q = control_quadratic(s.w, s.c, 1.0);
    const double eta2 = 2.0 * q.a0.real();
    const double bw = bracket_norm(s.w, 1);
    return std::norm(s.c) * eta2 / (2.0 * bw * bw);
}

double truncation_error_slope() {
    // generic seed scaled into the singular locus with the cubic weights
    const Cx q1(0.30, 0.20), q2(-0.10, 0.40), q3(0.25, -0.15);
    std::vector<double> lr, le;
    for (double r : {1e-1, 1e-2, 1e-3, 1e-4}) {
        WBCState s;
        s.rho = 2.0;
        s.d1 = 1.5;
        s.eps = 1;
        s.lambda_cost = -1.0;
        const Cx z1 = r * q1, z2 = r * r * q2, z3 = r * r * r * q3;
        s.w = 2.0 * z1;
        s.b = 4.0 * kI * z2;
        s.c = 12.0 * z3;
        const WBCDeriv d = wbc_rhs(s);
        const Cx dz1 = d.dw / 2.0, dz2 = -kI * d.db / 4.0, dz3 = d.dc / 12.0;
        const Cx f1 = -kI * z3 / std::abs(z3), f2 = z1, f3 = z2;
        double err = std::abs(dz1 - f1) / std::abs(f1);
        err = std::max(err, std::abs(dz2 - f2) / std::abs(f2));
        err = std::max(err, std::abs(dz3 - f3) / std::abs(f3));
        lr.push_back(std::log(r));
        le.push_back(std::log(err));
    }
    const int n = static_cast<int>(lr.size());
    double mx = 0, my = 0;
    for (int i = 0; i < n; ++i) {
        mx += lr[i];
        my += le[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sxx += (lr[i] - mx) * (lr[i] - mx);
        sxy += (lr[i] - mx) * (le[i] - my);
    }
    return sxy / sxx;
}

NeckState to_neck(const WBCState& s) {
    if (s.eps != -1)
        throw ConventionViolation("to_neck: chart requires eps = -1");
    const double r2 = std::norm(s.b) - 1.0;
    if (r2 < 0)
        throw ConventionViolation("to_neck: |b| < 1");
    NeckState n;
    n.w = s.w;
    n.r = std::sqrt(r2);
    n.theta = std::arg(s.b);
    return n;
}

WBCState from_neck(const NeckState& n, const WBCState& like) {
    WBCState s = like;
    s.eps = -1;
    s.w = n.w;
    s.b = std::exp(kI * n.theta) * std::sqrt(n.r * n.r + 1.0);
    return s;
}

std::pair<double, double> neck_rhs(const Cx& w, double r, double theta) {
    const Cx e = std::exp(kI * theta);
    const double dr = 2.0 * std::sqrt(1.0 + r * r) * re_pair(kI * w, e);
    const double dtheta = 2.0 * bracket_norm(w, 1) +
                          2.0 * r * re_pair(w, e) / std::sqrt(r * r + 1.0);
    return {dr, dtheta};
}

}  // namespace reinhardt
