#include "reinhardt/pontryagin.h"

#include <cmath>

#include "reinhardt/ode.h"

namespace reinhardt {

namespace {
const double kSqrt3 = std::sqrt(3.0);

Mat2 commutator(const Mat2& A, const Mat2& B) { return A * B - B * A; }

Mat2 vertex_P(const Mat2& X, int i) {
    const Mat2 Z = control_matrix(ControlVector::vertex(i));
    const double pair = trace_form(X, Z);
    if (std::abs(pair) < 1e-13)
        throw StarViolation("vertex_P: <X, Z> vanished");
    return Z / pair;
}

Vec pack(const CostateTriple& q) {
    return {q.X(0, 0),       q.X(0, 1),       q.X(1, 0),
            q.Lambda1(0, 0), q.Lambda1(0, 1), q.Lambda1(1, 0),
            q.LambdaR(0, 0), q.LambdaR(0, 1), q.LambdaR(1, 0)};
}

CostateTriple unpack(const Vec& y, double lambda_cost) {
    CostateTriple q;
    q.X << y[0], y[1], y[2], -y[0];
    q.Lambda1 << y[3], y[4], y[5], -y[3];
    q.LambdaR << y[6], y[7], y[8], -y[6];
    q.lambda_cost = lambda_cost;
    return q;
}

Mat2 conj_R(const Mat2& M) {
    const Mat2 R = rot_R();
    return R * M * R.transpose();
}
}  // namespace

void CostateTriple::check(double tol) const {
    if (std::abs(X.determinant() - 1.0) > tol)
        throw ConventionViolation("CostateTriple: det X differs from 1");
    if (std::abs(trace_form(X, LambdaR)) > tol)
        throw ConventionViolation("CostateTriple: <X, LambdaR> nonzero");
}

double hamiltonian(const CostateTriple& q, const ControlVector& u) {
    const Mat2 Z = control_matrix(u);
    const Mat2 M = q.Lambda1 - 1.5 * q.lambda_cost * rot_J();
    return trace_form(M, q.X) - trace_form(q.LambdaR, Z) / trace_form(q.X, Z);
}

double switching_value(const CostateTriple& q, int i, int j) {
    return trace_form(q.LambdaR, vertex_P(q.X, j) - vertex_P(q.X, i));
}

MaximizerFace maximize_control(const CostateTriple& q, double tie_tol) {
    double H[3];
    for (int i = 0; i < 3; ++i) H[i] = hamiltonian(q, ControlVector::vertex(i));
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (H[i] > H[best]) best = i;
    int second = -1;
    for (int i = 0; i < 3; ++i)
        if (i != best && (second < 0 || H[i] > H[second])) second = i;
    const int third = 3 - best - second;

    MaximizerFace f;
    if (H[best] - H[third] <= tie_tol) {
        f.kind = MaximizerFace::Singular;
        f.i = best;
        f.j = second;
    } else if (H[best] - H[second] <= tie_tol) {
        f.kind = MaximizerFace::Edge;
        f.i = best;
        f.j = second;
    } else {
        f.kind = MaximizerFace::Vertex;
        f.i = f.j = best;
    }
    return f;
}

CostateTriple rhs(const CostateTriple& q, const ControlVector& u) {
    const Mat2 Z = control_matrix(u);
    const Mat2 P = Z / trace_form(q.X, Z);
    const Mat2 M = -q.Lambda1 + 1.5 * q.lambda_cost * rot_J();
    CostateTriple d;
    d.X = commutator(P, q.X);
    d.Lambda1 = commutator(q.Lambda1, q.X);
    d.LambdaR = commutator(P, q.LambdaR) -
                trace_form(q.LambdaR, P) * commutator(P, q.X) +
                commutator(M, q.X);
    d.lambda_cost = 0;
    return d;
}

ExtremalResult integrate_extremal(const CostateTriple& q0, int c0, double t_max,
                                  int max_switches) {
    q0.check();
    ExtremalResult res;
    res.q = q0;
    res.control = c0;

    OdeOptions opts;
    opts.abs_tol = opts.rel_tol = 1e-12;
    opts.event_time_tol = 1e-12;
    opts.event_zero_tol = 1e-13;
    opts.max_step = 0.25;

    int short_arcs = 0;
    while (res.t < t_max) {
        if (res.q.LambdaR.norm() < 1e-10)
            throw SingularApproach(
                "integrate_extremal: rotational costate collapsed");
        {
            const auto r = rho(res.q.X);
            if (!(r[0] > 0 && r[1] > 0 && r[2] > 0))
                throw StarViolation("integrate_extremal: left the star cone");
        }
        const int c = res.control;
        const double lc = res.q.lambda_cost;
        const double t_start = res.t;

        auto ode = [&](double, const Vec& y, Vec& dy) {
            const CostateTriple q = unpack(y, lc);
            const CostateTriple d = rhs(q, ControlVector::vertex(c));
            dy = pack(d);
        };
        const int j1 = (c + 1) % 3, j2 = (c + 2) % 3;
        auto make_event = [&](int j) {
            return [&, j](double, const Vec& y) {
                return switching_value(unpack(y, lc), c, j);
            };
        };
        auto observer = [&](double, const Vec& y) {
            const CostateTriple q = unpack(y, lc);
            if (q.LambdaR.norm() < 1e-10)
                throw SingularApproach(
                    "integrate_extremal: rotational costate collapsed");
            const auto r = rho(q.X);
            if (!(r[0] > 0 && r[1] > 0 && r[2] > 0))
                throw StarViolation("integrate_extremal: left the star cone");
            return true;
        };

        const auto out =
            integrate(ode, res.t, pack(res.q), t_max, opts,
                      {make_event(j1), make_event(j2)}, observer);
        res.q = unpack(out.y, lc);
        res.t = out.t;
        if (!out.event_hit) break;

        int to = out.event_index == 0 ? j1 : j2;
        const int other = out.event_index == 0 ? j2 : j1;
        if (std::abs(switching_value(res.q, c, other)) < 1e-12)
            to = (c + 1) % 3;  // simultaneous zeros: take the cyclic successor
        res.switches.push_back({res.t, c, to});
        res.control = to;

        if (res.t - t_start < 1e-9) {
            if (++short_arcs > 10)
                throw SingularApproach(
                    "integrate_extremal: persistent edge chattering");
        } else {
            short_arcs = 0;
        }
        if (static_cast<int>(res.switches.size()) >= max_switches) break;
    }
    return res;
}

PoincareStep poincare_step(const CostateTriple& q0, int c, int /*p*/) {
    const auto out = integrate_extremal(q0, c, 1e6, 1);
    if (out.switches.empty())
        throw NoSwitch("poincare_step: no switching time found");
    PoincareStep st;
    st.t_sw = out.switches[0].t;
    st.q.X = conj_R(out.q.X);
    st.q.Lambda1 = conj_R(out.q.Lambda1);
    st.q.LambdaR = conj_R(out.q.LambdaR);
    st.q.lambda_cost = q0.lambda_cost;
    return st;
}

namespace {

using V9 = Eigen::Matrix<double, 9, 1>;

V9 to_eigen(const Vec& v) {
    V9 out;
    for (int i = 0; i < 9; ++i) out(i) = v[i];
    return out;
}

Eigen::Matrix<double, 5, 1> constraints(const V9& u, double lc, double d0,
                                        int c, int p) {
    Vec y(u.data(), u.data() + 9);
    const CostateTriple q = unpack(y, lc);
    Eigen::Matrix<double, 5, 1> g;
    g(0) = q.X.determinant() - 1.0;
    g(1) = trace_form(q.X, q.LambdaR);
    g(2) = q.Lambda1.determinant() - d0;
    g(3) = hamiltonian(q, ControlVector::vertex(c));
    g(4) = switching_value(q, c, p);
    return g;
}

Eigen::Matrix<double, 5, 9> constraint_jac(const V9& u, double lc, double d0,
                                           int c, int p) {
    Eigen::Matrix<double, 5, 9> G;
    const double h = 1e-7;
    for (int j = 0; j < 9; ++j) {
        V9 up = u, um = u;
        up(j) += h;
        um(j) -= h;
        G.col(j) =
            (constraints(up, lc, d0, c, p) - constraints(um, lc, d0, c, p)) /
            (2 * h);
    }
    return G;
}

V9 retract(V9 u, double lc, double d0, int c, int p) {
    for (int it = 0; it < 30; ++it) {
        const auto g = constraints(u, lc, d0, c, p);
        if (g.norm() < 1e-13) break;
        const auto G = constraint_jac(u, lc, d0, c, p);
        u -= G.transpose() *
             (G * G.transpose()).ldlt().solve(g);
    }
    return u;
}

}  // namespace

Eigen::Matrix4d poincare_jacobian(const CostateTriple& q0, int c, int p,
                                  double fd_step) {
    const double lc = q0.lambda_cost;
    const double d0 = q0.Lambda1.determinant();
    const V9 u0 = to_eigen(pack(q0));

    // orthonormal basis of the tangent space of the section
    const auto G = constraint_jac(u0, lc, d0, c, p);
    Eigen::JacobiSVD<Eigen::Matrix<double, 5, 9>> svd(
        G, Eigen::ComputeFullV);
    const Eigen::Matrix<double, 9, 4> V =
        svd.matrixV().rightCols<4>();  // null space of G

    auto map_coords = [&](const Eigen::Vector4d& s) {
        const V9 u = retract(u0 + V * s, lc, d0, c, p);
        Vec y(u.data(), u.data() + 9);
        const auto st = poincare_step(unpack(y, lc), c, p);
        const V9 w = to_eigen(pack(st.q));
        return Eigen::Vector4d(V.transpose() * (w - u0));
    };

    Eigen::Matrix4d J;
    for (int j = 0; j < 4; ++j) {
        Eigen::Vector4d sp = Eigen::Vector4d::Zero(), sm = sp;
        sp(j) = fd_step;
        sm(j) = -fd_step;
        J.col(j) = (map_coords(sp) - map_coords(sm)) / (2 * fd_step);
    }
    return J;
}

double edge_field_y(double x, double y, double ue) {
    return 2 * kSqrt3 * y * y * ue / (-1 + 2 * kSqrt3 * x * ue);
}

double edge_hamiltonian(const EdgeState& e, double ue) {
    return e.l1 * e.y + e.l2 * edge_field_y(e.x, e.y, ue) + e.l3 / e.y +
           e.lambda_cost * e.x * e.x / e.y;
}

EdgeState edge_system_step(const EdgeState& e0, double dt) {
    EdgeState e = e0;
    double t = 0;
    OdeOptions opts;
    opts.abs_tol = opts.rel_tol = 1e-11;
    opts.event_zero_tol = 1e-12;
    while (t < dt) {
        double ue;
        if (std::abs(e.l2) > 1e-12) {
            ue = e.l2 > 0 ? -0.5 : 0.5;
        } else {
            // at a switching zero the derivative of l2 is control independent;
            // its sign tells which bang branch comes next
            const double dl2 = e.l3 / (e.y * e.y) - e.l1 +
                               e.lambda_cost * e.x * e.x / (e.y * e.y);
            ue = dl2 >= 0 ? -0.5 : 0.5;
        }
        auto ode = [&](double, const Vec& y, Vec& dy) {
            const double x = y[1], yy = y[2], l1 = y[3], l2 = y[4], l3 = y[5];
            const double den = -1 + 2 * kSqrt3 * x * ue;
            dy = {1.0 / yy,
                  yy,
                  2 * kSqrt3 * yy * yy * ue / den,
                  12 * l2 * yy * yy * ue * ue / (den * den) -
                      2 * e.lambda_cost * x / yy,
                  l3 / (yy * yy) - l1 - 4 * kSqrt3 * yy * ue * l2 / den +
                      e.lambda_cost * x * x / (yy * yy),
                  0.0};
        };
        auto l2_event = [](double, const Vec& y) { return y[4]; };
        const auto out = integrate(ode, t, {e.s, e.x, e.y, e.l1, e.l2, e.l3},
                                   dt, opts, {l2_event});
        e.s = out.y[0];
        e.x = out.y[1];
        e.y = out.y[2];
        e.l1 = out.y[3];
        e.l2 = out.y[4];
        e.l3 = out.y[5];
        t = out.t;
        if (!out.event_hit) break;
    }
    return e;
}

Mat2 abnormal_edge_lambda1(double x, double y) {
    Mat2 m;
    m << -x, x * x, -1, x;
    return m;
}

Mat2 abnormal_edge_lambdaR(double x, double y) {
    Mat2 m;
    m << x, y * y - x * x, 1, -x;
    return m;
}

}  // namespace reinhardt
