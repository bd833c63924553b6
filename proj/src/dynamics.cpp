#include "reinhardt/dynamics.h"

#include <cmath>
#include <nlohmann/json.hpp>
#include <ostream>

#include "reinhardt/ode.h"

namespace reinhardt {

namespace {
const double kSqrt3 = std::sqrt(3.0);

Mat2 commutator(const Mat2& A, const Mat2& B) { return A * B - B * A; }
}  // namespace

ControlVector rotate_control(const ControlVector& u, int k) {
    k = ((k % 3) + 3) % 3;
    double v[3] = {u.u0, u.u1, u.u2};
    // one application: (u0, u1, u2) -> (u1, u2, u0)
    return ControlVector(v[k % 3], v[(k + 1) % 3], v[(k + 2) % 3], u.mode);
}

std::pair<double, double> half_plane_field(const HalfPlanePoint& z,
                                           const ControlVector& u) {
    const double a = (u.u1 - u.u2) / kSqrt3;
    const double b = (u.u0 - 2 * u.u1 - 2 * u.u2) / 3.0;
    const double c = u.u0;
    const double x = z.x, y = z.y;
    const double den = 2 * a * x + b - c * x * x - c * y * y;
    if (std::abs(den) < 1e-13)
        throw StarViolation("half_plane_field: field denominator vanished");
    return {y * (2 * a * x + b - c * x * x + c * y * y) / den,
            2 * y * y * (a - c * x) / den};
}

Mat2 control_generator(const HalfPlanePoint& z0, const ControlVector& u) {
    const Mat2 Zu = control_matrix(u);
    const double pairing = trace_form(Zu, phi(z0));
    if (std::abs(pairing) < 1e-13)
        throw StarViolation("control_generator: <Z_u, X> vanished");
    return Zu / pairing;
}

HalfPlanePoint const_flow(const HalfPlanePoint& z0, const ControlVector& u,
                          double t) {
    return mobius(exp_sl2(control_generator(z0, u), t), z0);
}

Mat2 const_group_flow(const Mat2& g0, const HalfPlanePoint& z0,
                      const ControlVector& u, double t) {
    const Mat2 P0 = control_generator(z0, u);
    const Mat2 X0 = phi(z0);
    return g0 * exp_sl2(X0 + P0, t) * exp_sl2(P0, -t);
}

double segment_cost(const HalfPlanePoint& z0, const ControlVector& u,
                    double t) {
    const Mat2 P0 = control_generator(z0, u);
    auto integrand = [&](double s) {
        const HalfPlanePoint z = mobius(exp_sl2(P0, s), z0);
        if (!(z.y > 0))
            throw StarViolation("segment_cost: trajectory left the half-plane");
        return (z.x * z.x + z.y * z.y + 1.0) / z.y;
    };
    return 1.5 * quad(integrand, 0.0, t, 1e-11);
}

SplineState spline(const Mat2& g0, const HalfPlanePoint& z0,
                   const ControlSchedule& schedule) {
    SplineState s{g0, z0, 0.0};
    for (const auto& seg : schedule.segments) {
        const ControlVector u = rotate_control(schedule.base, seg.k);
        s.cost += segment_cost(s.z, u, seg.dt);
        s.g = const_group_flow(s.g, s.z, u, seg.dt);
        s.z = const_flow(s.z, u, seg.dt);
    }
    return s;
}

Trajectory spline_trajectory(const Mat2& g0, const HalfPlanePoint& z0,
                             const ControlSchedule& schedule,
                             int samples_per_segment) {
    Trajectory tr;
    SplineState s{g0, z0, 0.0};
    double t_base = 0;
    tr.push_back({0.0, z0, g0, 0.0});
    for (const auto& seg : schedule.segments) {
        const ControlVector u = rotate_control(schedule.base, seg.k);
        for (int i = 1; i <= samples_per_segment; ++i) {
            const double dt = seg.dt * i / samples_per_segment;
            tr.push_back({t_base + dt, const_flow(s.z, u, dt),
                          const_group_flow(s.g, s.z, u, dt),
                          s.cost + segment_cost(s.z, u, dt)});
        }
        s.cost += segment_cost(s.z, u, seg.dt);
        s.g = const_group_flow(s.g, s.z, u, seg.dt);
        s.z = const_flow(s.z, u, seg.dt);
        t_base += seg.dt;
    }
    return tr;
}

CostatePair costate_const_flow(const CostatePair& c0, const HalfPlanePoint& z0,
                               const ControlVector& u, double lambda_cost,
                               double t) {
    const Mat2 P0 = control_generator(z0, u);
    const Mat2 X0 = phi(z0);
    const Mat2 J = rot_J();
    const Mat2 g = exp_sl2(X0 + P0, t) * exp_sl2(P0, -t);

    auto Psi = [&](double s) -> Mat2 {
        // integral of Ad_{exp(-(X0+P0)r)} Lambda1(0) - (3/2) lc Ad_{exp(-P0 r)} J
        Mat2 out;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                out(i, j) = quad(
                    [&](double r) {
                        const Mat2 e1 = exp_sl2(X0 + P0, -r);
                        const Mat2 e2 = exp_sl2(P0, -r);
                        const Mat2 term =
                            e1 * c0.Lambda1 * e1.inverse() -
                            1.5 * lambda_cost * (e2 * J * e2.inverse());
                        return term(i, j);
                    },
                    0.0, s, 1e-11);
        return out;
    };

    const double psi = quad(
        [&](double s) {
            return trace_form(P0, c0.LambdaR - commutator(Psi(s), X0));
        },
        0.0, t, 1e-10);

    const Mat2 tilde = c0.LambdaR - commutator(Psi(t) + psi * P0, X0);
    const Mat2 ead = exp_sl2(P0, t);

    CostatePair out;
    out.Lambda1 = g.inverse() * c0.Lambda1 * g;
    out.LambdaR = ead * tilde * ead.inverse();
    return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
    os << "t,x,y,g11,g12,g21,g22,cost\n";
    char buf[256];
    for (const auto& s : tr) {
        std::snprintf(buf, sizeof buf,
                      "%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g\n", s.t,
                      s.z.x, s.z.y, s.g(0, 0), s.g(0, 1), s.g(1, 0), s.g(1, 1),
                      s.cost);
        os << buf;
    }
}

void write_trajectory_json(std::ostream& os, const Trajectory& tr) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : tr)
        j.push_back({{"t", s.t},
                     {"x", s.z.x},
                     {"y", s.z.y},
                     {"g", {s.g(0, 0), s.g(0, 1), s.g(1, 0), s.g(1, 1)}},
                     {"cost", s.cost}});
    os << j.dump(2) << "\n";
}

}  // namespace reinhardt
