#include "reinhardt/fuller.h"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "reinhardt/ode.h"

namespace reinhardt {

namespace {

const double kPi = 3.14159265358979323846;

double rp(const Cx& a, const Cx& b) { return std::real(std::conj(a) * b); }

const Cx kZeta(-0.5, std::sqrt(3.0) / 2.0);

// real roots of c0 + c1 t + c2 t^2 + c3 t^3, polished by two Newton steps
std::vector<double> poly_real_roots(std::array<double, 4> c) {
    const double scale =
        std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2]),
                  std::abs(c[3])});
    std::vector<double> out;
    if (scale == 0) return out;
    int deg = 3;
    while (deg > 0 && std::abs(c[deg]) < 1e-13 * scale) --deg;
    if (deg == 0) return out;
    if (deg == 1) {
        out.push_back(-c[0] / c[1]);
    } else if (deg == 2) {
        const double disc = c[1] * c[1] - 4.0 * c[2] * c[0];
        if (disc < 0) return out;
        const double q = -0.5 * (c[1] + std::copysign(std::sqrt(disc), c[1]));
        if (q != 0) {
            out.push_back(q / c[2]);
            out.push_back(c[0] / q);
        } else {
            out.push_back(0.0);
        }
    } else {
        // monic depressed cubic s^3 + P s + Q, t = s - p/3
        const double p = c[2] / c[3], q = c[1] / c[3], r = c[0] / c[3];
        const double P = q - p * p / 3.0;
        const double Q = 2.0 * p * p * p / 27.0 - p * q / 3.0 + r;
        const double D = Q * Q / 4.0 + P * P * P / 27.0;
        if (D > 0) {
            const double sq = std::sqrt(D);
            out.push_back(std::cbrt(-Q / 2.0 + sq) +
                          std::cbrt(-Q / 2.0 - sq) - p / 3.0);
        } else {
            const double m = 2.0 * std::sqrt(-P / 3.0);
            const double arg = std::clamp(3.0 * Q / (P * m), -1.0, 1.0);
            const double th = std::acos(arg) / 3.0;
            for (int k = 0; k < 3; ++k)
                out.push_back(m * std::cos(th - 2.0 * kPi * k / 3.0) -
                              p / 3.0);
        }
    }
    auto f = [&](double t) {
        double v = 0;
        for (int i = deg; i >= 0; --i) v = v * t + c[i];
        return v;
    };
    auto df = [&](double t) {
        double v = 0;
        for (int i = deg; i >= 1; --i) v = v * t + i * c[i];
        return v;
    };
    for (double& t : out)
        for (int it = 0; it < 2; ++it) {
            const double d = df(t);
            if (d != 0) t -= f(t) / d;
        }
    return out;
}

// switching polynomial R(z3(t, z0, u), d) with roots at t = 0 deflated
std::array<double, 4> switch_coeffs(const FullerState& z0, const Cx& u,
                                    const Cx& d) {
    std::array<double, 4> c = {rp(z0.z3, d), rp(z0.z2, d), rp(z0.z1, d) / 2.0,
                               rp(Cx(0, -1) * u, d) / 6.0};
    const double scale =
        std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2]),
                  std::abs(c[3])});
    int guard = 0;
    while (scale > 0 && std::abs(c[0]) < 1e-11 * scale && guard++ < 3) {
        c = {c[1], c[2], c[3], 0.0};
    }
    return c;
}

double least_positive_root(const std::array<double, 4>& c) {
    double best = std::numeric_limits<double>::infinity();
    for (double t : poly_real_roots(c))
        if (t > 0 && t < best) best = t;
    return best;
}

FullerState normalize_angular(const FullerState& z) {
    const FullerState w = to_wall_representative(z);
    return virial(w, 0.0, 1.0 / phi_norm(w));
}

CellCoordinates q_out_coords() {
    static const CellCoordinates cc = cell_coords(q_out_state());
    return cc;
}

double cell_dist(const CellCoordinates& a, const CellCoordinates& b) {
    const double d1 = a.r2 - b.r2, d2 = a.psi - b.psi,
                 d3 = a.theta2 - b.theta2;
    return std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
}

}  // namespace

double fuller_hamiltonian(const FullerState& z) {
    return std::imag(std::conj(z.z2) * z.z1) + std::abs(z.z3);
}

double fuller_angular(const FullerState& z) {
    return std::norm(z.z2) - 2.0 * rp(z.z1, z.z3);
}

FullerState virial(const FullerState& z, double theta, double r) {
    const Cx ph = std::polar(1.0, theta);
    return {ph * r * z.z1, ph * r * r * z.z2, ph * r * r * r * z.z3};
}

FullerState time_reverse(const FullerState& z) {
    return {std::conj(z.z1), -std::conj(z.z2), std::conj(z.z3)};
}

FullerState log_spiral(double t) {
    if (!(t > 0)) throw std::domain_error("log_spiral: t must be positive");
    const Cx a(3, -1), b(2, -1), c(1, -1);
    const Cx t3 = std::pow(Cx(t, 0), a);
    const Cx t2 = std::pow(Cx(t, 0), Cx(2, -1));
    const Cx t1 = std::pow(Cx(t, 0), Cx(1, -1));
    (void)c;
    return {b * a * t1 / 10.0, a * t2 / 10.0, t3 / 10.0};
}

FullerState fuller_flow_circular(const FullerState& z0, double t,
                                 double tol) {
    Vec y = {z0.z1.real(), z0.z1.imag(), z0.z2.real(),
             z0.z2.imag(), z0.z3.real(), z0.z3.imag()};
    auto rhs = [](double, const Vec& v, Vec& dv) {
        const Cx z1(v[0], v[1]), z2(v[2], v[3]), z3(v[4], v[5]);
        const Cx d1 = Cx(0, -1) * z3 / std::abs(z3);
        dv = {d1.real(), d1.imag(), z1.real(),
              z1.imag(), z2.real(), z2.imag()};
    };
    OdeOptions opts;
    opts.abs_tol = opts.rel_tol = tol;
    auto wall = [](double, const Vec& v) {
        return std::hypot(v[4], v[5]) - 1e-11;
    };
    const OdeResult res = integrate(rhs, 0.0, y, t, opts, {wall});
    if (res.event_hit)
        throw WallHit("fuller_flow_circular: z3 reached the wall");
    return {Cx(res.y[0], res.y[1]), Cx(res.y[2], res.y[3]),
            Cx(res.y[4], res.y[5])};
}

BaseSpacePoint base_project(const FullerState& z) {
    const double a1 = std::abs(z.z1);
    if (a1 == 0) throw std::domain_error("base_project: z1 = 0");
    BaseSpacePoint p;
    p.x2 = std::abs(z.z2) / (a1 * a1);
    p.x3 = std::abs(z.z3) / (a1 * a1 * a1);
    p.eps2 = std::real(z.z2 * std::conj(z.z1)) >= 0 ? 1 : -1;
    p.eps3 = std::imag(z.z3 * std::conj(z.z1)) >= 0 ? 1 : -1;
    return p;
}

std::pair<double, double> base_field(const BaseSpacePoint& p) {
    const double tol = 1e-9;
    if (!(p.x2 > 0) || !(p.x3 > 0) || p.x3 > p.x2 + tol ||
        p.x2 * p.x2 / 2.0 > p.x3 + tol)
        throw std::domain_error("base_field: point outside the region");
    const double s2 = std::min(p.x3 / p.x2, 1.0);
    const double c2 = std::sqrt(std::max(0.0, 1.0 - s2 * s2));
    const double c3 = std::min(p.x2 * p.x2 / (2.0 * p.x3), 1.0);
    const double s3 = std::sqrt(std::max(0.0, 1.0 - c3 * c3));
    const double v2 = p.eps2 * c2 - 2.0 * p.x2 * p.eps3 * s3;
    const double v3 = p.x2 * (p.eps2 * c2 * c3 + p.eps3 * s2 * s3) -
                      3.0 * p.x3 * p.eps3 * s3;
    return {v2, v3};
}

std::pair<Cx, Cx> base_jacobian_eigs() {
    const double x2 = 2.0 / std::sqrt(10.0), x3 = std::sqrt(2.0) / 5.0;
    const double h = 1e-6;
    auto at = [&](double a, double b) {
        BaseSpacePoint p;
        p.x2 = a;
        p.x3 = b;
        p.eps2 = p.eps3 = 1;
        return base_field(p);
    };
    const auto [v2p, v3p] = at(x2 + h, x3);
    const auto [v2m, v3m] = at(x2 - h, x3);
    const auto [w2p, w3p] = at(x2, x3 + h);
    const auto [w2m, w3m] = at(x2, x3 - h);
    const double a = (v2p - v2m) / (2 * h), b = (w2p - w2m) / (2 * h);
    const double c = (v3p - v3m) / (2 * h), d = (w3p - w3m) / (2 * h);
    const double tr = a + d, det = a * d - b * c;
    const Cx disc = std::sqrt(Cx(tr * tr - 4.0 * det, 0));
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

Cx cube_root_control(int k) {
    switch (((k % 3) + 3) % 3) {
        case 0:
            return Cx(1, 0);
        case 1:
            return kZeta;
        default:
            return std::conj(kZeta);
    }
}

FullerState triangular_segment(const FullerState& z0, const Cx& u, double t) {
    const Cx miu = Cx(0, -1) * u;
    FullerState z;
    z.z1 = miu * t + z0.z1;
    z.z2 = miu * t * t / 2.0 + z0.z1 * t + z0.z2;
    z.z3 = miu * t * t * t / 6.0 + z0.z1 * t * t / 2.0 + z0.z2 * t + z0.z3;
    return z;
}

Cx first_control(const FullerState& z0) {
    const Cx rows[3] = {z0.z3, z0.z2, z0.z1};
    // lexicographic comparison: +1 if u beats v, 0 on a full tie
    auto cmp = [&](const Cx& u, const Cx& v) {
        for (const Cx& zr : rows) {
            const double diff = rp(zr, u) - rp(zr, v);
            if (std::abs(diff) > 1e-12 * std::max(1.0, std::abs(zr)))
                return diff > 0 ? 1 : -1;
        }
        return 0;
    };
    bool maximal[3];
    int count = 0;
    for (int i = 0; i < 3; ++i) {
        maximal[i] = true;
        for (int j = 0; j < 3 && maximal[i]; ++j)
            if (j != i && cmp(cube_root_control(i), cube_root_control(j)) < 0)
                maximal[i] = false;
        if (maximal[i]) ++count;
    }
    assert(count < 3 && "three-way control tie would force z = 0");
    if (count == 1)
        for (int i = 0; i < 3; ++i)
            if (maximal[i]) return cube_root_control(i);
    // two-way tie {zeta^i, zeta^(i+1)} resolves to zeta^i (cyclically)
    for (int i = 0; i < 3; ++i)
        if (maximal[i] && maximal[(i + 1) % 3] && !maximal[(i + 2) % 3])
            return cube_root_control(i);
    throw ConventionViolation("first_control: degenerate tie");
}

double switching_fn(const FullerState& z0, const Cx& u, const Cx& v1,
                    const Cx& v2, double t) {
    return rp(triangular_segment(z0, u, t).z3, v1 - v2);
}

SwitchInfo first_switch(const FullerState& z0) {
    const Cx u = first_control(z0);
    double best = std::numeric_limits<double>::infinity();
    Cx next;
    for (int k = 1; k <= 2; ++k) {
        const Cx v = u * cube_root_control(k);
        const double t = least_positive_root(switch_coeffs(z0, u, u - v));
        if (t < best) {
            best = t;
            next = v;
        }
    }
    if (!std::isfinite(best))
        throw NoSwitch("first_switch: no positive switching time");
    SwitchInfo s;
    s.state = triangular_segment(z0, u, best);
    s.t_sw = best;
    s.control = u;
    s.next_control = next;
    return s;
}

FullerState fuller_poincare(const FullerState& z0) {
    return first_switch(z0).state;
}

double phi_norm(const FullerState& z) {
    const double a1 = std::abs(z.z1), a2 = std::abs(z.z2),
                 a3 = std::abs(z.z3);
    return std::pow(a1 * a1 * a1 * a1 * a1 * a1 + a2 * a2 * a2 + a3 * a3,
                    1.0 / 6.0);
}

FullerState to_wall_representative(const FullerState& z) {
    if (z.z3 == Cx(0, 0)) return z;
    int best = -1;
    double best_im = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
        const Cx w = z.z3 * cube_root_control(k);
        if (w.real() < 0 && std::abs(w.imag()) < best_im) {
            best_im = std::abs(w.imag());
            best = k;
        }
    }
    if (best < 0)
        throw ConventionViolation("to_wall_representative: z3 not on a wall");
    const Cx ph = cube_root_control(best);
    FullerState out = {z.z1 * ph, z.z2 * ph, z.z3 * ph};
    return out;
}

FullerState fuller_poincare_angular(const FullerState& q) {
    return normalize_angular(fuller_poincare(normalize_angular(q)));
}

double r_scale() {
    static const double r = [] {
        auto f = [](double x) {
            return 1.0 + x * (-5.0 + x * (-7.0 + x * (-5.0 +
                   x * (-7.0 + x * (-5.0 + x)))));
        };
        auto df = [](double x) {
            return -5.0 + x * (-14.0 + x * (-15.0 +
                   x * (-28.0 + x * (-25.0 + 6.0 * x))));
        };
        double lo = 6.0, hi = 6.5, x = 6.27;
        for (int it = 0; it < 200; ++it) {
            double nx = x - f(x) / df(x);
            if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
            if (f(nx) * f(lo) < 0)
                hi = nx;
            else
                lo = nx;
            if (std::abs(nx - x) < 1e-15 * x) {
                x = nx;
                break;
            }
            x = nx;
        }
        return x;
    }();
    return r;
}

FullerState q_out_state() {
    static const FullerState q = [] {
        const double r = r_scale();
        const double s3 = std::sqrt(3.0);
        FullerState z;
        z.z1 = Cx(-1.0, (r - 1.0) / (s3 * (1.0 + r)));
        const double r2 = r * r, r3 = r2 * r, r4 = r3 * r;
        z.z2 = Cx(-(r3 - 1.0) / (s3 * (1.0 + r3)),
                  (1.0 - 3.0 * r - 2.0 * r2 - 3.0 * r3 + r4) /
                      (3.0 * (1.0 + r + r3 + r4)));
        const double r5 = r4 * r, r6 = r5 * r, r7 = r6 * r, r9 = r7 * r2,
                     r10 = r9 * r;
        z.z3 = Cx(-2.0 *
                      (1.0 + r - 4.0 * r3 - 7.0 * r4 - 9.0 * r5 - 7.0 * r6 -
                       4.0 * r7 + r9 + r10) /
                      (9.0 * (1.0 + r) * (1.0 + r) * (1.0 - r + r2) *
                       (1.0 + r3 + r6)),
                  0.0);
        return z;
    }();
    return q;
}

FullerState q_in_state() { return time_reverse(q_out_state()); }

double q_out_switch_time() {
    const double r = r_scale();
    return 2.0 * (1.0 + r + r * r) / (std::sqrt(3.0) * (r + 1.0));
}

CellCoordinates cell_coords(const FullerState& z) {
    const FullerState w = to_wall_representative(z);
    const double r1 = std::abs(w.z1), r2 = std::abs(w.z2);
    if (r1 == 0 && r2 == 0)
        throw ConventionViolation("cell_coords: z1 = z2 = 0");
    const double x3 = w.z3.real();
    const double th1 = std::arg(w.z1), th2 = std::arg(w.z2);
    double psi = th2 - th1;
    while (psi > kPi) psi -= 2.0 * kPi;
    while (psi < -kPi) psi += 2.0 * kPi;
    // vanishing wall Hamiltonian: x3 = -2 r1 r2 sin(psi)
    const double scale = std::max(std::abs(x3), r1 * r2);
    if (std::abs(x3 + 2.0 * r1 * r2 * std::sin(psi)) > 1e-6 * scale)
        throw ConventionViolation("cell_coords: wall Hamiltonian nonzero");
    if (psi < 0) psi = 0;  // only roundoff can place it below
    const double s = (r1 + std::sqrt(r1 * r1 + 4.0 * r2)) / 2.0;
    CellCoordinates cc;
    cc.r2 = r2 / (s * s);
    cc.psi = psi;
    cc.theta2 = th2;
    cc.eps2 = std::cos(psi) >= 0 ? 1 : -1;
    cc.eps3 = std::sin(th1) >= 0 ? 1 : -1;
    return cc;
}

FullerState from_cell_coords(const CellCoordinates& cc) {
    const double r1 = 1.0 - cc.r2;
    const double th1 = cc.theta2 - cc.psi;
    FullerState z;
    z.z1 = std::polar(r1, th1);
    z.z2 = std::polar(cc.r2, cc.theta2);
    z.z3 = Cx(-2.0 * r1 * cc.r2 * std::sin(cc.psi), 0.0);
    return z;
}

CellClass cell_classify(const CellCoordinates& cc) {
    const FullerState z = from_cell_coords(cc);
    const bool first_cell = cc.theta2 > 0;
    const Cx u = first_cell ? kZeta : std::conj(kZeta);
    const std::array<double, 4> ca = switch_coeffs(z, u, u - Cx(1, 0));
    const std::array<double, 4> cb = switch_coeffs(z, u, u - std::conj(u));
    const double tA = least_positive_root(ca);
    const double tB = least_positive_root(cb);
    const bool active_a = tA < tB;
    CellClass cl;
    if (!first_cell) {
        cl.part = active_a ? CellPart::D2 : CellPart::D3;
        return cl;
    }
    if (!active_a) {
        cl.part = CellPart::D4;
        return cl;
    }
    // The bubble between the two boundary surfaces is where the competitor
    // switching cubic stays positive through its local minimum and only
    // crosses zero on the final descending branch: the active root is then
    // the continuation of the large-time branch, not of the branch coming
    // off the theta2 = pi face.
    if (ca[3] != 0) {
        const double half_b = ca[2] / (3.0 * ca[3]);
        const double disc = half_b * half_b - ca[1] / (3.0 * ca[3]);
        if (disc > 0) {
            // leading coefficient is negative, so the smaller critical
            // point is the local minimum
            const double t_lo = -half_b - std::sqrt(disc);
            const double chi_lo =
                ca[0] + t_lo * (ca[1] + t_lo * (ca[2] + t_lo * ca[3]));
            if (t_lo > 0 && chi_lo > 0 && tA > t_lo) {
                cl.part = CellPart::D0;
                return cl;
            }
        }
    }
    cl.part = CellPart::D1;
    cl.i = cc.psi < kPi / 3.0 ? 0 : (cc.psi < 2.0 * kPi / 3.0 ? 1 : 2);
    cl.j = cc.theta2 > kPi - 1.1 ? 0 : (cc.theta2 > 1.1 ? 1 : 2);
    return cl;
}

const char* cell_part_name(const CellClass& c) {
    if (c.in_d_out()) return "D_out";
    if (c.in_d_in()) return "D_in";
    switch (c.part) {
        case CellPart::D0:
            return "D0";
        case CellPart::D1:
            return "D1";
        case CellPart::D2:
            return "D2";
        case CellPart::D3:
            return "D3";
        default:
            return "D4";
    }
}

std::array<Cx, 3> q_out_section_eigs() {
    const CellCoordinates c0 = q_out_coords();
    auto G = [](const CellCoordinates& cc) {
        return cell_coords(fuller_poincare(from_cell_coords(cc)));
    };
    const double h = 1e-6;
    Eigen::Matrix3d J;
    for (int k = 0; k < 3; ++k) {
        CellCoordinates p = c0, m = c0;
        (k == 0 ? p.r2 : k == 1 ? p.psi : p.theta2) += h;
        (k == 0 ? m.r2 : k == 1 ? m.psi : m.theta2) -= h;
        const CellCoordinates gp = G(p), gm = G(m);
        J(0, k) = (gp.r2 - gm.r2) / (2 * h);
        J(1, k) = (gp.psi - gm.psi) / (2 * h);
        J(2, k) = (gp.theta2 - gm.theta2) / (2 * h);
    }
    const Eigen::EigenSolver<Eigen::Matrix3d> es(J);
    std::array<Cx, 3> out;
    for (int k = 0; k < 3; ++k) out[k] = es.eigenvalues()[k];
    return out;
}

BasinReport basin_check(int samples, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::uniform_real_distribution<double> unif(0, 1);
    BasinReport rep;
    const CellCoordinates cq = q_out_coords();

    auto image_class = [](const CellCoordinates& cc) {
        return cell_classify(cell_coords(fuller_poincare(from_cell_coords(cc))));
    };

    // (a) absorbing-box boundary mesh: faces of
    //     [0,1] x [0, pi/3] x [pi - 1.1, pi] intersected with D1
    {
        const double in_small = 1e-9, in_edge = 1e-5;
        const double plo = in_edge, phi = kPi / 3.0 - in_small;
        const double tlo = kPi - 1.1 + in_small, thi = kPi - in_edge;
        const double rlo = 1e-4, rhi = 1.0 - 1e-4;
        const int n = std::max(2, (int)std::lround(std::sqrt(samples / 6.0)));
        auto probe = [&](double r2, double ps, double t2) {
            CellCoordinates cc;
            cc.r2 = r2;
            cc.psi = ps;
            cc.theta2 = t2;
            if (!cell_classify(cc).in_d_out()) return;  // not on the part
            ++rep.boundary_samples;
            if (!image_class(cc).in_d_out()) ++rep.boundary_failures;
        };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double a = (i + 0.5) / n, b = (j + 0.5) / n;
                probe(rlo, plo + a * (phi - plo), tlo + b * (thi - tlo));
                probe(rhi, plo + a * (phi - plo), tlo + b * (thi - tlo));
                probe(rlo + a * (rhi - rlo), plo, tlo + b * (thi - tlo));
                probe(rlo + a * (rhi - rlo), phi, tlo + b * (thi - tlo));
                probe(rlo + a * (rhi - rlo), plo + b * (phi - plo), tlo);
                probe(rlo + a * (rhi - rlo), plo + b * (phi - plo), thi);
            }
    }

    // (b) part-transition table on random points per part
    {
        auto draw = [&](bool first_cell) {
            CellCoordinates cc;
            cc.r2 = 0.02 + 0.96 * unif(g);
            cc.psi = 0.02 + (kPi - 0.04) * unif(g);
            cc.theta2 = 0.02 + (kPi - 0.04) * unif(g);
            if (!first_cell) cc.theta2 = -cc.theta2;
            return cc;
        };
        std::vector<CellCoordinates> d_out, d1_rest, d2, d3, d0, d4;
        const int want = samples;
        long guard = 0;
        while (((int)d2.size() < want || (int)d3.size() < want ||
                (int)d1_rest.size() < want || (int)d_out.size() < want) &&
               guard++ < 4000L * want) {
            const bool fc = guard % 2 == 0;
            const CellCoordinates cc = draw(fc);
            CellClass cl;
            try {
                cl = cell_classify(cc);
            } catch (const ReinhardtError&) {
                continue;
            }
            if (cl.part == CellPart::D2 && (int)d2.size() < want)
                d2.push_back(cc);
            else if (cl.part == CellPart::D3 && (int)d3.size() < want)
                d3.push_back(cc);
            else if (cl.in_d_out() && (int)d_out.size() < want)
                d_out.push_back(cc);
            else if (cl.part == CellPart::D1 && !cl.in_d_in() &&
                     (int)d1_rest.size() < want)
                d1_rest.push_back(cc);
            else if (cl.part == CellPart::D0 && (int)d0.size() < want)
                d0.push_back(cc);
        }
        // D0 is a thin bubble; uniform rejection almost never hits it, so
        // sample inside its bounding box instead
        {
            long g0 = 0;
            while ((int)d0.size() < want && g0++ < 40000L * want) {
                CellCoordinates cc;
                cc.r2 = 0.18 + 0.10 * unif(g);
                cc.psi = 2.94 + 0.15 * unif(g);
                cc.theta2 = 0.02 + 0.31 * unif(g);
                try {
                    if (cell_classify(cc).part == CellPart::D0)
                        d0.push_back(cc);
                } catch (const ReinhardtError&) {
                }
            }
        }
        // D4 = involution image of D3
        for (const CellCoordinates& cc : d3) {
            if ((int)d4.size() >= want) break;
            const CellCoordinates im =
                cell_coords(time_reverse(fuller_poincare(from_cell_coords(cc))));
            if (cell_classify(im).part == CellPart::D4) d4.push_back(im);
        }

        auto check = [&](const std::vector<CellCoordinates>& pts, auto pred,
                         int hops) {
            for (const CellCoordinates& cc : pts) {
                ++rep.table_samples;
                try {
                    CellCoordinates cur = cc;
                    for (int h = 0; h < hops; ++h)
                        cur = cell_coords(fuller_poincare(from_cell_coords(cur)));
                    if (!pred(cell_classify(cur))) ++rep.table_failures;
                } catch (const ReinhardtError&) {
                    ++rep.table_failures;
                }
            }
        };
        auto is_d3 = [](const CellClass& c) { return c.part == CellPart::D3; };
        auto is_d23 = [](const CellClass& c) {
            return c.part == CellPart::D2 || c.part == CellPart::D3;
        };
        auto is_d1_not_in = [](const CellClass& c) {
            return c.part == CellPart::D1 && !c.in_d_in();
        };
        auto is_out = [](const CellClass& c) { return c.in_d_out(); };
        check(d_out, is_out, 1);
        check(d1_rest, is_d1_not_in, 1);
        check(d2, is_d3, 1);
        check(d3, is_d1_not_in, 1);
        check(d3, is_out, 2);
        check(d4, is_d23, 1);
        check(d0, is_d1_not_in, 1);
    }

    // (c) random wall states converge to the expanding fixed point
    {
        rep.orbits = samples;
        for (int n = 0; n < samples; ++n) {
            CellCoordinates cc;
            cc.r2 = 0.01 + 0.98 * unif(g);
            cc.psi = 0.01 + (kPi - 0.02) * unif(g);
            cc.theta2 = -kPi + 2.0 * kPi * unif(g);
            bool done = false;
            for (int it = 1; it <= 300 && !done; ++it) {
                try {
                    cc = cell_coords(fuller_poincare(from_cell_coords(cc)));
                } catch (const ReinhardtError&) {
                    break;
                }
                if (cell_dist(cc, cq) < 1e-8) {
                    ++rep.converged;
                    rep.max_iterations = std::max(rep.max_iterations, it);
                    done = true;
                }
            }
        }
    }
    return rep;
}

}  // namespace reinhardt
