#pragma once

// Independent numerical oracles for the test suite.  Everything here is
// deliberately self-contained: plain RK4, composite Simpson, and hand-checked
// reference constants.  None of it calls into the library under test.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

// Classical fixed-step RK4.
inline Vec rk4(const std::function<void(double, const Vec&, Vec&)>& f,
               double t0, Vec y, double t1, int nsteps) {
    const double h = (t1 - t0) / nsteps;
    const int n = static_cast<int>(y.size());
    Vec k1(n), k2(n), k3(n), k4(n), tmp(n);
    double t = t0;
    for (int s = 0; s < nsteps; ++s) {
        f(t, y, k1);
        for (int i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        f(t + 0.5 * h, tmp, k2);
        for (int i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        f(t + 0.5 * h, tmp, k3);
        for (int i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
        f(t + h, tmp, k4);
        for (int i = 0; i < n; ++i)
            y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        t += h;
    }
    return y;
}

// Composite Simpson quadrature with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int n = 2000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// --- small 2x2 helpers, independent of the library types ---

using M2 = std::array<double, 4>;  // row major [a, b; c, d]

inline M2 mul(const M2& x, const M2& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}
inline double tr(const M2& x) { return x[0] + x[3]; }
inline double det(const M2& x) { return x[0] * x[3] - x[1] * x[2]; }

// exp(tX) for traceless X by scaling-and-squaring of the Taylor series.
inline M2 exp_taylor(M2 x, double t) {
    for (auto& v : x) v *= t;
    int squarings = 0;
    double norm = std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]) + std::abs(x[3]);
    while (norm > 0.25) {
        for (auto& v : x) v *= 0.5;
        norm *= 0.5;
        ++squarings;
    }
    M2 result{1, 0, 0, 1}, term{1, 0, 0, 1};
    for (int k = 1; k <= 20; ++k) {
        term = mul(term, x);
        for (auto& v : term) v /= k;
        for (int i = 0; i < 4; ++i) result[i] += term[i];
    }
    for (int s = 0; s < squarings; ++s) result = mul(result, result);
    return result;
}

// --- frozen reference constants (hand-verified before implementation) ---

// Density of the smoothed octagon, (8 - sqrt(32) - ln 2) / (sqrt(8) - 1).
inline double octagon_density() {
    return (8.0 - std::sqrt(32.0) - std::log(2.0)) / (std::sqrt(8.0) - 1.0);
}

// Octagon profile height: y0^2 = (sqrt(8) - 1) / 3.
inline double octagon_y0() { return std::sqrt((std::sqrt(8.0) - 1.0) / 3.0); }

// Octagon switching time, ln(2) / (2 sqrt(sqrt(8) - 1)).
inline double octagon_tsw() {
    return std::log(2.0) / (2.0 * std::sqrt(std::sqrt(8.0) - 1.0));
}

// Area of the smoothed octagon with the normalization used throughout:
// density * sqrt(12).
inline double octagon_area() { return octagon_density() * std::sqrt(12.0); }

// One edge of the octagon accounts for a quarter of the area (4 congruent
// pieces per boundary circuit in these coordinates): checked by Simpson
// integration of (3/2)(x^2 + y^2 + 1)/y along the first constant-control arc.
inline double octagon_edge_cost() { return octagon_area() / 4.0; }

// Triangle density at z = (0, 4.5): hand evaluation of the hexagon density
// formula (rho = (0.1283001, 0.1283001, 3.8329622), two of three corner
// indicators on), frozen to five digits.
inline double density_at_0_45() { return 0.90590; }

// Fixed point data of the triangular switching system: the scale factor is
// the root > 1 of 1 - 5r - 7r^2 - 5r^3 - 7r^4 - 5r^5 + r^6.
inline double sextic(double r) {
    return 1 - 5 * r - 7 * r * r - 5 * r * r * r - 7 * r * r * r * r -
           5 * r * r * r * r * r + r * r * r * r * r * r;
}
inline double r_scale() {
    // bisection, independent of the library's solver
    double lo = 6.0, hi = 6.5;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (sextic(mid) > 0)
            hi = mid;  // sextic is +inf at +inf and negative at 6
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

inline std::mt19937_64 rng(unsigned seed) { return std::mt19937_64(seed); }

}  // namespace oracle
