#include "reinhardt/ode.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace reinhardt {

namespace {

// Dormand-Prince 4(5) coefficients.
const double a21 = 1.0 / 5;
const double a31 = 3.0 / 40, a32 = 9.0 / 40;
const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
             a53 = 64448.0 / 6561, a54 = -212.0 / 729;
const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
             a64 = 49.0 / 176, a65 = -5103.0 / 18656;
const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
             b5 = -2187.0 / 6784, b6 = 11.0 / 84;
const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
             e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Stepper {
    const OdeRhs& rhs;
    int n;
    Vec k1, k2, k3, k4, k5, k6, k7, tmp;

    Stepper(const OdeRhs& f, int dim)
        : rhs(f), n(dim), k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim),
          k7(dim), tmp(dim) {}

    // One trial step from (t, y) with size h; fills yout and err estimate.
    // k1 must already hold rhs(t, y).
    void step(double t, const Vec& y, double h, Vec& yout, double& err,
              const Vec& scale) {
        for (int i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + h / 5, tmp, k2);
        for (int i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + 3 * h / 10, tmp, k3);
        for (int i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + 4 * h / 5, tmp, k4);
        for (int i = 0; i < n; ++i)
            tmp[i] = y[i] +
                     h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + 8 * h / 9, tmp, k5);
        for (int i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                 a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, tmp, k6);
        for (int i = 0; i < n; ++i)
            yout[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                  b5 * k5[i] + b6 * k6[i]);
        rhs(t + h, yout, k7);
        err = 0;
        for (int i = 0; i < n; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                   e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            err = std::max(err, std::abs(ei) / scale[i]);
        }
    }

    // 5th order solution at t + s starting from (t, y); single step, used
    // only for event bisection inside an accepted step.
    void eval(double t, const Vec& y, double s, Vec& yout) {
        rhs(t, y, k1);
        double err;
        Vec scale(n, 1.0);
        step(t, y, s, yout, err, scale);
    }
};

}  // namespace

OdeResult integrate(const OdeRhs& rhs, double t0, const Vec& y0, double t1,
                    const OdeOptions& opts, const std::vector<EventFn>& events,
                    const StepObserver& observer) {
    const int n = static_cast<int>(y0.size());
    const double dir = t1 >= t0 ? 1.0 : -1.0;
    Stepper st(rhs, n);

    OdeResult res;
    res.t = t0;
    res.y = y0;

    Vec ynew(n), scale(n), ev_prev(events.size()), ev_cur(events.size());
    for (size_t j = 0; j < events.size(); ++j) ev_prev[j] = events[j](t0, y0);

    double h = dir * std::min(opts.initial_step, opts.max_step);
    rhs(res.t, res.y, st.k1);

    for (int step = 0; step < opts.max_steps; ++step) {
        if (dir * (res.t - t1) >= 0) return res;
        if (dir * (res.t + h - t1) > 0) h = t1 - res.t;

        for (int i = 0; i < n; ++i)
            scale[i] = opts.abs_tol + opts.rel_tol * std::abs(res.y[i]);
        double err;
        st.step(res.t, res.y, h, ynew, err, scale);

        if (err > 1.0) {
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
            if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(res.t)))
                throw std::runtime_error("integrate: step size underflow");
            continue;
        }

        const double t_new = res.t + h;
        res.steps++;

        // event detection on the accepted step
        bool hit = false;
        double t_hit = t_new;
        int idx_hit = -1;
        for (size_t j = 0; j < events.size(); ++j) {
            ev_cur[j] = events[j](t_new, ynew);
            if (std::abs(ev_prev[j]) <= opts.event_zero_tol) continue;
            if ((ev_prev[j] > 0 && ev_cur[j] <= 0) ||
                (ev_prev[j] < 0 && ev_cur[j] >= 0)) {
                // bisect inside [res.t, t_new]
                double lo = 0, hi = h, flo = ev_prev[j];
                Vec ymid(n);
                while (std::abs(hi - lo) > opts.event_time_tol) {
                    const double mid = 0.5 * (lo + hi);
                    st.eval(res.t, res.y, mid, ymid);
                    const double fm = events[j](res.t + mid, ymid);
                    if ((flo > 0 && fm <= 0) || (flo < 0 && fm >= 0))
                        hi = mid;
                    else {
                        lo = mid;
                        flo = fm;
                    }
                }
                const double tj = res.t + hi;
                if (!hit || dir * (tj - t_hit) < 0) {
                    hit = true;
                    t_hit = tj;
                    idx_hit = static_cast<int>(j);
                }
            }
        }
        if (hit) {
            Vec yhit(n);
            st.eval(res.t, res.y, t_hit - res.t, yhit);
            res.t = t_hit;
            res.y = yhit;
            res.event_hit = true;
            res.event_index = idx_hit;
            return res;
        }

        res.t = t_new;
        res.y = ynew;
        st.k1 = st.k7;  // FSAL
        ev_prev = ev_cur;
        if (observer && !observer(res.t, res.y)) return res;

        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::clamp(fac, 0.2, 5.0);
        if (std::abs(h) > opts.max_step) h = dir * opts.max_step;
    }
    throw std::runtime_error("integrate: max step count exceeded");
}

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
const double xgk[8] = {0.991455371120813, 0.949107912342759,
                       0.864864423359769, 0.741531185599394,
                       0.586087235467691, 0.405845151377397,
                       0.207784955007898, 0.0};
const double wgk[8] = {0.022935322010529, 0.063092092629979,
                       0.104790010322250, 0.140653259715525,
                       0.169004726639267, 0.190350578064785,
                       0.204432940075298, 0.209482141084728};
const double wg[4] = {0.129484966168870, 0.279705391489277,
                      0.381830050505119, 0.417959183673469};

void gk15(const std::function<double(double)>& f, double a, double b,
          double& result, double& err) {
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    double resk = 0, resg = 0;
    for (int i = 0; i < 8; ++i) {
        double fv;
        if (i == 7) {
            fv = f(c);
            resk += wgk[7] * fv;
            resg += wg[3] * fv;
        } else {
            const double f1 = f(c - hw * xgk[i]);
            const double f2 = f(c + hw * xgk[i]);
            resk += wgk[i] * (f1 + f2);
            if (i % 2 == 1) resg += wg[i / 2] * (f1 + f2);
        }
    }
    result = resk * hw;
    err = std::abs((resk - resg) * hw);
}

double quad_rec(const std::function<double(double)>& f, double a, double b,
                double tol, int depth) {
    double r, e;
    gk15(f, a, b, r, e);
    if (e <= tol || depth <= 0) return r;
    const double m = 0.5 * (a + b);
    return quad_rec(f, a, m, tol / 2, depth - 1) +
           quad_rec(f, m, b, tol / 2, depth - 1);
}

}  // namespace

double quad(const std::function<double(double)>& f, double a, double b,
            double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    return quad_rec(f, a, b, abs_tol, max_depth);
}

}  // namespace reinhardt
