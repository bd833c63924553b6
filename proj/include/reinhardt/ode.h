#pragma once

#include <functional>
#include <vector>

namespace reinhardt {

using Vec = std::vector<double>;
using OdeRhs = std::function<void(double t, const Vec& y, Vec& dy)>;
using EventFn = std::function<double(double t, const Vec& y)>;

struct OdeOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double initial_step = 1e-3;
    double max_step = 1.0;
    double event_time_tol = 1e-12;
    // |event| values at or below this are treated as "sitting on the surface":
    // they update the sign baseline instead of triggering a root search.
    double event_zero_tol = 0.0;
    int max_steps = 2'000'000;
};

struct OdeResult {
    double t = 0;
    Vec y;
    bool event_hit = false;  // stopped on an event root rather than at t1
    int event_index = -1;
    int steps = 0;
};

// Per-step observer; return false to abort integration at that point.
using StepObserver = std::function<bool(double t, const Vec& y)>;

// Dormand-Prince 4(5) with adaptive steps.  If events are supplied, the
// integration stops at the first time where some event function crosses
// zero (located by bisection to opts.event_time_tol).
OdeResult integrate(const OdeRhs& rhs, double t0, const Vec& y0, double t1,
                    const OdeOptions& opts = {},
                    const std::vector<EventFn>& events = {},
                    const StepObserver& observer = nullptr);

// Adaptive Gauss-Kronrod 7-15 quadrature to an absolute tolerance.
double quad(const std::function<double(double)>& f, double a, double b,
            double abs_tol = 1e-11, int max_depth = 48);

}  // namespace reinhardt
