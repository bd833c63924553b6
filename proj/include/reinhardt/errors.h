#pragma once

#include <stdexcept>
#include <string>

namespace reinhardt {

// Base class for all toolkit errors so callers can catch one type.
struct ReinhardtError : std::runtime_error {
    explicit ReinhardtError(const std::string& msg) : std::runtime_error(msg) {}
};

// Trajectory or query point left the admissible star-shaped domain in the
// upper half-plane (denominator of the state field crossed zero).
struct StarViolation : ReinhardtError {
    explicit StarViolation(const std::string& msg) : ReinhardtError(msg) {}
};

// Extremal integration ran into the singular locus: the rotational costate
// collapsed or an edge face persisted too long for bang-bang stepping.
struct SingularApproach : ReinhardtError {
    explicit SingularApproach(const std::string& msg) : ReinhardtError(msg) {}
};

// Input violated a structural convention (determinant, normalization,
// sign restriction) required by a chart or constructor.
struct ConventionViolation : ReinhardtError {
    explicit ConventionViolation(const std::string& msg) : ReinhardtError(msg) {}
};

// The quadratic selecting the circular control degenerated (c = 0).
struct DegenerateControl : ReinhardtError {
    explicit DegenerateControl(const std::string& msg) : ReinhardtError(msg) {}
};

// Linear system used to reconstruct a costate from chart data lost rank.
struct RankDeficiency : ReinhardtError {
    explicit RankDeficiency(const std::string& msg) : ReinhardtError(msg) {}
};

// Event search found no switching time within the allowed window.
struct NoSwitch : ReinhardtError {
    explicit NoSwitch(const std::string& msg) : ReinhardtError(msg) {}
};

// A control schedule left the interior wall structure (circular Fuller
// trajectories hitting |z3| = 0).
struct WallHit : ReinhardtError {
    explicit WallHit(const std::string& msg) : ReinhardtError(msg) {}
};

}  // namespace reinhardt
