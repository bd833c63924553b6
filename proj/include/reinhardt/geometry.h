#pragma once

#include <array>
#include <complex>

#include "reinhardt/sl2.h"

namespace reinhardt {

// Centrally symmetric hexagon inscribed in the critical configuration,
// vertices in cyclic order.
struct Hexagon {
    std::array<std::complex<double>, 6> vertices;

    explicit Hexagon(const std::array<std::complex<double>, 6>& v,
                     double tol = 1e-10);

    // Midpoint of the edge from vertices[j] to vertices[(j+1)%6].
    std::complex<double> edge_midpoint(int j) const;
    // Signed (shoelace) area.
    double area() const;
};

// Per-corner triangle data behind the packing density of the configuration
// attached to a point of the upper half-plane.
struct DensityReport {
    std::array<double, 3> T;          // inner triangle areas
    std::array<double, 3> T_ext;      // outer comparison triangles
    std::array<bool, 3> indicator;    // T[i] >= T_ext[i]
    std::array<double, 3> corner;     // corner contribution when indicator on
    double delta;                     // resulting density
};

// Hexagon attached to z through the tangent matrix phi(z).
// Throws StarViolation outside the open star domain.
Hexagon hexagon_from_point(const HalfPlanePoint& z);

// Density of the critical packing attached to z.
DensityReport density_report(const HalfPlanePoint& z);

// True when z survives the truncation of the star domain (the region kept
// after removing the cusp neighborhoods where the density beats the octagon).
bool exclusion_test(const HalfPlanePoint& z);

}  // namespace reinhardt
