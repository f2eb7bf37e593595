#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "tricone/angles.hpp"
#include "tricone/numerics.hpp"

namespace tricone {

// One side of a circular-arc triangle: either a straight segment or an arc of
// the circle |z - center| = radius, parametrized center + radius*e^{i(start +
// t*sweep)} for t in [0, 1].
struct Arc {
    bool is_line = false;
    cplx center{0.0, 0.0};
    double radius = 0.0;
    cplx p0{0.0, 0.0}, p1{0.0, 0.0};
    double start_angle = 0.0;
    double sweep = 0.0;

    cplx sample(double t) const;
    cplx direction_at_start() const;
    cplx direction_at_end() const;
};

// Vertices are stereographic images (projection from the south pole, the
// north pole mapping to 0); side[k] runs vertex[k] -> vertex[(k+1)%3],
// positively oriented. Interior angles in radians.
struct CircularArcTriangle {
    std::array<cplx, 3> vertex;
    std::array<Arc, 3> side;
    std::array<double, 3> angle;

    // Interior angle at vertex k recomputed from the arc tangents.
    double angle_from_arcs(int k) const;
    // Dense boundary polyline (for winding tests and bounding boxes).
    std::vector<cplx> boundary(int samples_per_side = 64) const;
};

struct NotGeodesizable : std::domain_error {
    using std::domain_error::domain_error;
};
struct NotConstructible : std::domain_error {
    using std::domain_error::domain_error;
};

// The circular triangle with interior angles pi*theta_j, in the normalization
// with vertex[0] = 0, vertex[1] = 1, the first side the real segment between
// them and the third vertex in the upper half-plane. Canonical triples always
// satisfy the construction constraints; other positive triples with every
// angle below pi are accepted when a one-sheet triangle with those angles
// exists (spherical case: pairwise angle differences below pi).
CircularArcTriangle schwarz_triangle(const CanonicalTriple& c);
CircularArcTriangle triangle_with_angles(const std::array<double, 3>& theta_pi_units);

// Mobius image of T whose sides lie on great circles (stereographically:
// circles invariant under z -> -1/conj(z), or lines through 0). Requires the
// angle sum to exceed pi.
CircularArcTriangle geodesize(const CircularArcTriangle& t);

// Theorem-level predicate: a triangular membrane with interior angles
// pi*theta_j exists iff the metric with cone angles 2*pi*theta_j does.
ExistenceVerdict membrane_exists(const AngleTriple& theta_pi_units);

struct SvgOptions {
    double size = 480.0;
    double margin = 28.0;
    int precision = 9;
    bool labels = true;
};

std::string to_svg(const CircularArcTriangle& t, const SvgOptions& options = {});

} // namespace tricone
