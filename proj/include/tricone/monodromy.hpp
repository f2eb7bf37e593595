#pragma once

#include <stdexcept>
#include <vector>

#include "tricone/angles.hpp"
#include "tricone/hypergeom.hpp"
#include "tricone/numerics.hpp"

namespace tricone {

// Monodromy of a fundamental system of the hypergeometric equation along
// positively oriented simple loops around 0, 1 and infinity, based at
// `basepoint` in the frame that is the identity there. The infinity generator
// is produced by genuine continuation around a large loop enclosing both
// finite singular points, so the relation Minf * M1 * M0 = I is a numerical
// check of the continuation engine rather than an identity by construction.
struct MonodromyRep {
    Mat2 m0, m1, minf;
    cplx basepoint{0.5, 0.0};
    double tol = 1e-8;
};

struct MonodromyOptions {
    cplx basepoint{0.5, 0.0};
    double radius = 0.25;
    int samples = 64;
    double tol = 1e-8;          // invariant check tolerance
    // The loop relation amplifies integration error by ||M||^2; loops run in
    // extended precision, where this tolerance is meaningful.
    ContinuationOptions ode{1e-15, 1e-7, 0.25, true};
};

struct BadRadius : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Closed polyline from the basepoint winding once (positively) around the
// chosen finite singularity and zero times around the other.
std::vector<cplx> loop_path(int singularity, cplx basepoint, double radius,
                            int samples);

MonodromyRep monodromy_rep(const AngleTriple& t, const MonodromyOptions& opts = {});

// Same computation for explicitly given equation parameters; the triple
// overload uses the fixed parameter branch. Projective invariants must not
// depend on that choice, which tests verify through this entry point.
MonodromyRep monodromy_rep(const HypergeomParams& p, const MonodromyOptions& opts = {});

enum class GeneratorKind { Identity, Parabolic, Elliptic, Loxodromic };

struct GeneratorClass {
    GeneratorKind kind = GeneratorKind::Identity;
    double rotation = 0.0;  // for elliptic: angle in (0, pi] with |tr| = 2 cos(rotation/2)
};

GeneratorClass classify_generator(const Mat2& m, double tol = 1e-8);

struct UnitarizabilityResult {
    bool unitarizable = false;
    Mat2 witness = Mat2::identity();  // positive definite invariant form when true,
                                      // best candidate otherwise
    double residual = 0.0;            // invariance residual of the candidate
    double eig_ratio = 0.0;           // signed min/max eigenvalue ratio of the candidate
};

struct Indeterminate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Decides whether a positive definite Hermitian H with Mj^* H Mj = H (after
// unit-determinant normalization) exists for j = 0, 1. The invariance
// condition is linear in H; the kernel of the stacked system is searched for
// a definite element, and the verdict is read off the signed eigenvalue ratio:
// at least 1e-6 for true, at most 1e-8 (or indefinite) for false, Indeterminate
// between.
UnitarizabilityResult is_unitarizable(const MonodromyRep& rep);

// Shared helper: same decision applied to arbitrary unit-determinant
// generators. Used by the metric module to build its unitary frame.
UnitarizabilityResult invariant_hermitian_form(const std::vector<Mat2>& generators);

} // namespace tricone
