#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tricone/angles.hpp"
#include "tricone/numerics.hpp"
#include "tricone/rational.hpp"

namespace tricone {

// Parameters of the Gauss equation z(1-z)w'' + (c-(a+b+1)z)w' - ab w = 0,
// kept as exact rationals. The branch is fixed so that the exponent
// differences sit at the right singular points:
//   at 0:   1 - c     = theta1
//   at 1:   c - a - b = theta2
//   at inf: a - b     = theta3
// which solves to a = (1-theta1-theta2+theta3)/2, b = a - theta3, c = 1-theta1.
struct HypergeomParams {
    Rational a, b, c;

    double ad() const { return a.to_double(); }
    double bd() const { return b.to_double(); }
    double cd() const { return c.to_double(); }
};

HypergeomParams params_from_triple(const AngleTriple& t);

// Power-series solution at z = 0. For the exponent-0 branch the recurrence
//   [k(k-1) + ck] a_k = [(k-1)(k-2) + (a+b+1)(k-1) + ab] a_{k-1}
// runs with a_0 = 1; the left factor vanishes exactly at k = 1-c = N when N is
// a positive integer, and the series continues through the resonance (with
// a_N := 0) only when the right side vanishes there too.
struct SeriesSolution {
    double exponent = 0.0;          // 0 or 1-c
    std::vector<double> coeffs;     // a_0 .. a_K
    int resonance_at = -1;          // index where a_k was free and set to 0
};

struct ResonantIndex : std::runtime_error {
    int index;
    explicit ResonantIndex(int k)
        : std::runtime_error("logarithmic solution: resonance at k = " + std::to_string(k)),
          index(k) {}
};
struct Singular : std::domain_error {
    using std::domain_error::domain_error;
};
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PathTooClose : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StepUnderflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotInteger : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

SeriesSolution series_coefficients(const HypergeomParams& p, int order);

// True iff the formal solutions at the chosen singular point (0, 1, or 2 for
// infinity) are free of logarithms. Requires the cone parameter there to be a
// positive integer N; the test is the exact rational condition
//   exists n in [1, N]: (n-1)(a+b+n-1) + ab = 0
// after relabeling the singularity to 0.
bool log_free_at_singularity(const AngleTriple& t, int which);

// Values and derivatives of two independent solutions at a point:
// rows (w1 w2; w1' w2'), columns index the solutions.
struct FundamentalMatrix {
    Mat2 value;
    cplx at{0.0, 0.0};

    cplx wronskian() const { return value.det(); }
};

struct ContinuationOptions {
    double tol = 1e-12;            // local error target per step
    double min_clearance = 1e-7;   // reject paths closer to a singular point
    double max_step_fraction = 0.25;  // step <= fraction * distance to singularity
    // Integrate in long double. Monodromy products amplify integration error
    // by ||M||^2, so loop computations need the extra digits; pointwise
    // metric evaluation does not and stays in double for speed.
    bool extended_precision = false;
};

// Frobenius basis at 0 evaluated at z (|z| <= 0.8 directly; larger |z| is
// reached by continuation along a safe path). Throws Singular at z in {0,1},
// ResonantIndex in the logarithmic case.
FundamentalMatrix evaluate_basis(const HypergeomParams& p, cplx z,
                                 const ContinuationOptions& opts = {});

// Continues F0 along a polyline using an adaptive Dormand-Prince step on the
// first-order system. Deterministic for fixed path and options.
FundamentalMatrix continue_along_path(const HypergeomParams& p,
                                      const std::vector<cplx>& path,
                                      const FundamentalMatrix& f0,
                                      const ContinuationOptions& opts = {});

// As above, but the polyline lives in the w = 1/z chart; the state stays
// (w(z), dw/dz). Used for paths that approach infinity.
FundamentalMatrix continue_along_path_inverted(const HypergeomParams& p,
                                               const std::vector<cplx>& path_w,
                                               const FundamentalMatrix& f0,
                                               const ContinuationOptions& opts = {});

// Polyline from `from` to `to` that detours around 0 and 1 whenever the
// straight segment would pass within `clearance` of either. Endpoints are
// kept verbatim; detour arcs are inserted at radius `clearance`.
std::vector<cplx> safe_path(cplx from, cplx to, double clearance = 0.25);

} // namespace tricone
