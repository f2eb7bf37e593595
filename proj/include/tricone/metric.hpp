#pragma once

#include <optional>
#include <stdexcept>

#include "tricone/angles.hpp"
#include "tricone/hypergeom.hpp"
#include "tricone/monodromy.hpp"

namespace tricone {

// Everything needed to evaluate the developing map f and the metric density
//   lambda(z) = 2 |f'(z)| / (1 + |f(z)|^2)
// away from the singular points. The fundamental system is seeded with the
// identity frame at the basepoint and post-multiplied by `frame`, chosen so
// that (when the monodromy is unitarizable) the continued row (w1, w2)
// transforms under U(2) and lambda is single-valued; the last factor rotates
// f to 0 at the basepoint.
struct DevelopingContext {
    AngleTriple triple;
    HypergeomParams params;
    MonodromyRep rep;
    bool unitarizable = false;
    Mat2 frame = Mat2::identity();
    cplx basepoint{0.5, 0.0};
    ContinuationOptions ode{1e-12, 1e-8, 0.25};
};

struct MetricSample {
    cplx z;
    double lambda = 0.0;
};

struct FitUnstable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct QuadratureBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MetricUndefined : std::domain_error {
    using std::domain_error::domain_error;
};

DevelopingContext make_developing_context(const AngleTriple& t,
                                          const MonodromyOptions& opts = {});

// f and f' extracted from a framed fundamental matrix: f = u/v on the value
// row, f' = -det/v^2.
struct DevelopingValue {
    cplx f;
    cplx df;
};
DevelopingValue developing_value(const DevelopingContext& ctx, const FundamentalMatrix& fm);
double density_value(const DevelopingContext& ctx, const FundamentalMatrix& fm);

// Continuation of the context's fundamental system from the basepoint to z
// along safe_path (or a caller-supplied polyline through `via`).
FundamentalMatrix fundamental_at(const DevelopingContext& ctx, cplx z);
FundamentalMatrix fundamental_along(const DevelopingContext& ctx,
                                    const std::vector<cplx>& path);

DevelopingValue developing_map(const DevelopingContext& ctx, cplx z);
MetricSample density(const DevelopingContext& ctx, cplx z);

// Least-squares slope of log(lambda) against log(r) on rays into the cone
// (r in [1e-4, 1e-2]); equals theta_j - 1 for the cone at 0 (j=0), 1 (j=1),
// infinity (j=2, measured in the w = 1/z chart). Throws FitUnstable when the
// samples are not on a clean power law.
double cone_exponent(const DevelopingContext& ctx, int cone);

// Integral of lambda^2 over the plane (the area of the cone metric), which
// Gauss-Bonnet pins at 2*pi*(theta1+theta2+theta3-1). Polar charts with
// power-law substitution at the three cones, a smooth partition of unity, and
// a periodic-trapezoid angular rule; node counts double until two successive
// refinements agree to rel_tol.
double total_area(const DevelopingContext& ctx, double rel_tol = 1e-4);

// Schwarzian coefficient of the projective structure: the right-hand side
// R(z) that the developing map's Schwarzian derivative must equal.
cplx schwarzian_coefficient(const AngleTriple& t, cplx z);

} // namespace tricone
