#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tricone/angles.hpp"
#include "tricone/numerics.hpp"

namespace tricone {

// A rational function P/Q in reduced form, coefficient lists low to high.
struct RationalMap {
    std::vector<cplx> num;
    std::vector<cplx> den;
    int degree = 0;

    cplx eval(cplx z) const;
};

struct NotAdmissible : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SolveFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Degree of the rational developing map for an admissible all-integer triple:
// d = (theta1 + theta2 + theta3 - 1)/2. Throws NotAdmissible when the sum is
// even or some entry is at least the sum of the others.
std::int64_t degree_for(const AngleTriple& t);

// Constructs the rational map with local degrees (theta1, theta2, theta3) at
// (0, 1, infinity), critical values normalized to (0, 1, infinity) and no
// other critical points. With that normalization the map is f = z^m0 P / Q
// and the forced vanishing of f - 1 at z = 1 is a square linear system in the
// coefficients, solved exactly in rational arithmetic.
RationalMap construct(const AngleTriple& t);

// Numerically checks the local degrees at 0, 1, infinity and the absence of
// extra critical points (the derivative numerator must be C z^(m0-1)(z-1)^(m1-1)
// exactly). Tolerance 1e-8 relative.
bool verify(const RationalMap& f, const AngleTriple& t);

// Number of Mobius-post-composition classes of degree-d rational maps with
// 2d-2 prescribed generic simple critical points: (1/d) * binom(2d-2, d-1).
std::int64_t catalan_count(std::int64_t d);

} // namespace tricone
