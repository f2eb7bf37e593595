#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "tricone/rational.hpp"

namespace tricone {

// Cone parameters (theta1, theta2, theta3). The metric has total angle
// 2*pi*theta_j at the j-th singular point; a triangular membrane with these
// data has interior angles pi*theta_j. Entries are exact rationals so that
// the integer / non-integer dispatch below is well posed.
struct AngleTriple {
    std::array<Rational, 3> theta;

    AngleTriple(Rational t1, Rational t2, Rational t3) : theta{t1, t2, t3} {
        for (const auto& t : theta)
            if (!t.is_positive())
                throw std::invalid_argument("AngleTriple: entries must be positive");
    }

    const Rational& operator[](int i) const { return theta[static_cast<std::size_t>(i)]; }

    friend bool operator==(const AngleTriple& a, const AngleTriple& b) {
        return a.theta == b.theta;
    }

    std::string str() const {
        return "(" + theta[0].str() + ", " + theta[1].str() + ", " + theta[2].str() + ")";
    }
};

struct TripleClass {
    int integer_count = 0;
    std::array<bool, 3> is_integer{false, false, false};
};

// The unique representative of an equivalence class of non-integer triples
// with all pairwise sums in (0, 1].
struct CanonicalTriple {
    std::array<Rational, 3> theta;

    const Rational& operator[](int i) const { return theta[static_cast<std::size_t>(i)]; }
    Rational sum() const { return theta[0] + theta[1] + theta[2]; }

    friend bool operator==(const CanonicalTriple& a, const CanonicalTriple& b) {
        return a.theta == b.theta;
    }

    std::string str() const {
        return "(" + theta[0].str() + ", " + theta[1].str() + ", " + theta[2].str() + ")";
    }
};

enum class Rule { Theorem1, Theorem2, AllInteger };

struct Theorem1Witness {
    CanonicalTriple canonical;
    Rational canonical_sum;
};

struct Theorem2Witness {
    std::int64_t n = 0;          // the integer entry
    int position = 0;            // 0-based index of the integer entry
    std::optional<std::int64_t> m;  // matched integer (sum or difference), when exists
    enum class Branch { None, Sum, Difference } branch = Branch::None;
    std::string note;
};

struct AllIntegerWitness {
    std::int64_t degree = 0;     // (sum - 1)/2 when admissible
    bool sum_odd = false;
    bool triangle_inequality = false;  // each entry < sum of the other two
};

struct ExistenceVerdict {
    bool exists = false;
    bool unique = false;  // equal to exists: both theorems assert uniqueness
    Rule rule = Rule::Theorem1;
    std::variant<Theorem1Witness, Theorem2Witness, AllIntegerWitness> witness;
};

struct OddShiftSum : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NonPositiveResult : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct IntegerEntry : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Exact integer test on each entry; no tolerances anywhere in this module.
TripleClass classify(const AngleTriple& t);

// One equivalence move: theta_j -> sign_j*theta_j + shift_j where the shifts
// have even total. Monodromy of the associated projective structure is
// unchanged under these moves. Throws OddShiftSum / NonPositiveResult.
AngleTriple apply_move(const AngleTriple& t, std::array<int, 3> signs,
                       std::array<std::int64_t, 3> shifts);

// Reduces a non-integer triple to the representative with all pairwise sums
// in (0, 1]: first each entry is replaced by its distance to the nearest even
// integer (a valid move), then pairs with sum > 1 are folded by
// (x, y) -> (1-x, 1-y), largest sum first, until none remain. Each fold is a
// valid move and strictly decreases the total, so the loop terminates; the
// result is validated against the canonical invariants.
CanonicalTriple canonicalize(const AngleTriple& t);

// Existence and uniqueness of the constant-curvature-1 metric with these
// cone parameters. Dispatch:
//   no integer entry   -> canonical sum > 1
//   one integer entry N-> theta_i+theta_j or |theta_i-theta_j| is an integer
//                         of opposite parity from N, at most N-1
//   two integer entries-> never (the condition would force the third integer)
//   three integers     -> odd total, each less than the sum of the others
ExistenceVerdict decide(const AngleTriple& t);

} // namespace tricone
