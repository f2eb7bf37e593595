#include "tricone/angles.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace tricone {

TripleClass classify(const AngleTriple& t) {
    TripleClass c;
    for (int i = 0; i < 3; ++i) {
        if (t[i].is_integer()) {
            c.is_integer[static_cast<std::size_t>(i)] = true;
            ++c.integer_count;
        }
    }
    return c;
}

AngleTriple apply_move(const AngleTriple& t, std::array<int, 3> signs,
                       std::array<std::int64_t, 3> shifts) {
    std::int64_t total = shifts[0] + shifts[1] + shifts[2];
    if (total % 2 != 0)
        throw OddShiftSum("apply_move: shift total must be even, got " + std::to_string(total));
    std::array<Rational, 3> out;
    for (std::size_t j = 0; j < 3; ++j) {
        if (signs[j] != 1 && signs[j] != -1)
            throw std::invalid_argument("apply_move: signs must be +1 or -1");
        out[j] = (signs[j] == 1 ? t.theta[j] : -t.theta[j]) + Rational(shifts[j]);
        if (!out[j].is_positive())
            throw NonPositiveResult("apply_move: entry " + std::to_string(j + 1) +
                                    " becomes " + out[j].str());
    }
    return AngleTriple(out[0], out[1], out[2]);
}

namespace {

// Distance from a positive non-integer rational to the nearest even integer.
// This is itself reachable by one move component: theta -> +-theta + even.
Rational dist_to_even(const Rational& theta) {
    std::int64_t k = (theta / Rational(2)).round_nearest();
    return (theta - Rational(2 * k)).abs();
}

} // namespace

CanonicalTriple canonicalize(const AngleTriple& t) {
    for (int i = 0; i < 3; ++i)
        if (t[i].is_integer())
            throw IntegerEntry("canonicalize: entry " + std::to_string(i + 1) +
                               " = " + t[i].str() + " is an integer");

    std::array<Rational, 3> x;
    for (std::size_t j = 0; j < 3; ++j) x[j] = dist_to_even(t.theta[j]);
    // All entries now lie in (0, 1).

    const Rational one(1);
    for (;;) {
        // Pick the pair with the largest sum; fold it if it exceeds 1.
        int bi = 0, bj = 1;
        Rational best = x[0] + x[1];
        const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
        for (auto [i, j] : pairs) {
            Rational s = x[static_cast<std::size_t>(i)] + x[static_cast<std::size_t>(j)];
            if (s > best) { best = s; bi = i; bj = j; }
        }
        if (best <= one) break;
        // (x, y) -> (1-x, 1-y) is the move with signs (-1,-1) and shifts (1,1):
        // total sum drops by 2(x+y-1) > 0, entries stay in (0, 1).
        x[static_cast<std::size_t>(bi)] = one - x[static_cast<std::size_t>(bi)];
        x[static_cast<std::size_t>(bj)] = one - x[static_cast<std::size_t>(bj)];
    }

    // A pair with sum exactly 1 can still be flipped without leaving the
    // window, so representatives on the boundary are unique only up to such
    // flips. Normalize to the lexicographically smallest orbit element.
    auto lex_less = [](const std::array<Rational, 3>& p, const std::array<Rational, 3>& q) {
        for (std::size_t j = 0; j < 3; ++j) {
            if (p[j] < q[j]) return true;
            if (q[j] < p[j]) return false;
        }
        return false;
    };
    std::vector<std::array<Rational, 3>> orbit{x};
    for (std::size_t head = 0; head < orbit.size(); ++head) {
        std::array<Rational, 3> cur = orbit[head];
        const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
        for (auto [i, j] : pairs) {
            auto ii = static_cast<std::size_t>(i), jj = static_cast<std::size_t>(j);
            if (cur[ii] + cur[jj] != one) continue;
            std::array<Rational, 3> next = cur;
            next[ii] = one - cur[ii];
            next[jj] = one - cur[jj];
            bool known = false;
            for (const auto& o : orbit)
                if (o == next) { known = true; break; }
            if (!known) orbit.push_back(next);
        }
    }
    for (const auto& o : orbit)
        if (lex_less(o, x)) x = o;

    CanonicalTriple c{x};
    for (std::size_t j = 0; j < 3; ++j) {
        std::size_t k = (j + 1) % 3;
        Rational s = c.theta[j] + c.theta[k];
        if (!(s > Rational(0)) || s > one || c.theta[j].is_integer())
            throw std::logic_error("canonicalize: invariant violated at " + c.str());
    }
    return c;
}

namespace {

// Theorem 2 predicate for an integer entry n and the two remaining entries:
// some integer m with opposite parity from n, 0 <= m <= n-1, equals either
// their sum or the absolute difference.
Theorem2Witness theorem2_witness(std::int64_t n, int position, const Rational& u,
                                 const Rational& v) {
    Theorem2Witness w;
    w.n = n;
    w.position = position;
    const Rational sum = u + v;
    const Rational diff = (u - v).abs();
    auto admissible = [n](const Rational& r, std::int64_t& m_out) {
        if (!r.is_integer()) return false;
        std::int64_t m = r.num();
        if (m > n - 1) return false;
        if ((m % 2 + 2) % 2 == (n % 2 + 2) % 2) return false;  // same parity
        m_out = m;
        return true;
    };
    std::int64_t m = 0;
    if (admissible(sum, m)) {
        w.m = m;
        w.branch = Theorem2Witness::Branch::Sum;
    } else if (admissible(diff, m)) {
        w.m = m;
        w.branch = Theorem2Witness::Branch::Difference;
    }
    return w;
}

} // namespace

ExistenceVerdict decide(const AngleTriple& t) {
    const TripleClass cls = classify(t);
    ExistenceVerdict v;

    if (cls.integer_count == 0) {
        CanonicalTriple c = canonicalize(t);
        Rational s = c.sum();
        v.rule = Rule::Theorem1;
        v.exists = s > Rational(1);
        v.witness = Theorem1Witness{c, s};
    } else if (cls.integer_count == 1) {
        int pos = 0;
        while (!cls.is_integer[static_cast<std::size_t>(pos)]) ++pos;
        const Rational& u = t[(pos + 1) % 3];
        const Rational& w = t[(pos + 2) % 3];
        Theorem2Witness tw = theorem2_witness(t[pos].num(), pos, u, w);
        v.rule = Rule::Theorem2;
        v.exists = tw.branch != Theorem2Witness::Branch::None;
        v.witness = std::move(tw);
    } else if (cls.integer_count == 2) {
        // If the matching condition held, the third entry would be an integer
        // too; with exactly two integers it cannot hold.
        int pos = 0;
        while (!cls.is_integer[static_cast<std::size_t>(pos)]) ++pos;
        Theorem2Witness tw;
        tw.n = t[pos].num();
        tw.position = pos;
        tw.note = "two integer entries force the third to be an integer; no metric";
        v.rule = Rule::Theorem2;
        v.exists = false;
        v.witness = std::move(tw);
    } else {
        Rational s = t[0] + t[1] + t[2];
        AllIntegerWitness aw;
        aw.sum_odd = (s.num() % 2 + 2) % 2 == 1;
        aw.triangle_inequality = true;
        for (int j = 0; j < 3; ++j) {
            Rational others = s - t[j];
            if (!(t[j] < others)) aw.triangle_inequality = false;
        }
        v.rule = Rule::AllInteger;
        v.exists = aw.sum_odd && aw.triangle_inequality;
        if (v.exists) aw.degree = (s.num() - 1) / 2;
        v.witness = aw;
    }

    v.unique = v.exists;
    return v;
}

} // namespace tricone
