#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <random>
#include <set>
#include <vector>

#include "tricone/angles.hpp"

using namespace tricone;

namespace {

AngleTriple triple(const char* a, const char* b, const char* c) {
    return AngleTriple(Rational::parse(a), Rational::parse(b), Rational::parse(c));
}

// Independent oracle: enumerate all moves with shifts |m| <= bound and collect
// every reachable triple satisfying the canonical-window condition.
std::vector<std::array<Rational, 3>> canonical_by_search(const AngleTriple& t,
                                                         std::int64_t bound = 4) {
    std::set<std::array<std::array<std::int64_t, 2>, 3>> seen;
    std::vector<std::array<Rational, 3>> found;
    const Rational one(1);
    for (int s0 : {1, -1})
        for (int s1 : {1, -1})
            for (int s2 : {1, -1})
                for (std::int64_t m = -bound; m <= bound; ++m)
                    for (std::int64_t n = -bound; n <= bound; ++n)
                        for (std::int64_t k = -bound; k <= bound; ++k) {
                            if ((m + n + k) % 2 != 0) continue;
                            std::array<Rational, 3> r;
                            bool ok = true;
                            const std::array<int, 3> sg{s0, s1, s2};
                            const std::array<std::int64_t, 3> sh{m, n, k};
                            for (int j = 0; j < 3 && ok; ++j) {
                                auto jj = static_cast<std::size_t>(j);
                                r[jj] = (sg[jj] == 1 ? t[j] : -t[j]) + Rational(sh[jj]);
                                ok = r[jj].is_positive();
                            }
                            if (!ok) continue;
                            for (int j = 0; j < 3 && ok; ++j) {
                                auto jj = static_cast<std::size_t>(j);
                                Rational s = r[jj] + r[(jj + 1) % 3];
                                ok = s > Rational(0) && s <= one;
                            }
                            if (!ok) continue;
                            std::array<std::array<std::int64_t, 2>, 3> key;
                            for (std::size_t j = 0; j < 3; ++j)
                                key[j] = {r[j].num(), r[j].den()};
                            if (seen.insert(key).second) found.push_back(r);
                        }
    return found;
}

Rational random_rational(std::mt19937& rng, bool avoid_integers) {
    std::uniform_int_distribution<std::int64_t> den_d(2, 24);
    for (;;) {
        std::int64_t q = den_d(rng);
        std::uniform_int_distribution<std::int64_t> num_d(1, 3 * q - 1);
        Rational r(num_d(rng), q);
        if (avoid_integers && r.is_integer()) continue;
        return r;
    }
}

} // namespace

TEST_CASE("classify counts integer entries exactly") {
    CHECK(classify(triple("1/2", "1/2", "1/2")).integer_count == 0);
    auto c = classify(triple("2", "1/2", "1/2"));
    CHECK(c.integer_count == 1);
    CHECK(c.is_integer[0]);
    CHECK_FALSE(c.is_integer[1]);
    CHECK(classify(triple("1", "2", "2")).integer_count == 3);
    // 6/3 is the integer 2 as a rational; no tolerance involved.
    CHECK(classify(triple("6/3", "1/2", "1/2")).integer_count == 1);
}

TEST_CASE("apply_move arithmetic and errors") {
    AngleTriple t = triple("3/2", "1/2", "1/2");
    AngleTriple moved = apply_move(t, {-1, 1, 1}, {2, 0, 0});
    CHECK(moved == triple("1/2", "1/2", "1/2"));

    AngleTriple fixed = apply_move(triple("1/2", "1/2", "1/2"), {1, 1, 1}, {0, 0, 0});
    CHECK(fixed == triple("1/2", "1/2", "1/2"));

    CHECK_THROWS_AS(apply_move(t, {1, 1, 1}, {1, 0, 0}), OddShiftSum);
    CHECK_THROWS_AS(apply_move(t, {-1, 1, 1}, {0, 0, 0}), NonPositiveResult);
}

TEST_CASE("canonicalize fixed points and small cases") {
    CHECK(canonicalize(triple("1/2", "1/2", "1/2")) ==
          CanonicalTriple{{Rational(1, 2), Rational(1, 2), Rational(1, 2)}});
    CHECK(canonicalize(triple("3/2", "1/2", "1/2")) ==
          CanonicalTriple{{Rational(1, 2), Rational(1, 2), Rational(1, 2)}});
    CHECK(canonicalize(triple("5/2", "1/2", "1/2")) ==
          CanonicalTriple{{Rational(1, 2), Rational(1, 2), Rational(1, 2)}});
    CHECK_THROWS_AS(canonicalize(triple("2", "1/2", "1/2")), IntegerEntry);
}

namespace {

// Closure of a window triple under flips of pairs with sum exactly 1; the
// representative is unique only up to these flips, and canonicalize picks the
// lexicographically smallest element.
std::vector<std::array<Rational, 3>> flip_closure(std::array<Rational, 3> x) {
    const Rational one(1);
    std::vector<std::array<Rational, 3>> orbit{x};
    for (std::size_t head = 0; head < orbit.size(); ++head) {
        auto cur = orbit[head];
        const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
        for (auto [i, j] : pairs) {
            auto ii = static_cast<std::size_t>(i), jj = static_cast<std::size_t>(j);
            if (cur[ii] + cur[jj] != one) continue;
            auto next = cur;
            next[ii] = one - cur[ii];
            next[jj] = one - cur[jj];
            bool known = false;
            for (const auto& o : orbit)
                if (o == next) known = true;
            if (!known) orbit.push_back(next);
        }
    }
    return orbit;
}

bool lex_leq(const std::array<Rational, 3>& p, const std::array<Rational, 3>& q) {
    for (std::size_t j = 0; j < 3; ++j) {
        if (p[j] < q[j]) return true;
        if (q[j] < p[j]) return false;
    }
    return true;
}

} // namespace

TEST_CASE("canonicalize agrees with brute-force search") {
    std::mt19937 rng(12345);
    for (int iter = 0; iter < 200; ++iter) {
        AngleTriple t(random_rational(rng, true), random_rational(rng, true),
                      random_rational(rng, true));
        CanonicalTriple c = canonicalize(t);
        auto found = canonical_by_search(t);
        auto orbit = flip_closure(c.theta);
        // Everything the exhaustive search reaches inside the window must be a
        // boundary flip of the canonical representative, and the representative
        // must be the lex-min of that orbit.
        REQUIRE_MESSAGE(found.size() == orbit.size(),
                        "search found ", found.size(), " representatives for ",
                        t.str(), ", flip orbit has ", orbit.size());
        for (const auto& f : found) {
            bool in_orbit = false;
            for (const auto& o : orbit)
                if (o == f) in_orbit = true;
            CHECK(in_orbit);
            CHECK(lex_leq(c.theta, f));
        }
    }
}

TEST_CASE("canonicalize is idempotent and move invariant") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> sign_d(0, 1);
    std::uniform_int_distribution<std::int64_t> shift_d(-3, 3);
    int tested = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        AngleTriple t(random_rational(rng, true), random_rational(rng, true),
                      random_rational(rng, true));
        CanonicalTriple c = canonicalize(t);
        CHECK(canonicalize(AngleTriple(c[0], c[1], c[2])) == c);

        // Random valid move; retry a few times if it goes nonpositive.
        for (int attempt = 0; attempt < 20; ++attempt) {
            std::array<int, 3> signs{sign_d(rng) ? 1 : -1, sign_d(rng) ? 1 : -1,
                                     sign_d(rng) ? 1 : -1};
            std::array<std::int64_t, 3> shifts{shift_d(rng), shift_d(rng), shift_d(rng)};
            if ((shifts[0] + shifts[1] + shifts[2]) % 2 != 0) shifts[2] += 1;
            std::optional<AngleTriple> moved;
            try {
                moved = apply_move(t, signs, shifts);
            } catch (const NonPositiveResult&) {
                continue;
            }
            CHECK(canonicalize(*moved) == c);
            ++tested;
            break;
        }
    }
    CHECK(tested > 900);
}

TEST_CASE("decide: Theorem 1 cases") {
    auto v = decide(triple("1/2", "1/2", "1/2"));
    CHECK(v.exists);
    CHECK(v.unique);
    CHECK(v.rule == Rule::Theorem1);
    CHECK(std::get<Theorem1Witness>(v.witness).canonical_sum == Rational(3, 2));

    auto w = decide(triple("3/10", "3/10", "3/10"));
    CHECK_FALSE(w.exists);
    CHECK(w.rule == Rule::Theorem1);
    CHECK(std::get<Theorem1Witness>(w.witness).canonical_sum == Rational(9, 10));
}

TEST_CASE("decide: Theorem 2 cases") {
    auto v = decide(triple("2", "1/2", "1/2"));
    CHECK(v.exists);
    CHECK(v.rule == Rule::Theorem2);
    auto tw = std::get<Theorem2Witness>(v.witness);
    CHECK(tw.n == 2);
    CHECK(tw.m.value() == 1);

    CHECK_FALSE(decide(triple("2", "1/2", "7/10")).exists);

    // Integer entry in other positions.
    CHECK(decide(triple("1/2", "2", "1/2")).exists);
    CHECK(decide(triple("1/2", "1/2", "2")).exists);

    // theta = 1 routes through the same formula: requires equal companions.
    CHECK_FALSE(decide(triple("1", "3/10", "7/10")).exists);
    CHECK(decide(triple("1", "7/10", "7/10")).exists);

    // m must satisfy the bound m <= N - 1: (2, 3/2, 3/2) has sum 3, odd but > 1.
    CHECK_FALSE(decide(triple("2", "3/2", "3/2")).exists);
    // |diff| = 1 <= 1 works instead when companions differ by one.
    CHECK(decide(triple("2", "5/2", "3/2")).exists);
}

TEST_CASE("decide: two integers never admit a metric") {
    auto v = decide(triple("2", "3", "1/2"));
    CHECK_FALSE(v.exists);
    CHECK(v.rule == Rule::Theorem2);
    CHECK_FALSE(decide(triple("1", "1", "1/2")).exists);
}

TEST_CASE("decide: all-integer cases") {
    auto v = decide(triple("1", "1", "1"));
    CHECK(v.exists);
    CHECK(v.rule == Rule::AllInteger);
    CHECK(std::get<AllIntegerWitness>(v.witness).degree == 1);

    CHECK_FALSE(decide(triple("2", "2", "2")).exists);  // even sum
    CHECK_FALSE(decide(triple("1", "1", "3")).exists);  // violates triangle bound
    auto w = decide(triple("2", "3", "4"));
    CHECK(w.exists);
    CHECK(std::get<AllIntegerWitness>(w.witness).degree == 4);
}

TEST_CASE("decide is permutation invariant") {
    std::mt19937 rng(4242);
    for (int iter = 0; iter < 300; ++iter) {
        Rational a = random_rational(rng, false);
        Rational b = random_rational(rng, false);
        Rational c = random_rational(rng, false);
        bool base = decide(AngleTriple(a, b, c)).exists;
        CHECK(decide(AngleTriple(a, c, b)).exists == base);
        CHECK(decide(AngleTriple(b, a, c)).exists == base);
        CHECK(decide(AngleTriple(b, c, a)).exists == base);
        CHECK(decide(AngleTriple(c, a, b)).exists == base);
        CHECK(decide(AngleTriple(c, b, a)).exists == base);
    }
}

TEST_CASE("decide is invariant under equivalence moves (non-integer case)") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> sign_d(0, 1);
    std::uniform_int_distribution<std::int64_t> shift_d(-2, 2);
    for (int iter = 0; iter < 300; ++iter) {
        AngleTriple t(random_rational(rng, true), random_rational(rng, true),
                      random_rational(rng, true));
        bool base = decide(t).exists;
        for (int attempt = 0; attempt < 10; ++attempt) {
            std::array<int, 3> signs{sign_d(rng) ? 1 : -1, sign_d(rng) ? 1 : -1,
                                     sign_d(rng) ? 1 : -1};
            std::array<std::int64_t, 3> shifts{shift_d(rng), shift_d(rng), shift_d(rng)};
            if ((shifts[0] + shifts[1] + shifts[2]) % 2 != 0) shifts[2] += 1;
            std::optional<AngleTriple> moved;
            try {
                moved = apply_move(t, signs, shifts);
            } catch (const NonPositiveResult&) {
                continue;
            }
            CHECK(decide(*moved).exists == base);
            break;
        }
    }
}

TEST_CASE("verdict flags are consistent") {
    std::mt19937 rng(31415);
    for (int iter = 0; iter < 200; ++iter) {
        AngleTriple t(random_rational(rng, false), random_rational(rng, false),
                      random_rational(rng, false));
        auto v = decide(t);
        CHECK(v.unique == v.exists);
    }
}
