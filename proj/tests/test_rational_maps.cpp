#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tricone/monodromy.hpp"
#include "tricone/rational_maps.hpp"

using namespace tricone;

namespace {

AngleTriple ints(std::int64_t a, std::int64_t b, std::int64_t c) {
    return AngleTriple(Rational(a), Rational(b), Rational(c));
}

bool mobius_equivalent(const RationalMap& f, const RationalMap& g) {
    const cplx zs[4] = {cplx(0.37, 0.11), cplx(-0.52, 0.4), cplx(1.9, -0.3),
                        cplx(0.21, -0.77)};
    cplx fv[4], gv[4];
    for (int i = 0; i < 4; ++i) {
        fv[i] = f.eval(zs[i]);
        gv[i] = g.eval(zs[i]);
    }
    auto cross = [](const cplx* w) {
        return (w[0] - w[2]) * (w[1] - w[3]) / ((w[0] - w[3]) * (w[1] - w[2]));
    };
    return std::abs(cross(fv) - cross(gv)) < 1e-6;
}

} // namespace

TEST_CASE("degree bookkeeping") {
    CHECK(degree_for(ints(1, 1, 1)) == 1);
    CHECK(degree_for(ints(1, 2, 2)) == 2);
    CHECK(degree_for(ints(2, 3, 4)) == 4);
    CHECK_THROWS_AS(degree_for(ints(2, 2, 2)), NotAdmissible);   // even sum
    CHECK_THROWS_AS(degree_for(ints(1, 1, 3)), NotAdmissible);   // too lopsided
    CHECK_THROWS_AS(degree_for(AngleTriple(Rational(1, 2), Rational(1), Rational(1))),
                    NotAdmissible);
}

TEST_CASE("identity map for (1,1,1)") {
    RationalMap f = construct(ints(1, 1, 1));
    CHECK(f.degree == 1);
    CHECK(std::abs(f.eval(cplx(0.3, 0.4)) - cplx(0.3, 0.4)) < 1e-12);
    CHECK(verify(f, ints(1, 1, 1)));
}

TEST_CASE("(1,2,2) reproduces the quadratic up to Mobius") {
    RationalMap f = construct(ints(1, 2, 2));
    RationalMap g{{cplx(1.0), cplx(-2.0), cplx(1.0)}, {cplx(1.0)}, 2};  // (z-1)^2
    CHECK(verify(f, ints(1, 2, 2)));
    CHECK(mobius_equivalent(f, g));
}

TEST_CASE("explicit verify cases") {
    RationalMap quad{{cplx(1.0), cplx(-2.0), cplx(1.0)}, {cplx(1.0)}, 2};  // (z-1)^2
    CHECK(verify(quad, ints(1, 2, 2)));
    CHECK_FALSE(verify(quad, ints(2, 2, 1)));
    RationalMap idm{{cplx(0.0), cplx(1.0)}, {cplx(1.0)}, 1};
    CHECK(verify(idm, ints(1, 1, 1)));
    CHECK_FALSE(verify(idm, ints(1, 2, 2)));
}

TEST_CASE("construct then verify across admissible triples") {
    RationalMap f = construct(ints(3, 1, 3));
    CHECK(verify(f, ints(3, 1, 3)));
    RationalMap g = construct(ints(2, 3, 4));
    CHECK(verify(g, ints(2, 3, 4)));
    RationalMap h = construct(ints(5, 4, 2));
    CHECK(verify(h, ints(5, 4, 2)));
}

TEST_CASE("construction succeeds exactly on the admissible set (small sums)") {
    for (std::int64_t a = 1; a <= 7; ++a)
        for (std::int64_t b = 1; b <= 7; ++b)
            for (std::int64_t c = 1; c <= 7; ++c) {
                if (a + b + c > 9) continue;
                AngleTriple t = ints(a, b, c);
                bool expect = decide(t).exists;
                bool built = false;
                try {
                    RationalMap f = construct(t);
                    built = verify(f, t);
                } catch (const NotAdmissible&) {
                } catch (const SolveFailed&) {
                }
                CHECK_MESSAGE(built == expect, "construct vs decide mismatch at ",
                              t.str());
            }
}

TEST_CASE("admissible all-integer monodromy is projectively trivial") {
    for (auto t : {ints(1, 2, 2), ints(2, 3, 4), ints(3, 1, 3)}) {
        MonodromyRep rep = monodromy_rep(t);
        CHECK(classify_generator(rep.m0).kind == GeneratorKind::Identity);
        CHECK(classify_generator(rep.m1).kind == GeneratorKind::Identity);
        CHECK(classify_generator(rep.minf).kind == GeneratorKind::Identity);
    }
    // Inadmissible: logarithmic solutions force a parabolic generator.
    MonodromyRep bad = monodromy_rep(ints(1, 1, 3));
    bool nontrivial = classify_generator(bad.m0).kind != GeneratorKind::Identity ||
                      classify_generator(bad.m1).kind != GeneratorKind::Identity;
    CHECK(nontrivial);
}

TEST_CASE("catalan counts") {
    CHECK(catalan_count(1) == 1);
    CHECK(catalan_count(2) == 1);
    CHECK(catalan_count(3) == 2);
    CHECK(catalan_count(4) == 5);
    CHECK(catalan_count(5) == 14);
    CHECK(catalan_count(6) == 42);
    CHECK(catalan_count(7) == 132);
    CHECK(catalan_count(8) == 429);
    CHECK_THROWS(catalan_count(0));
}
