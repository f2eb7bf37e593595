#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "tricone/membrane.hpp"
#include "tricone/metric.hpp"

using namespace tricone;

namespace {

CanonicalTriple canon(const char* a, const char* b, const char* c) {
    return CanonicalTriple{{Rational::parse(a), Rational::parse(b), Rational::parse(c)}};
}

// A point guaranteed inside the triangle: a short step from vertex 0 along
// the interior bisector.
cplx interior_point(const CircularArcTriangle& t) {
    cplx out_dir = t.side[0].direction_at_start();
    double half = t.angle[0] / 2.0;
    return t.vertex[0] + 0.12 * out_dir * std::exp(cplx(0.0, half));
}

// Stereographic image of a great circle: either a line through the origin or
// a circle with radius^2 = 1 + |center|^2. Returns the deviation.
double antipodal_deviation(const Arc& a) {
    if (a.is_line) {
        cplx d = a.p1 - a.p0;
        double cross = a.p0.real() * d.imag() - a.p0.imag() * d.real();
        return std::abs(cross) / std::abs(d);
    }
    return std::abs(a.radius * a.radius - 1.0 - std::norm(a.center));
}

} // namespace

TEST_CASE("octant triangle: normalization and right angles") {
    CircularArcTriangle t = schwarz_triangle(canon("1/2", "1/2", "1/2"));
    CHECK(std::abs(t.vertex[0]) < 1e-12);
    CHECK(std::abs(t.vertex[1] - 1.0) < 1e-12);
    CHECK(t.vertex[2].imag() > 0.0);
    for (int k = 0; k < 3; ++k)
        CHECK(t.angle_from_arcs(k) == doctest::Approx(M_PI / 2).epsilon(1e-9));
    // First side runs along the real axis.
    CHECK(t.side[0].is_line);
    CHECK(std::abs(t.side[0].p0.imag()) < 1e-12);
    CHECK(std::abs(t.side[0].p1.imag()) < 1e-12);
}

TEST_CASE("tangent angles reproduce the requested angles across all regimes") {
    const char* cases[][3] = {
        {"1/2", "1/2", "1/2"},   // spherical
        {"1/2", "1/2", "3/4"},   // spherical, beyond the canonical window
        {"1/4", "1/4", "1/4"},   // hyperbolic
        {"1/2", "1/4", "1/4"},   // euclidean (sum exactly pi)
        {"3/10", "2/5", "1/5"},  // hyperbolic, scalene
        {"11/20", "9/20", "7/20"}, // spherical, scalene
    };
    for (auto& c : cases) {
        std::array<double, 3> th{Rational::parse(c[0]).to_double(),
                                 Rational::parse(c[1]).to_double(),
                                 Rational::parse(c[2]).to_double()};
        CircularArcTriangle t = triangle_with_angles(th);
        for (int k = 0; k < 3; ++k)
            CHECK_MESSAGE(
                std::abs(t.angle_from_arcs(k) - M_PI * th[static_cast<std::size_t>(k)]) <=
                    1e-9,
                "angle ", k, " of (", c[0], ",", c[1], ",", c[2], ")");
        // Endpoints chain up.
        for (int k = 0; k < 3; ++k) {
            CHECK(std::abs(t.side[static_cast<std::size_t>(k)].p0 -
                           t.vertex[static_cast<std::size_t>(k)]) < 1e-9);
            CHECK(std::abs(t.side[static_cast<std::size_t>(k)].p1 -
                           t.vertex[static_cast<std::size_t>((k + 1) % 3)]) < 1e-9);
        }
    }
}

TEST_CASE("small angles give a Jordan region that cannot be geodesized") {
    CircularArcTriangle t = schwarz_triangle(canon("1/4", "1/4", "1/4"));
    auto boundary = t.boundary(64);
    CHECK(winding_number(boundary, interior_point(t)) == 1);
    CHECK_THROWS_AS(geodesize(t), NotGeodesizable);
}

TEST_CASE("octant and larger triangles geodesize to great-circle sides") {
    for (auto c : {canon("1/2", "1/2", "1/2"), canon("1/2", "2/5", "3/5"),
                   canon("9/10", "1/2", "1/2")}) {
        CircularArcTriangle t = schwarz_triangle(c);
        CircularArcTriangle g = geodesize(t);
        for (int k = 0; k < 3; ++k) {
            CHECK(antipodal_deviation(g.side[static_cast<std::size_t>(k)]) < 1e-9);
            CHECK(std::abs(g.angle_from_arcs(k) - t.angle_from_arcs(k)) < 1e-9);
        }
    }
}

TEST_CASE("doubling: twice the spherical excess equals the metric area") {
    // (1/2,1/2,3/4): excess = 7pi/4 - pi = 3pi/4; doubled cone metric has
    // area 2 pi (7/4 - 1) = 3pi/2.
    std::array<double, 3> th{0.5, 0.5, 0.75};
    CircularArcTriangle g = geodesize(triangle_with_angles(th));
    double excess = g.angle[0] + g.angle[1] + g.angle[2] - M_PI;
    CHECK(excess == doctest::Approx(0.75 * M_PI).epsilon(1e-12));

    AngleTriple doubled(Rational(1, 2), Rational(1, 2), Rational(3, 4));
    DevelopingContext ctx = make_developing_context(doubled);
    double area = total_area(ctx, 1e-4);
    CHECK(2.0 * excess == doctest::Approx(area).epsilon(1e-3));
}

TEST_CASE("membrane existence mirrors the metric decision") {
    CHECK(membrane_exists(AngleTriple(Rational(1, 2), Rational(1, 2), Rational(1, 2))).exists);
    CHECK_FALSE(
        membrane_exists(AngleTriple(Rational(3, 10), Rational(3, 10), Rational(3, 10)))
            .exists);
    CHECK(membrane_exists(AngleTriple(Rational(2), Rational(1, 2), Rational(1, 2))).exists);
}

TEST_CASE("degenerate angle inputs are rejected") {
    CHECK_THROWS_AS(triangle_with_angles({1.0, 0.5, 0.5}), NotConstructible);
    // Spherical case needs pairwise angle differences below pi.
    CHECK_THROWS_AS(triangle_with_angles({0.95, 0.95, 0.05}), NotConstructible);
}

TEST_CASE("svg output is deterministic and annotated") {
    CircularArcTriangle t = schwarz_triangle(canon("1/2", "1/2", "1/2"));
    std::string svg1 = to_svg(t);
    std::string svg2 = to_svg(t);
    CHECK(svg1 == svg2);
    CHECK(svg1.find("<svg") != std::string::npos);
    CHECK(svg1.find("<path") != std::string::npos);
    CHECK(svg1.find("0.5&#960;") != std::string::npos);
    CHECK(svg1.find("v1") != std::string::npos);

    // Options change the geometry deterministically too.
    SvgOptions small;
    small.size = 240.0;
    small.labels = false;
    std::string svg3 = to_svg(t, small);
    CHECK(svg3.find("<text") == std::string::npos);
    CHECK(svg3.find("width=\"240\"") != std::string::npos);
}

TEST_CASE("svg golden snapshot for the octant") {
    CircularArcTriangle t = schwarz_triangle(canon("1/2", "1/2", "1/2"));
    std::string svg = to_svg(t);
    std::ifstream golden(std::string(TEST_DATA_DIR) + "/octant.svg");
    REQUIRE_MESSAGE(golden.good(), "golden file missing");
    std::stringstream buf;
    buf << golden.rdbuf();
    CHECK(svg == buf.str());
}
