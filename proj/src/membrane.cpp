#include "tricone/membrane.hpp"

#include <cmath>
#include <cstdio>

namespace tricone {

cplx Arc::sample(double t) const {
    if (is_line) return p0 + t * (p1 - p0);
    return center + radius * std::exp(cplx(0.0, start_angle + t * sweep));
}

cplx Arc::direction_at_start() const {
    if (is_line) {
        cplx d = p1 - p0;
        return d / std::abs(d);
    }
    cplx rad = std::exp(cplx(0.0, start_angle));
    cplx tang = cplx(0.0, 1.0) * rad;
    return sweep >= 0 ? tang : -tang;
}

cplx Arc::direction_at_end() const {
    if (is_line) return direction_at_start();
    cplx rad = std::exp(cplx(0.0, start_angle + sweep));
    cplx tang = cplx(0.0, 1.0) * rad;
    return sweep >= 0 ? tang : -tang;
}

double CircularArcTriangle::angle_from_arcs(int k) const {
    const Arc& incoming = side[static_cast<std::size_t>((k + 2) % 3)];
    const Arc& outgoing = side[static_cast<std::size_t>(k)];
    cplx in_dir = incoming.direction_at_end();
    cplx out_dir = outgoing.direction_at_start();
    // Positively oriented boundary: interior angle = pi - turn.
    double turn = std::arg(out_dir / in_dir);
    return M_PI - turn;
}

std::vector<cplx> CircularArcTriangle::boundary(int samples_per_side) const {
    std::vector<cplx> pts;
    for (const Arc& a : side)
        for (int i = 0; i < samples_per_side; ++i)
            pts.push_back(a.sample(static_cast<double>(i) / samples_per_side));
    return pts;
}

namespace {

double wrap_2pi(double x) {
    while (x < 0) x += 2.0 * M_PI;
    while (x >= 2.0 * M_PI) x -= 2.0 * M_PI;
    return x;
}

// Arc through three points, from p to q passing through mid; falls back to a
// segment when they are nearly collinear.
Arc arc_between(cplx p, cplx mid, cplx q) {
    Arc a;
    a.p0 = p;
    a.p1 = q;
    // Perpendicular bisector intersection.
    cplx d1 = mid - p, d2 = q - mid;
    double det = d1.real() * d2.imag() - d1.imag() * d2.real();
    double scale = std::abs(d1) * std::abs(d2);
    if (std::abs(det) <= 1e-12 * scale) {
        a.is_line = true;
        return a;
    }
    cplx m1 = 0.5 * (p + mid), m2 = 0.5 * (mid + q);
    // center = m1 + s * i*d1 with Re{ (center - m2) * conj(d2) } = 0.
    double s = ((m2 - m1).real() * d2.real() + (m2 - m1).imag() * d2.imag()) /
               (-d1.imag() * d2.real() + d1.real() * d2.imag());
    a.center = m1 + s * cplx(-d1.imag(), d1.real());
    a.radius = std::abs(p - a.center);
    double a0 = std::arg(p - a.center);
    double a1 = std::arg(q - a.center);
    double am = std::arg(mid - a.center);
    double fwd = wrap_2pi(a1 - a0);
    a.start_angle = a0;
    a.sweep = wrap_2pi(am - a0) < fwd ? fwd : fwd - 2.0 * M_PI;
    return a;
}

struct Vec3 {
    double x, y, z;
};

Vec3 normalized(Vec3 v) {
    double n = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    return {v.x / n, v.y / n, v.z / n};
}

cplx stereographic(Vec3 v) {
    // Projection from the south pole; north -> 0.
    return cplx(v.x, v.y) / (1.0 + v.z);
}

// Spherical triangle with the given angles (law of cosines for angles),
// projected stereographically: vertex 0 at the north pole (image 0), vertex 1
// on the phi = 0 meridian (positive real image), vertex 2 at azimuth A.
// Sides are great-circle arcs; their planar circles are recovered from the
// two endpoints and the arc midpoint.
CircularArcTriangle spherical_triangle(double A, double B, double C) {
    auto side_len = [](double x, double y, double z) {
        double c = (std::cos(x) + std::cos(y) * std::cos(z)) / (std::sin(y) * std::sin(z));
        if (!(c > -1.0 && c < 1.0))
            throw NotConstructible("no proper spherical triangle with these angles");
        return std::acos(c);
    };
    double a_len = side_len(A, B, C);  // opposite vertex 0; validates constructibility
    double b_len = side_len(B, C, A);  // opposite vertex 1
    double c_len = side_len(C, A, B);  // opposite vertex 2
    (void)a_len;

    Vec3 v0{0.0, 0.0, 1.0};
    Vec3 v1{std::sin(c_len), 0.0, std::cos(c_len)};
    Vec3 v2{std::sin(b_len) * std::cos(A), std::sin(b_len) * std::sin(A),
            std::cos(b_len)};

    auto geodesic_mid = [](Vec3 p, Vec3 q) {
        return normalized({p.x + q.x, p.y + q.y, p.z + q.z});
    };

    CircularArcTriangle t;
    t.vertex = {stereographic(v0), stereographic(v1), stereographic(v2)};
    t.angle = {A, B, C};
    const Vec3 vs[3] = {v0, v1, v2};
    for (int k = 0; k < 3; ++k) {
        Vec3 p = vs[k], q = vs[(k + 1) % 3];
        t.side[static_cast<std::size_t>(k)] =
            arc_between(stereographic(p), stereographic(geodesic_mid(p, q)),
                        stereographic(q));
    }
    return t;
}

// Rescale a triangle by a positive real factor (a Mobius map fixing 0 and
// infinity), rebuilding each side from three mapped sample points.
CircularArcTriangle dilate(const CircularArcTriangle& t, double factor) {
    CircularArcTriangle out;
    out.angle = t.angle;
    for (int k = 0; k < 3; ++k) {
        auto kk = static_cast<std::size_t>(k);
        out.vertex[kk] = factor * t.vertex[kk];
        const Arc& a = t.side[kk];
        out.side[kk] = arc_between(factor * a.sample(0.0), factor * a.sample(0.5),
                                   factor * a.sample(1.0));
    }
    return out;
}

} // namespace

CircularArcTriangle triangle_with_angles(const std::array<double, 3>& theta) {
    const double A = M_PI * theta[0], B = M_PI * theta[1], C = M_PI * theta[2];
    for (double x : {A, B, C})
        if (!(x > 0.0) || x >= M_PI)
            throw NotConstructible("interior angles must lie in (0, pi)");
    const double sum = A + B + C;
    const double flat_tol = 1e-12;

    if (sum > M_PI + flat_tol) {
        CircularArcTriangle raw = spherical_triangle(A, B, C);
        // Normalize vertex 1 to z = 1; vertex 0 is already 0 and the first
        // side already runs along the real axis.
        return dilate(raw, 1.0 / raw.vertex[1].real());
    }

    if (sum >= M_PI - flat_tol) {
        // Euclidean triangle with vertices 0, 1 and the ray intersection.
        CircularArcTriangle t;
        double opp = M_PI - A - B;  // angle at the third vertex (= C)
        cplx v2 = std::sin(B) / std::sin(opp) * std::exp(cplx(0.0, A));
        t.vertex = {cplx(0.0), cplx(1.0), v2};
        t.angle = {A, B, C};
        for (int k = 0; k < 3; ++k) {
            auto kk = static_cast<std::size_t>(k);
            Arc a;
            a.is_line = true;
            a.p0 = t.vertex[kk];
            a.p1 = t.vertex[static_cast<std::size_t>((k + 1) % 3)];
            t.side[kk] = a;
        }
        return t;
    }

    // Hyperbolic: build in the unit disc (vertex 0 at the origin, straight
    // sides through it, the far side orthogonal to the unit circle), then
    // rescale vertex 1 to z = 1.
    auto cosh_side = [](double x, double y, double z) {
        return (std::cos(x) + std::cos(y) * std::cos(z)) / (std::sin(y) * std::sin(z));
    };
    double a_len = std::acosh(cosh_side(A, B, C));
    double b_len = std::acosh(cosh_side(B, C, A));
    double c_len = std::acosh(cosh_side(C, A, B));
    (void)a_len;

    cplx p = std::tanh(c_len / 2.0);                        // vertex 1
    cplx q = std::tanh(b_len / 2.0) * std::exp(cplx(0.0, A));  // vertex 2

    // Hyperbolic midpoint of the far side via the translation taking p to 0.
    cplx qp = (q - p) / (1.0 - std::conj(p) * q);
    double half = std::tanh(std::atanh(std::abs(qp)) / 2.0);
    cplx mid0 = half * qp / std::abs(qp);
    cplx mid = (mid0 + p) / (1.0 + std::conj(p) * mid0);

    CircularArcTriangle t;
    t.vertex = {cplx(0.0), p, q};
    t.angle = {A, B, C};
    Arc s0;
    s0.is_line = true;
    s0.p0 = 0.0;
    s0.p1 = p;
    t.side[0] = s0;
    t.side[1] = arc_between(p, mid, q);
    Arc s2;
    s2.is_line = true;
    s2.p0 = q;
    s2.p1 = 0.0;
    t.side[2] = s2;
    return dilate(t, 1.0 / p.real());
}

CircularArcTriangle schwarz_triangle(const CanonicalTriple& c) {
    return triangle_with_angles(
        {c[0].to_double(), c[1].to_double(), c[2].to_double()});
}

CircularArcTriangle geodesize(const CircularArcTriangle& t) {
    double sum = t.angle[0] + t.angle[1] + t.angle[2];
    if (sum <= M_PI + 1e-12)
        throw NotGeodesizable("angle sum " + std::to_string(sum) +
                              " does not exceed pi");
    return spherical_triangle(t.angle[0], t.angle[1], t.angle[2]);
}

ExistenceVerdict membrane_exists(const AngleTriple& theta) { return decide(theta); }

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

namespace {

std::string fmt(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    // Normalize negative zero for byte determinism.
    std::string s(buf);
    if (s == "-0") s = "0";
    return s;
}

} // namespace

std::string to_svg(const CircularArcTriangle& t, const SvgOptions& options) {
    // Bounding box over a dense boundary sampling.
    auto pts = t.boundary(128);
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (cplx p : pts) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    const double span = std::max(xmax - xmin, ymax - ymin);
    const double s = (options.size - 2.0 * options.margin) / (span > 0 ? span : 1.0);
    auto map_x = [&](double x) { return options.margin + (x - xmin) * s; };
    auto map_y = [&](double y) { return options.margin + (ymax - y) * s; };

    const int pr = options.precision;
    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(options.size, pr) +
           "\" height=\"" + fmt(options.size, pr) + "\" viewBox=\"0 0 " +
           fmt(options.size, pr) + " " + fmt(options.size, pr) + "\">\n";

    std::string path = "M " + fmt(map_x(t.vertex[0].real()), pr) + " " +
                       fmt(map_y(t.vertex[0].imag()), pr);
    for (int k = 0; k < 3; ++k) {
        const Arc& a = t.side[static_cast<std::size_t>(k)];
        cplx q = a.p1;
        if (a.is_line) {
            path += " L " + fmt(map_x(q.real()), pr) + " " + fmt(map_y(q.imag()), pr);
        } else {
            double r = a.radius * s;
            int large_arc = std::abs(a.sweep) > M_PI ? 1 : 0;
            // The y-axis flip reverses orientation, so a positive plane sweep
            // is drawn with sweep-flag 0.
            int sweep_flag = a.sweep > 0 ? 0 : 1;
            path += " A " + fmt(r, pr) + " " + fmt(r, pr) + " 0 " +
                    std::to_string(large_arc) + " " + std::to_string(sweep_flag) + " " +
                    fmt(map_x(q.real()), pr) + " " + fmt(map_y(q.imag()), pr);
        }
    }
    path += " Z";
    svg += "  <path d=\"" + path +
           "\" fill=\"#dbeafe\" fill-opacity=\"0.5\" stroke=\"#1f2937\" "
           "stroke-width=\"1.5\"/>\n";

    if (options.labels) {
        for (int k = 0; k < 3; ++k) {
            auto kk = static_cast<std::size_t>(k);
            double x = map_x(t.vertex[kk].real());
            double y = map_y(t.vertex[kk].imag());
            svg += "  <circle cx=\"" + fmt(x, pr) + "\" cy=\"" + fmt(y, pr) +
                   "\" r=\"3\" fill=\"#1f2937\"/>\n";
            svg += "  <text x=\"" + fmt(x + 6.0, pr) + "\" y=\"" + fmt(y - 6.0, pr) +
                   "\" font-family=\"monospace\" font-size=\"12\">v" +
                   std::to_string(k + 1) + " (" + fmt(t.angle[kk] / M_PI, pr) +
                   "&#960;)</text>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace tricone
