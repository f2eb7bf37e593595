#include "tricone/hypergeom.hpp"

#include <algorithm>
#include <cmath>

namespace tricone {

HypergeomParams params_from_triple(const AngleTriple& t) {
    const Rational one(1), two(2);
    HypergeomParams p;
    p.a = (one - t[0] - t[1] + t[2]) / two;
    p.b = (one - t[0] - t[1] - t[2]) / two;
    p.c = one - t[0];
    return p;
}

namespace {

// Right-hand bracket of the recurrence at index k, exactly.
Rational recurrence_bracket(const HypergeomParams& p, std::int64_t k) {
    Rational km1(k - 1), km2(k - 2);
    return km1 * km2 + (p.a + p.b + Rational(1)) * km1 + p.a * p.b;
}

// 1 - c as an integer if it is one and positive, else 0.
std::int64_t resonant_order(const HypergeomParams& p) {
    Rational n = Rational(1) - p.c;
    if (n.is_integer() && n.is_positive()) return n.num();
    return 0;
}

} // namespace

SeriesSolution series_coefficients(const HypergeomParams& p, int order) {
    SeriesSolution s;
    s.exponent = 0.0;
    s.coeffs.assign(static_cast<std::size_t>(order) + 1, 0.0);
    s.coeffs[0] = 1.0;

    const std::int64_t res = resonant_order(p);
    const double a = p.ad(), b = p.bd(), c = p.cd();
    bool truncated = false;  // all coefficients from the first vanishing bracket on are 0
    for (int k = 1; k <= order; ++k) {
        if (res == k) {
            // Left factor k(k-1+c) vanishes. The series survives iff the right
            // side vanishes too, i.e. some earlier-or-equal bracket was zero.
            bool rhs_zero = truncated || recurrence_bracket(p, k).is_zero();
            if (!rhs_zero) throw ResonantIndex(k);
            s.coeffs[static_cast<std::size_t>(k)] = 0.0;
            s.resonance_at = k;
            truncated = true;
            continue;
        }
        if (recurrence_bracket(p, k).is_zero()) truncated = true;
        double left = static_cast<double>(k) * (k - 1.0) + c * k;
        double bracket = (k - 1.0) * (k - 2.0) + (a + b + 1.0) * (k - 1.0) + a * b;
        s.coeffs[static_cast<std::size_t>(k)] =
            bracket * s.coeffs[static_cast<std::size_t>(k) - 1] / left;
    }
    return s;
}

bool log_free_at_singularity(const AngleTriple& t, int which) {
    // Mobius relabelings moving the chosen singular point to 0:
    //   which = 0: identity             -> (t1, t2, t3)
    //   which = 1: z -> 1 - z           -> (t2, t1, t3)
    //   which = 2: z -> 1/z (infinity)  -> (t3, t2, t1)
    AngleTriple r = which == 0   ? t
                    : which == 1 ? AngleTriple(t[1], t[0], t[2])
                                 : AngleTriple(t[2], t[1], t[0]);
    if (!r[0].is_integer() || !r[0].is_positive())
        throw NotInteger("log_free_at_singularity: cone parameter " + r[0].str() +
                         " is not a positive integer");
    const std::int64_t n_max = r[0].num();
    HypergeomParams p = params_from_triple(r);
    for (std::int64_t n = 1; n <= n_max; ++n)
        if (recurrence_bracket(p, n).is_zero()) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Series evaluation
// ---------------------------------------------------------------------------

namespace {

struct SeriesPair {
    // value and derivative of sum a_k z^(k+rho)
    cplx w, dw;
};

// Evaluates z^rho * sum coeffs[k] z^k and its derivative, with a geometric
// tail bound; throws NoConvergence if the requested tolerance is unreachable.
SeriesPair eval_series(const std::vector<double>& coeffs, double rho, cplx z,
                       double rel_tol) {
    cplx zpow(1.0, 0.0);
    cplx s(0.0, 0.0), sd(0.0, 0.0);
    const double r = std::abs(z);
    double tail_ratio = std::min(0.999, r * 1.05);
    double last_term = 0.0;
    std::size_t k = 0;
    for (; k < coeffs.size(); ++k) {
        cplx term = coeffs[k] * zpow;
        s += term;
        sd += static_cast<double>(k) * coeffs[k] * (k == 0 ? cplx(0.0) : zpow / z);
        zpow *= z;
        last_term = std::abs(term);
        if (k > 8 && last_term / std::max(1e-300, std::abs(s)) * tail_ratio /
                             (1.0 - tail_ratio) <
                         rel_tol)
            break;
    }
    if (k == coeffs.size())
        throw NoConvergence("series truncation failed at order " +
                            std::to_string(coeffs.size()));
    SeriesPair out;
    if (rho == 0.0) {
        out.w = s;
        out.dw = sd;
    } else {
        cplx zr = std::exp(rho * std::log(z));  // principal branch
        out.w = zr * s;
        out.dw = zr * (sd + rho * s / z);
    }
    return out;
}

} // namespace

FundamentalMatrix evaluate_basis(const HypergeomParams& p, cplx z,
                                 const ContinuationOptions& opts) {
    if (std::abs(z) < 1e-14 || std::abs(z - 1.0) < 1e-14)
        throw Singular("evaluate_basis: z at a singular point");

    const double direct_radius = 0.8;
    cplx zs = z;
    bool continue_needed = std::abs(z) > direct_radius;
    if (continue_needed) zs = direct_radius * z / std::abs(z) * 0.625;  // radius 0.5

    const int order = 2000;
    SeriesSolution s0 = series_coefficients(p, order);

    // Second exponent rho = 1 - c; its series is the exponent-0 series of the
    // shifted parameters (a-c+1, b-c+1, 2-c) and is never resonant since
    // k(k + 1 - c) != 0 for k >= 1, 1 - c > 0.
    HypergeomParams shifted;
    shifted.a = p.a - p.c + Rational(1);
    shifted.b = p.b - p.c + Rational(1);
    shifted.c = Rational(2) - p.c;
    SeriesSolution s1 = series_coefficients(shifted, order);
    const double rho = 1.0 - p.cd();

    SeriesPair y0 = eval_series(s0.coeffs, 0.0, zs, 1e-14);
    SeriesPair y1 = eval_series(s1.coeffs, rho, zs, 1e-14);

    FundamentalMatrix f;
    f.at = zs;
    f.value = Mat2{y0.w, y1.w, y0.dw, y1.dw};
    if (!continue_needed) return f;
    return continue_along_path(p, safe_path(zs, z), f, opts);
}

// ---------------------------------------------------------------------------
// Continuation
// ---------------------------------------------------------------------------

namespace {

// Working matrix type of the integrator, templated on the scalar so that
// monodromy loops can run in long double (their products amplify integration
// error by ||M||^2) while metric evaluation stays in double for speed.
template <typename Real>
struct TMat2 {
    using C = std::complex<Real>;
    C a{}, b{}, c{}, d{};

    friend TMat2 operator*(const TMat2& x, const TMat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend TMat2 operator+(const TMat2& x, const TMat2& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend TMat2 operator*(C s, const TMat2& x) {
        return {s * x.a, s * x.b, s * x.c, s * x.d};
    }
    Real frobenius() const {
        using std::sqrt;
        return sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
    }
};

template <typename Real>
TMat2<Real> widen(const Mat2& m) {
    auto w = [](cplx v) { return std::complex<Real>(v.real(), v.imag()); };
    return {w(m.a), w(m.b), w(m.c), w(m.d)};
}

template <typename Real>
Mat2 narrow(const TMat2<Real>& m) {
    auto n = [](std::complex<Real> v) {
        return cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    };
    return {n(m.a), n(m.b), n(m.c), n(m.d)};
}

// First-order system Y' = A(z) Y for the state rows (w; w').
template <typename Real>
inline TMat2<Real> system_matrix(Real a, Real b, Real c, std::complex<Real> z) {
    std::complex<Real> q = z * (Real(1) - z);
    return TMat2<Real>{std::complex<Real>(0), std::complex<Real>(1), a * b / q,
                       ((a + b + Real(1)) * z - c) / q};
}

// Same system driven through the w = 1/z substitution: the path parameter is
// w, the state stays (w(z), dw/dz), dz = -dw / w^2.
template <typename Real>
inline TMat2<Real> system_matrix_inverted(Real a, Real b, Real c, std::complex<Real> w) {
    std::complex<Real> z = Real(1) / w;
    TMat2<Real> az = system_matrix(a, b, c, z);
    std::complex<Real> jac = Real(-1) / (w * w);
    return jac * az;
}

struct DormandPrince {
    // Classic DP5(4) tableau.
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

template <typename Real>
double clearance_of(std::complex<Real> z) {
    // Singular points: {0, 1} in the z chart, and also {0, 1} in the w chart
    // (w = 0 is infinity, w = 1 is z = 1; z = 0 sits at w = infinity, far from
    // the small |w| where the inverted chart is used).
    return static_cast<double>(std::min(std::abs(z), std::abs(z - Real(1))));
}

template <typename Real>
TMat2<Real> integrate_segment(bool inverted, Real a, Real b, Real c,
                              std::complex<Real> p0, std::complex<Real> p1,
                              TMat2<Real> y, const ContinuationOptions& opts) {
    using DP = DormandPrince;
    using C = std::complex<Real>;
    const C dz = p1 - p0;
    const double len = static_cast<double>(std::abs(dz));
    if (len == 0.0) return y;

    // In plain double the error estimator saturates near machine epsilon.
    const double tol = std::is_same_v<Real, double> ? std::max(opts.tol, 5e-14) : opts.tol;

    Real t = Real(0);
    Real h = Real(1) / 2;  // in units of the segment parameter
    auto f = [&](Real tt, const TMat2<Real>& yy) {
        C zt = p0 + tt * dz;
        return dz * (inverted ? system_matrix_inverted(a, b, c, zt)
                              : system_matrix(a, b, c, zt)) *
               yy;
    };
    TMat2<Real> k1 = f(Real(0), y);
    int iters = 0;
    while (t < Real(1)) {
        if (++iters > 2000000) throw StepUnderflow("continuation stalled");
        double clear = clearance_of(p0 + t * dz);
        if (clear < opts.min_clearance)
            throw PathTooClose("continuation path within " + std::to_string(clear) +
                               " of a singular point");
        Real hmax = Real(std::max(1e-13, opts.max_step_fraction * clear / len));
        h = std::min({h, hmax, Real(1) - t});

        for (;;) {
            TMat2<Real> k2 = f(t + Real(DP::c2) * h, y + (h * Real(DP::a21)) * k1);
            TMat2<Real> k3 = f(t + Real(DP::c3) * h,
                               y + (h * Real(DP::a31)) * k1 + (h * Real(DP::a32)) * k2);
            TMat2<Real> k4 =
                f(t + Real(DP::c4) * h, y + (h * Real(DP::a41)) * k1 +
                                            (h * Real(DP::a42)) * k2 +
                                            (h * Real(DP::a43)) * k3);
            TMat2<Real> k5 =
                f(t + Real(DP::c5) * h,
                  y + (h * Real(DP::a51)) * k1 + (h * Real(DP::a52)) * k2 +
                      (h * Real(DP::a53)) * k3 + (h * Real(DP::a54)) * k4);
            TMat2<Real> k6 = f(t + h, y + (h * Real(DP::a61)) * k1 +
                                          (h * Real(DP::a62)) * k2 +
                                          (h * Real(DP::a63)) * k3 +
                                          (h * Real(DP::a64)) * k4 +
                                          (h * Real(DP::a65)) * k5);
            TMat2<Real> ynew = y + (h * Real(DP::b1)) * k1 + (h * Real(DP::b3)) * k3 +
                               (h * Real(DP::b4)) * k4 + (h * Real(DP::b5)) * k5 +
                               (h * Real(DP::b6)) * k6;
            TMat2<Real> k7 = f(t + h, ynew);
            TMat2<Real> err = (h * Real(DP::e1)) * k1 + (h * Real(DP::e3)) * k3 +
                              (h * Real(DP::e4)) * k4 + (h * Real(DP::e5)) * k5 +
                              (h * Real(DP::e6)) * k6 + (h * Real(DP::e7)) * k7;
            Real scale = std::max(y.frobenius(), ynew.frobenius());
            double e = static_cast<double>(err.frobenius() /
                                           std::max(scale, Real(1e-60)));

            if (e <= tol) {
                t += h;
                y = ynew;
                k1 = k7;  // FSAL
                double grow = e > 0.0 ? 0.9 * std::pow(tol / e, 0.2) : 5.0;
                h *= Real(std::clamp(grow, 0.2, 5.0));
                break;
            }
            h *= Real(std::clamp(0.9 * std::pow(tol / e, 0.2), 0.1, 0.9));
            if (h < Real(1e-14)) throw StepUnderflow("step size underflow in continuation");
        }
    }
    return y;
}

template <typename Real>
Mat2 continue_typed(const HypergeomParams& p, const std::vector<cplx>& path,
                    const Mat2& start, const ContinuationOptions& opts, bool inverted) {
    TMat2<Real> y = widen<Real>(start);
    const Real a = static_cast<Real>(p.a.num()) / static_cast<Real>(p.a.den());
    const Real b = static_cast<Real>(p.b.num()) / static_cast<Real>(p.b.den());
    const Real c = static_cast<Real>(p.c.num()) / static_cast<Real>(p.c.den());
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        y = integrate_segment<Real>(
            inverted, a, b, c, std::complex<Real>(path[i].real(), path[i].imag()),
            std::complex<Real>(path[i + 1].real(), path[i + 1].imag()), y, opts);
    return narrow(y);
}

FundamentalMatrix continue_impl(const HypergeomParams& p, const std::vector<cplx>& path,
                                const FundamentalMatrix& f0,
                                const ContinuationOptions& opts, bool inverted) {
    if (path.empty()) return f0;
    if (std::abs(path.front() - f0.at) > 1e-9)
        throw std::invalid_argument("continue_along_path: path must start at F0's point");
    FundamentalMatrix out;
    out.value = opts.extended_precision
                    ? continue_typed<long double>(p, path, f0.value, opts, inverted)
                    : continue_typed<double>(p, path, f0.value, opts, inverted);
    out.at = path.back();
    return out;
}

} // namespace

FundamentalMatrix continue_along_path(const HypergeomParams& p,
                                      const std::vector<cplx>& path,
                                      const FundamentalMatrix& f0,
                                      const ContinuationOptions& opts) {
    return continue_impl(p, path, f0, opts, false);
}

FundamentalMatrix continue_along_path_inverted(const HypergeomParams& p,
                                               const std::vector<cplx>& path_w,
                                               const FundamentalMatrix& f0,
                                               const ContinuationOptions& opts) {
    return continue_impl(p, path_w, f0, opts, true);
}

std::vector<cplx> safe_path(cplx from, cplx to, double clearance) {
    std::vector<cplx> path{from};
    const cplx sing[2] = {cplx(0.0, 0.0), cplx(1.0, 0.0)};
    const cplx d = to - from;
    const double len2 = std::norm(d);

    struct Detour {
        double t_in, t_out;
        std::vector<cplx> points;
    };
    std::vector<Detour> detours;

    for (cplx s : sing) {
        if (len2 == 0.0) break;
        // Endpoints may legitimately sit close to a singular point (cone
        // sampling); the detour radius shrinks below their distances so the
        // endpoints always stay outside the detour circle.
        double r_det = std::min({clearance, 0.8 * std::abs(from - s), 0.8 * std::abs(to - s)});
        if (r_det <= 0.0) continue;
        double t_star = std::clamp((std::conj(d) * (s - from)).real() / len2, 0.0, 1.0);
        cplx closest = from + t_star * d;
        if (std::abs(closest - s) >= r_det) continue;
        // Chord of |z - s| = r_det cut by the segment.
        double tc = (std::conj(d) * (s - from)).real() / len2;
        double dist2 = std::norm(from + tc * d - s);
        double half = std::sqrt(std::max(0.0, (r_det * r_det - dist2) / len2));
        double t_in = std::max(0.0, tc - half);
        double t_out = std::min(1.0, tc + half);
        cplx p_in = from + t_in * d;
        cplx p_out = from + t_out * d;
        double a0 = std::arg(p_in - s);
        double a1 = std::arg(p_out - s);
        // Walk the arc on the upper side (shorter of the two candidates whose
        // midpoint has the larger imaginary part, for determinism).
        double sweep = a1 - a0;
        while (sweep <= -M_PI) sweep += 2.0 * M_PI;
        while (sweep > M_PI) sweep -= 2.0 * M_PI;
        double mid_up = (s + r_det * std::exp(cplx(0.0, a0 + 0.5 * sweep))).imag();
        if (mid_up < s.imag()) sweep = sweep > 0 ? sweep - 2.0 * M_PI : sweep + 2.0 * M_PI;
        Detour det;
        det.t_in = t_in;
        det.t_out = t_out;
        const int n_arc = 12;
        for (int k = 0; k <= n_arc; ++k) {
            double ang = a0 + sweep * k / n_arc;
            det.points.push_back(s + r_det * std::exp(cplx(0.0, ang)));
        }
        detours.push_back(std::move(det));
    }

    std::sort(detours.begin(), detours.end(),
              [](const Detour& x, const Detour& y) { return x.t_in < y.t_in; });
    for (const auto& det : detours)
        for (const auto& pt : det.points) path.push_back(pt);
    path.push_back(to);
    return path;
}

} // namespace tricone
