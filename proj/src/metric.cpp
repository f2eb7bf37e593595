#include "tricone/metric.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace tricone {

namespace {

// Square root factor of a positive Hermitian form: H = P^* P with
// P = diag(sqrt(l)) U^*; the frame is S = P^{-1} = U diag(1/sqrt(l)).
Mat2 frame_from_form(const Mat2& h) {
    HermEigs e = hermitian_eigs(h);
    if (e.l1 <= 0.0)
        throw std::domain_error("frame_from_form: form is not positive definite");
    // Column order of e.u matches (l1, l2).
    Mat2 d{1.0 / std::sqrt(e.l1), 0.0, 0.0, 1.0 / std::sqrt(e.l2)};
    return e.u * d;
}

// Unitary rotation W with (u, v) W = (0, *): sends the basepoint value of the
// developing map to 0.
Mat2 basepoint_rotation(cplx u, cplx v) {
    double n = std::sqrt(std::norm(u) + std::norm(v));
    if (n < 1e-300) return Mat2::identity();
    cplx c1 = -v / n, c2 = u / n;
    cplx d1 = std::conj(u) / n, d2 = std::conj(v) / n;
    return Mat2{c1, d1, c2, d2};
}

} // namespace

DevelopingContext make_developing_context(const AngleTriple& t,
                                          const MonodromyOptions& opts) {
    // The representation itself is computed at loop precision; pointwise
    // metric evaluation runs the double-precision integrator.
    DevelopingContext ctx{t, params_from_triple(t), monodromy_rep(t, opts), false,
                          Mat2::identity(), opts.basepoint,
                          ContinuationOptions{1e-12, 1e-8, opts.ode.max_step_fraction, false}};
    try {
        UnitarizabilityResult u = is_unitarizable(ctx.rep);
        if (u.unitarizable) {
            ctx.unitarizable = true;
            ctx.frame = frame_from_form(u.witness);
        }
    } catch (const Indeterminate&) {
        // Leave the identity frame; lambda may be multivalued.
    }
    // Rotate so that f(basepoint) = 0. The row of Y(b) * S is the top row of
    // S itself since Y(b) = I.
    Mat2 s = ctx.frame;
    ctx.frame = s * basepoint_rotation(s.a, s.b);
    return ctx;
}

DevelopingValue developing_value(const DevelopingContext& ctx, const FundamentalMatrix& fm) {
    Mat2 y = fm.value * ctx.frame;
    DevelopingValue out;
    out.f = y.a / y.b;
    out.df = -y.det() / (y.b * y.b);
    return out;
}

double density_value(const DevelopingContext& ctx, const FundamentalMatrix& fm) {
    Mat2 y = fm.value * ctx.frame;
    double n2 = std::norm(y.a) + std::norm(y.b);
    return 2.0 * std::abs(y.det()) / n2;
}

FundamentalMatrix fundamental_at(const DevelopingContext& ctx, cplx z) {
    FundamentalMatrix f0;
    f0.value = Mat2::identity();
    f0.at = ctx.basepoint;
    return continue_along_path(ctx.params, safe_path(ctx.basepoint, z, 0.2), f0, ctx.ode);
}

FundamentalMatrix fundamental_along(const DevelopingContext& ctx,
                                    const std::vector<cplx>& path) {
    FundamentalMatrix f0;
    f0.value = Mat2::identity();
    f0.at = ctx.basepoint;
    return continue_along_path(ctx.params, path, f0, ctx.ode);
}

DevelopingValue developing_map(const DevelopingContext& ctx, cplx z) {
    return developing_value(ctx, fundamental_at(ctx, z));
}

MetricSample density(const DevelopingContext& ctx, cplx z) {
    return MetricSample{z, density_value(ctx, fundamental_at(ctx, z))};
}

cplx schwarzian_coefficient(const AngleTriple& t, cplx z) {
    const double t1 = t[0].to_double(), t2 = t[1].to_double(), t3 = t[2].to_double();
    return (1.0 - t1 * t1) / (2.0 * z * z) +
           (1.0 - t2 * t2) / (2.0 * (z - 1.0) * (z - 1.0)) +
           (t1 * t1 + t2 * t2 - t3 * t3 - 1.0) / (2.0 * z * (z - 1.0));
}

// ---------------------------------------------------------------------------
// Cone exponents
// ---------------------------------------------------------------------------

namespace {

// Least squares for log(lambda) = a + s*log(r) + c*r^p. The extra regressor
// absorbs the leading analytic correction of the cone asymptotics (order
// r^min(2 theta, 1)), which otherwise biases the slope at the outer end of
// the fit window.
double fit_slope(const std::vector<double>& logr, const std::vector<double>& loglam,
                 double correction_power, double* rms_out) {
    const std::size_t n = logr.size();
    double m[3][3] = {{0}};
    double b[3] = {0, 0, 0};
    for (std::size_t i = 0; i < n; ++i) {
        double row[3] = {1.0, logr[i], std::exp(correction_power * logr[i])};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] += row[r] * row[c];
            b[r] += row[r] * loglam[i];
        }
    }
    // Solve the 3x3 normal system by Cramer elimination.
    double x[3];
    {
        double a00 = m[0][0], a01 = m[0][1], a02 = m[0][2];
        double a11 = m[1][1], a12 = m[1][2], a22 = m[2][2];
        double det = a00 * (a11 * a22 - a12 * a12) - a01 * (a01 * a22 - a12 * a02) +
                     a02 * (a01 * a12 - a11 * a02);
        double rhs0 = b[0], rhs1 = b[1], rhs2 = b[2];
        x[0] = (rhs0 * (a11 * a22 - a12 * a12) - a01 * (rhs1 * a22 - a12 * rhs2) +
                a02 * (rhs1 * a12 - a11 * rhs2)) /
               det;
        x[1] = (a00 * (rhs1 * a22 - rhs2 * a12) - rhs0 * (a01 * a22 - a12 * a02) +
                a02 * (a01 * rhs2 - rhs1 * a02)) /
               det;
        x[2] = (a00 * (a11 * rhs2 - rhs1 * a12) - a01 * (a01 * rhs2 - rhs1 * a02) +
                rhs0 * (a01 * a12 - a11 * a02)) /
               det;
    }
    double rms = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = loglam[i] - x[0] - x[1] * logr[i] -
                   x[2] * std::exp(correction_power * logr[i]);
        rms += r * r;
    }
    *rms_out = std::sqrt(rms / n);
    return x[1];
}

} // namespace

double cone_exponent(const DevelopingContext& ctx, int cone) {
    if (cone < 0 || cone > 2)
        throw std::invalid_argument("cone_exponent: cone index must be 0, 1 or 2");

    const int n_pts = 13;
    std::vector<double> radii(n_pts);
    for (int i = 0; i < n_pts; ++i)
        radii[static_cast<std::size_t>(i)] =
            1e-2 * std::pow(1e-2, i / (n_pts - 1.0));  // 1e-2 down to 1e-4

    std::vector<double> logr, loglam;
    logr.reserve(n_pts);
    loglam.reserve(n_pts);

    if (cone == 0 || cone == 1) {
        const cplx s(static_cast<double>(cone), 0.0);
        const cplx dir = std::exp(cplx(0.0, cone == 0 ? 2.0 * M_PI / 3.0 : M_PI / 3.0));
        const double r_anchor = 0.05;
        FundamentalMatrix cur =
            fundamental_along(ctx, safe_path(ctx.basepoint, s + r_anchor * dir, 0.2));
        for (double r : radii) {
            cur = continue_along_path(ctx.params, {cur.at, s + r * dir}, cur, ctx.ode);
            logr.push_back(std::log(r));
            loglam.push_back(std::log(density_value(ctx, cur)));
        }
    } else {
        // Chart w = 1/z; the density transforms with |dz/dw| = 1/|w|^2.
        const cplx dir = std::exp(cplx(0.0, 2.0 * M_PI / 3.0));
        const double rho_anchor = 0.05;
        cplx z_anchor = 1.0 / (rho_anchor * dir);
        FundamentalMatrix cur =
            fundamental_along(ctx, safe_path(ctx.basepoint, z_anchor, 0.2));
        cur.at = rho_anchor * dir;  // switch bookkeeping to the w chart
        for (double rho : radii) {
            cur = continue_along_path_inverted(ctx.params, {cur.at, rho * dir}, cur, ctx.ode);
            cplx z = 1.0 / cur.at;
            FundamentalMatrix in_z = cur;
            double lam_w = density_value(ctx, in_z) * std::norm(z);
            logr.push_back(std::log(rho));
            loglam.push_back(std::log(lam_w));
        }
    }

    double rms = 0.0;
    double theta = ctx.triple[cone].to_double();
    double slope = fit_slope(logr, loglam, std::min(2.0 * theta, 1.0), &rms);
    if (rms > 0.05)
        throw FitUnstable("cone_exponent: rms residual " + std::to_string(rms));
    return slope;
}

// ---------------------------------------------------------------------------
// Total area
// ---------------------------------------------------------------------------

namespace {

// Smooth radial cutoff: 1 on [0, r0], 0 beyond r1.
double cutoff(double r, double r0, double r1) {
    return 1.0 - smoothstep_inf((r - r0) / (r1 - r0));
}

struct AreaGrid {
    int n_phi = 48;       // angular nodes per chart (periodic trapezoid)
    int n_rad = 10;       // radial Gauss nodes per panel
};

// One cone chart: integrates lambda^2 * cutoff(r) over the disk of radius R
// at center s (s = 0 or 1), in polar coordinates with the substitution
// r = R u^q flattening the r^(2 theta - 2) singularity, marching each ray
// inward from the anchor. Adds the analytic tail below r_min:
// lambda^2 ~ C^2 r^(2 theta - 2) gives integral lambda(r_min)^2 r_min^2/(2 theta).
double disk_piece(const DevelopingContext& ctx, cplx s, double theta, double R,
                  const AreaGrid& grid) {
    const double q = std::max(1.0, 1.5 / theta);
    const double r_min = 1e-5;
    const double u_min = std::pow(r_min / R, 1.0 / q);

    // Geometric panels in u from u_min to 1.
    std::vector<double> breaks{u_min};
    while (breaks.back() < 0.25) breaks.push_back(breaks.back() * 4.0);
    for (double b : {0.5, 1.0}) breaks.push_back(b);

    const auto& gl = gauss_legendre(grid.n_rad);
    std::vector<double> contributions;

    for (int iphi = 0; iphi < grid.n_phi; ++iphi) {
        double phi = 2.0 * M_PI * iphi / grid.n_phi;
        cplx dir = std::exp(cplx(0.0, phi));

        // Radial nodes, descending in r.
        std::vector<double> us;
        for (std::size_t p = breaks.size() - 1; p-- > 0;) {
            double lo = breaks[p], hi = breaks[p + 1];
            for (std::size_t k = gl.nodes.size(); k-- > 0;)
                us.push_back(0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.nodes[k]);
        }

        FundamentalMatrix cur =
            fundamental_along(ctx, safe_path(ctx.basepoint, s + R * dir, 0.2));
        double ray_sum = 0.0;
        std::size_t idx = 0;
        for (std::size_t p = breaks.size() - 1; p-- > 0;) {
            double lo = breaks[p], hi = breaks[p + 1];
            for (std::size_t k = gl.nodes.size(); k-- > 0; ++idx) {
                double u = us[idx];
                double r = R * std::pow(u, q);
                cur = continue_along_path(ctx.params, {cur.at, s + r * dir}, cur, ctx.ode);
                double lam = density_value(ctx, cur);
                double drdu = R * q * std::pow(u, q - 1.0);
                double w = 0.5 * (hi - lo) * gl.weights[k];
                ray_sum += lam * lam * cutoff(r, 0.5 * R, R) * r * drdu * w;
            }
        }
        // Tail below r_min from the cone asymptotics.
        cur = continue_along_path(ctx.params, {cur.at, s + r_min * dir}, cur, ctx.ode);
        double lam_min = density_value(ctx, cur);
        ray_sum += lam_min * lam_min * r_min * r_min / (2.0 * theta);

        contributions.push_back(ray_sum * (2.0 * M_PI / grid.n_phi));
    }
    return stable_sum(contributions);
}

// The chart at infinity: same structure in w = 1/z with the transformed
// density lambda_w = lambda(z) |z|^2.
double infinity_piece(const DevelopingContext& ctx, double theta, double R_w,
                      const AreaGrid& grid) {
    const double q = std::max(1.0, 1.5 / theta);
    const double rho_min = 1e-5;
    const double u_min = std::pow(rho_min / R_w, 1.0 / q);

    std::vector<double> breaks{u_min};
    while (breaks.back() < 0.25) breaks.push_back(breaks.back() * 4.0);
    for (double b : {0.5, 1.0}) breaks.push_back(b);

    const auto& gl = gauss_legendre(grid.n_rad);
    std::vector<double> contributions;

    for (int iphi = 0; iphi < grid.n_phi; ++iphi) {
        double phi = 2.0 * M_PI * iphi / grid.n_phi;
        cplx dir = std::exp(cplx(0.0, phi));

        cplx w_anchor = R_w * dir;
        FundamentalMatrix cur =
            fundamental_along(ctx, safe_path(ctx.basepoint, 1.0 / w_anchor, 0.2));
        cur.at = w_anchor;

        double ray_sum = 0.0;
        for (std::size_t p = breaks.size() - 1; p-- > 0;) {
            double lo = breaks[p], hi = breaks[p + 1];
            for (std::size_t k = gl.nodes.size(); k-- > 0;) {
                double u = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.nodes[k];
                double rho = R_w * std::pow(u, q);
                cur = continue_along_path_inverted(ctx.params, {cur.at, rho * dir}, cur,
                                                   ctx.ode);
                double lam_w = density_value(ctx, cur) * std::norm(1.0 / cur.at);
                double drdu = R_w * q * std::pow(u, q - 1.0);
                double w = 0.5 * (hi - lo) * gl.weights[k];
                ray_sum += lam_w * lam_w * cutoff(rho, 0.5 * R_w, R_w) * rho * drdu * w;
            }
        }
        cur = continue_along_path_inverted(ctx.params, {cur.at, rho_min * dir}, cur, ctx.ode);
        double lam_min = density_value(ctx, cur) * std::norm(1.0 / cur.at);
        ray_sum += lam_min * lam_min * rho_min * rho_min / (2.0 * theta);

        contributions.push_back(ray_sum * (2.0 * M_PI / grid.n_phi));
    }
    return stable_sum(contributions);
}

// Remainder of the plane in polar coordinates around 0, with the partition
// weight 1 - chi_0 - chi_1 - chi_inf. The weight vanishes smoothly inside
// r <= 1/4 around each cone and beyond |z| >= 5, so rays skip dead nodes and
// restart continuation after crossing the dead disk around z = 1.
double middle_piece(const DevelopingContext& ctx, const AreaGrid& grid) {
    auto weight = [](cplx z) {
        double az = std::abs(z);
        double w = 1.0 - cutoff(az, 0.25, 0.5) - cutoff(std::abs(z - 1.0), 0.25, 0.5) -
                   cutoff(1.0 / az, 0.2, 0.4);
        return std::max(0.0, w);
    };

    const std::vector<double> breaks{0.25, 0.35, 0.5,  0.65, 0.8, 0.95, 1.1,
                                     1.3,  1.6,  2.0, 2.6,  3.5, 5.0};
    const auto& gl = gauss_legendre(grid.n_rad);
    std::vector<double> contributions;

    for (int iphi = 0; iphi < 2 * grid.n_phi; ++iphi) {
        double phi = 2.0 * M_PI * iphi / (2 * grid.n_phi);
        cplx dir = std::exp(cplx(0.0, phi));

        double ray_sum = 0.0;
        std::optional<FundamentalMatrix> cur;
        for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
            double lo = breaks[p], hi = breaks[p + 1];
            for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
                double r = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.nodes[k];
                cplx z = r * dir;
                double w = weight(z);
                if (w <= 1e-13) {
                    if (std::abs(z - 1.0) < 0.25) cur.reset();  // crossing the dead disk
                    continue;
                }
                if (!cur)
                    cur = fundamental_along(ctx, safe_path(ctx.basepoint, z, 0.2));
                else
                    *cur = continue_along_path(ctx.params, {cur->at, z}, *cur, ctx.ode);
                double lam = density_value(ctx, *cur);
                ray_sum += lam * lam * w * r * 0.5 * (hi - lo) * gl.weights[k];
            }
        }
        contributions.push_back(ray_sum * (2.0 * M_PI / (2 * grid.n_phi)));
    }
    return stable_sum(contributions);
}

double area_pass(const DevelopingContext& ctx, const AreaGrid& grid) {
    double i0 = disk_piece(ctx, cplx(0.0, 0.0), ctx.triple[0].to_double(), 0.5, grid);
    double i1 = disk_piece(ctx, cplx(1.0, 0.0), ctx.triple[1].to_double(), 0.5, grid);
    double iinf = infinity_piece(ctx, ctx.triple[2].to_double(), 0.4, grid);
    double imid = middle_piece(ctx, grid);
    return i0 + i1 + iinf + imid;
}

} // namespace

double total_area(const DevelopingContext& ctx, double rel_tol) {
    if (!decide(ctx.triple).exists)
        throw MetricUndefined("total_area: no metric exists for " + ctx.triple.str());
    if (!ctx.unitarizable)
        throw MetricUndefined("total_area: context has no unitary frame");

    AreaGrid grid;
    double prev = area_pass(ctx, grid);
    for (int pass = 0; pass < 3; ++pass) {
        grid.n_phi *= 2;
        grid.n_rad = grid.n_rad + grid.n_rad / 2;
        double next = area_pass(ctx, grid);
        if (std::abs(next - prev) <= 0.5 * rel_tol * std::abs(next)) return next;
        prev = next;
    }
    throw QuadratureBudgetExceeded("total_area: no convergence to rel_tol " +
                                   std::to_string(rel_tol));
}

} // namespace tricone
