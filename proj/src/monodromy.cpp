#include "tricone/monodromy.hpp"

#include <algorithm>
#include <cmath>

namespace tricone {

std::vector<cplx> loop_path(int singularity, cplx basepoint, double radius,
                            int samples) {
    if (singularity != 0 && singularity != 1)
        throw std::invalid_argument("loop_path: singularity must be 0 or 1");
    const cplx s(static_cast<double>(singularity), 0.0);
    if (radius <= 0.0 || radius >= 1.0 || radius >= std::abs(basepoint - s))
        throw BadRadius("loop_path: radius " + std::to_string(radius) +
                        " incompatible with basepoint");
    if (samples < 8) throw std::invalid_argument("loop_path: too few samples");

    std::vector<cplx> path;
    path.reserve(static_cast<std::size_t>(samples) + 3);
    path.push_back(basepoint);
    const double phi0 = std::arg(basepoint - s);
    for (int k = 0; k <= samples; ++k) {
        double ang = phi0 + 2.0 * M_PI * k / samples;
        path.push_back(s + radius * std::exp(cplx(0.0, ang)));
    }
    path.push_back(basepoint);
    return path;
}

namespace {

// Large negatively oriented circle enclosing both finite singular points:
// a positively oriented simple loop around infinity. Reached from the
// basepoint by a vertical segment, which stays clear of 0 and 1.
std::vector<cplx> infinity_loop(cplx basepoint, double radius, int samples) {
    std::vector<cplx> path;
    path.push_back(basepoint);
    const double phi0 = M_PI / 2.0;
    for (int k = 0; k <= samples; ++k) {
        double ang = phi0 - 2.0 * M_PI * k / samples;  // clockwise
        path.push_back(basepoint + radius * std::exp(cplx(0.0, ang)));
    }
    path.push_back(basepoint);
    return path;
}

} // namespace

MonodromyRep monodromy_rep(const AngleTriple& t, const MonodromyOptions& opts) {
    return monodromy_rep(params_from_triple(t), opts);
}

MonodromyRep monodromy_rep(const HypergeomParams& p, const MonodromyOptions& opts) {
    FundamentalMatrix f0;
    f0.value = Mat2::identity();
    f0.at = opts.basepoint;

    auto run = [&](const std::vector<cplx>& path) {
        return continue_along_path(p, path, f0, opts.ode).value;
    };

    MonodromyRep rep;
    rep.basepoint = opts.basepoint;
    rep.tol = opts.tol;
    rep.m0 = run(loop_path(0, opts.basepoint, opts.radius, opts.samples));
    rep.m1 = run(loop_path(1, opts.basepoint, opts.radius, opts.samples));
    rep.minf = run(infinity_loop(opts.basepoint, 3.0, 2 * opts.samples));
    return rep;
}

GeneratorClass classify_generator(const Mat2& m, double tol) {
    const Mat2 n = unit_det(m);
    GeneratorClass g;
    // Projective identity: n = +-I.
    if (std::min(dist(n, Mat2::identity()),
                 dist(n, cplx(-1.0) * Mat2::identity())) <= tol) {
        g.kind = GeneratorKind::Identity;
        return g;
    }
    const cplx tr = n.trace();
    if (std::abs(tr.imag()) <= tol) {
        double re = std::abs(tr.real());
        if (re < 2.0 - tol) {
            g.kind = GeneratorKind::Elliptic;
            g.rotation = 2.0 * std::acos(std::clamp(re / 2.0, 0.0, 1.0));
            return g;
        }
        if (re <= 2.0 + tol) {
            // Trace +-2 but not +-I: a single fixed point.
            g.kind = GeneratorKind::Parabolic;
            return g;
        }
    }
    g.kind = GeneratorKind::Loxodromic;
    return g;
}

namespace {

// Hermitian basis: H(x) = x0*[[1,0],[0,0]] + x1*[[0,0],[0,1]]
//                        + x2*[[0,1],[1,0]] + x3*[[0,i],[-i,0]].
Mat2 hermitian_from(const std::array<double, 4>& x) {
    return Mat2{cplx(x[0], 0.0), cplx(x[2], x[3]), cplx(x[2], -x[3]), cplx(x[1], 0.0)};
}

// Signed conditioning of a Hermitian candidate: det / max|eig|^2. Positive
// iff definite; the magnitude is the min/max eigenvalue ratio.
double definiteness_ratio(const Mat2& h) {
    HermEigs he = hermitian_eigs(h);
    double mx = std::max(std::abs(he.l1), std::abs(he.l2));
    if (mx < 1e-300) return 0.0;
    return (he.l1 * he.l2) / (mx * mx);
}

struct InvarianceSolve {
    std::array<double, 4> best_x{};
    double ratio = -2.0;          // definiteness ratio of the best valid candidate
    double residual = 1e300;      // direct ||A x|| of that candidate
    double min_direct_residual = 1e300;
    double sigma_max = 0.0;
    bool any_candidate = false;
    std::array<double, 4> kernel_x{};  // kernel-most direction regardless of validity
};

// Least-squares treatment of the joint invariance system Mj^* H Mj = H over
// Hermitian H (a real 4-vector). Kernel directions are suggested by the
// normal matrix and re-measured by their direct residual ||A x||, because
// sqrt(eig(A^T A)) cannot resolve singular values below sqrt(eps) * ||A||.
InvarianceSolve solve_invariance(const std::vector<Mat2>& generators) {
    std::vector<std::array<double, 4>> a;
    for (const Mat2& g : generators) {
        std::array<Mat2, 4> img;
        for (int j = 0; j < 4; ++j) {
            std::array<double, 4> e{0, 0, 0, 0};
            e[static_cast<std::size_t>(j)] = 1.0;
            img[static_cast<std::size_t>(j)] = g.adjoint() * hermitian_from(e) * g - hermitian_from(e);
        }
        for (int comp = 0; comp < 4; ++comp) {
            std::array<double, 4> row{};
            for (int j = 0; j < 4; ++j) {
                const Mat2& r = img[static_cast<std::size_t>(j)];
                row[static_cast<std::size_t>(j)] = comp == 0   ? r.a.real()
                                                   : comp == 1 ? r.d.real()
                                                   : comp == 2 ? r.b.real()
                                                               : r.b.imag();
            }
            a.push_back(row);
        }
    }

    std::vector<std::vector<double>> s(4, std::vector<double>(4, 0.0));
    for (const auto& row : a)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                    row[static_cast<std::size_t>(i)] * row[static_cast<std::size_t>(j)];

    SymEigs eig = jacobi_eigs(s);
    std::array<double, 4> sigma{};
    for (int i = 0; i < 4; ++i)
        sigma[static_cast<std::size_t>(i)] =
            std::sqrt(std::max(0.0, eig.values[static_cast<std::size_t>(i)]));

    InvarianceSolve out;
    out.sigma_max = sigma[3];
    const double scale = std::max(1.0, sigma[3]);
    const double residual_ok = 1e-8 * scale;

    auto residual_of = [&](const std::array<double, 4>& x) {
        double r2 = 0.0;
        for (const auto& row : a) {
            double v = 0.0;
            for (int i = 0; i < 4; ++i)
                v += row[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
            r2 += v * v;
        }
        return std::sqrt(r2);
    };

    auto eigvec = [&](int k) {
        std::array<double, 4> x{};
        for (int i = 0; i < 4; ++i)
            x[static_cast<std::size_t>(i)] =
                eig.vectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
        return x;
    };
    out.kernel_x = eigvec(0);

    auto consider = [&](const std::array<double, 4>& x) {
        double n = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
        if (n < 1e-14) return;
        std::array<double, 4> xn = x;
        for (auto& v : xn) v /= n;
        double rr = residual_of(xn);
        out.min_direct_residual = std::min(out.min_direct_residual, rr);
        if (rr > residual_ok) return;
        double r = definiteness_ratio(hermitian_from(xn));
        if (!out.any_candidate || r > out.ratio) {
            out.ratio = r;
            out.best_x = xn;
            out.residual = rr;
            out.any_candidate = true;
        }
    };

    int dim = 0;
    while (dim < 4 && sigma[static_cast<std::size_t>(dim)] <= 1e-5 * scale) ++dim;

    if (dim <= 1) {
        consider(eigvec(0));
    } else {
        // The invariant-form space of a non-scalar pair has dimension at most
        // 2; sweep the leading plane for its best definite element.
        const auto v0 = eigvec(0);
        const auto v1 = eigvec(1);
        const int n_grid = 1440;
        for (int k = 0; k < n_grid; ++k) {
            double ang = M_PI * k / n_grid;
            std::array<double, 4> x{};
            for (std::size_t i = 0; i < 4; ++i)
                x[i] = std::cos(ang) * v0[i] + std::sin(ang) * v1[i];
            consider(x);
        }
        for (int extra = 2; extra < dim; ++extra) consider(eigvec(extra));
    }
    return out;
}

// Positive-definite invariant form of a single diagonalizable unit-determinant
// matrix with unimodular spectrum: H = V^{-*} V^{-1} for G = V D V^{-1}.
Mat2 form_from_eigenvectors(const Mat2& g) {
    cplx half = g.trace() / 2.0;
    cplx disc = std::sqrt(half * half - 1.0);
    cplx mu = half + disc;
    if (std::abs(mu - half) < 1e-14) return Mat2::identity();
    // Eigenvectors of [[a,b],[c,d]] for eigenvalue mu: (b, mu - a) or (mu - d, c).
    auto evec = [&](cplx lam) {
        cplx v1 = g.b, v2 = lam - g.a;
        if (std::abs(v1) + std::abs(v2) < 1e-12 * (std::abs(g.a) + std::abs(g.d))) {
            v1 = lam - g.d;
            v2 = g.c;
        }
        double n = std::sqrt(std::norm(v1) + std::norm(v2));
        return std::pair<cplx, cplx>{v1 / n, v2 / n};
    };
    auto [p1, p2] = evec(mu);
    auto [q1, q2] = evec(half - disc);
    Mat2 v{p1, q1, p2, q2};
    Mat2 vinv = v.inverse();
    return vinv.adjoint() * vinv;
}

} // namespace

UnitarizabilityResult invariant_hermitian_form(const std::vector<Mat2>& generators) {
    if (generators.size() != 2)
        throw std::invalid_argument("invariant_hermitian_form: expects two generators");
    const Mat2 g0 = unit_det(generators[0]);
    const Mat2 g1 = unit_det(generators[1]);

    // Trace coordinates determine the pair up to conjugacy (up to sign lifts,
    // under which kappa below is invariant).
    const cplx t0 = g0.trace();
    const cplx t1 = g1.trace();
    const cplx t01 = (g1 * g0).trace();
    const double tmax =
        std::max({1.0, std::abs(t0), std::abs(t1), std::abs(t01)});
    const double im = std::max({std::abs(t0.imag()), std::abs(t1.imag()),
                                std::abs(t01.imag())});
    const cplx kappa_c = t0 * t0 + t1 * t1 + t01 * t01 - t0 * t1 * t01 - 4.0;
    const double kappa = kappa_c.real();  // = tr[G0,G1] - 2
    const double band = 1e-7 * tmax * tmax;

    InvarianceSolve ls = solve_invariance({g0, g1});

    UnitarizabilityResult res;
    res.witness = hermitian_from(ls.any_candidate ? ls.best_x : ls.kernel_x);
    res.residual = ls.any_candidate ? ls.residual : ls.min_direct_residual;
    res.eig_ratio = ls.any_candidate ? ls.ratio : 0.0;

    // Projectively trivial pair: every form works.
    if (ls.sigma_max <= 1e-10) {
        res.unitarizable = true;
        res.witness = Mat2::identity();
        res.eig_ratio = 1.0;
        res.residual = 0.0;
        return res;
    }

    if (im > 1e-6 * tmax) {  // non-real character: never isometric
        res.unitarizable = false;
        return res;
    }

    if (kappa > band) {
        // Real character on the other side of the reducible locus: conjugate
        // into SL(2,R), not into SU(2).
        res.unitarizable = false;
        return res;
    }

    if (kappa < -band) {
        // Irreducible. SU(2)-conjugacy holds iff every trace lies in [-2, 2].
        const double edge = 1e-9 * tmax;
        double worst = std::max({std::abs(t0.real()), std::abs(t1.real()),
                                 std::abs(t01.real())});
        if (worst > 2.0 + edge) {
            res.unitarizable = false;
            return res;
        }
        if (worst > 2.0 - edge)
            throw Indeterminate("trace at the elliptic boundary: " + std::to_string(worst));
        // The invariant form is unique here; the linear system must confirm.
        if (!ls.any_candidate || ls.ratio < 1e-6)
            throw Indeterminate("irreducible SU(2) character but ill-conditioned witness "
                                "(ratio " + std::to_string(res.eig_ratio) + ")");
        res.unitarizable = true;
        return res;
    }

    // Reducible locus: the generators share an eigenvector. Unitarizable iff
    // the pair is simultaneously diagonalizable with unimodular spectrum,
    // i.e. no parabolic among the generators and their product, and the pair
    // commutes projectively.
    auto kinds = {classify_generator(g0), classify_generator(g1),
                  classify_generator(g1 * g0)};
    for (const auto& k : kinds) {
        if (k.kind == GeneratorKind::Parabolic) {
            res.unitarizable = false;
            return res;
        }
        if (k.kind == GeneratorKind::Loxodromic) {
            res.unitarizable = false;
            return res;
        }
    }

    const double nrm = std::max(1.0, g0.frobenius() * g1.frobenius());
    Mat2 comm = g0 * g1 * g0.inverse() * g1.inverse();
    double dev = std::min(dist(comm, Mat2::identity()),
                          dist(comm, cplx(-1.0) * Mat2::identity()));
    if (dev <= 1e-7 * nrm) {
        // Split: common eigenbasis with elliptic rotations.
        GeneratorClass c0 = classify_generator(g0);
        Mat2 h = c0.kind == GeneratorKind::Elliptic ? form_from_eigenvectors(g0)
                                                    : form_from_eigenvectors(g1);
        double hn = h.frobenius();
        Mat2 hs = (1.0 / hn) * h;
        res.witness = hs;
        res.eig_ratio = definiteness_ratio(hs);
        Mat2 r0 = g0.adjoint() * hs * g0 - hs;
        Mat2 r1 = g1.adjoint() * hs * g1 - hs;
        res.residual = std::max(r0.frobenius(), r1.frobenius());
        if (res.eig_ratio >= 1e-6 && res.residual <= 1e-7 * nrm) {
            res.unitarizable = true;
            return res;
        }
        throw Indeterminate("split reducible pair with ill-conditioned common form");
    }
    if (dev >= 1e-5 * nrm) {
        // Shares exactly one eigenvector: any invariant form is singular.
        res.unitarizable = false;
        return res;
    }
    throw Indeterminate("commutator deviation " + std::to_string(dev) +
                        " inside the ambiguity band");
}

UnitarizabilityResult is_unitarizable(const MonodromyRep& rep) {
    return invariant_hermitian_form({unit_det(rep.m0), unit_det(rep.m1)});
}

} // namespace tricone
