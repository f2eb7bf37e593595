#include "tricone/numerics.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace tricone {

Mat2 unit_det(const Mat2& m) {
    cplx dt = m.det();
    double a = std::abs(dt);
    if (a < 1e-300) throw std::domain_error("unit_det: singular matrix");
    cplx s = std::sqrt(dt);
    return {m.a / s, m.b / s, m.c / s, m.d / s};
}

HermEigs hermitian_eigs(const Mat2& h) {
    // h = [[p, w], [conj(w), q]] with p, q real.
    double p = h.a.real();
    double q = h.d.real();
    cplx w = h.b;
    double m = 0.5 * (p + q);
    double r = std::sqrt(0.25 * (p - q) * (p - q) + std::norm(w));
    HermEigs e;
    e.l1 = m - r;
    e.l2 = m + r;
    if (r < 1e-300) {
        e.u = Mat2::identity();
        return e;
    }
    // Eigenvector for l2: (w, l2 - p) unless w ~ 0.
    cplx v1, v2;
    if (std::abs(w) > 1e-300) {
        v1 = w;
        v2 = cplx(e.l2 - p, 0.0);
    } else {
        bool top = p > q;
        v1 = top ? 1.0 : 0.0;
        v2 = top ? 0.0 : 1.0;
    }
    double n = std::sqrt(std::norm(v1) + std::norm(v2));
    v1 /= n;
    v2 /= n;
    // Columns: [v_perp, v] so that order matches (l1, l2).
    e.u = Mat2{-std::conj(v2), v1, std::conj(v1), v2};
    return e;
}

SymEigs jacobi_eigs(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a[i][i] < a[j][j]; });

    SymEigs out;
    out.values.resize(n);
    out.vectors.assign(n, std::vector<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a[order[k]][order[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors[k][i] = v[i][order[k]];
    }
    return out;
}

const GaussLegendre& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussLegendre gl;
    gl.nodes.resize(static_cast<std::size_t>(n));
    gl.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        gl.nodes[static_cast<std::size_t>(i)] = x;
        gl.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    auto [pos, _] = cache.emplace(n, std::move(gl));
    return pos->second;
}

std::vector<cplx> solve_dense(std::vector<std::vector<cplx>> a, std::vector<cplx> rhs) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-250)
            throw std::domain_error("solve_dense: singular system");
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            cplx f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<cplx> x(n);
    for (std::size_t i = n; i-- > 0;) {
        cplx s = rhs[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

int winding_number(const std::vector<cplx>& path, cplx around) {
    double total = 0.0;
    const std::size_t n = path.size();
    for (std::size_t i = 0; i < n; ++i) {
        cplx u = path[i] - around;
        cplx v = path[(i + 1) % n] - around;
        total += std::arg(v / u);
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

double smoothstep_inf(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double f0 = std::exp(-1.0 / x);
    double f1 = std::exp(-1.0 / (1.0 - x));
    return f0 / (f0 + f1);
}

double stable_sum(const std::vector<double>& terms) {
    double s = 0.0, comp = 0.0;
    for (double t : terms) {
        double v = s + t;
        if (std::abs(s) >= std::abs(t))
            comp += (s - v) + t;
        else
            comp += (t - v) + s;
        s = v;
    }
    return s + comp;
}

} // namespace tricone
