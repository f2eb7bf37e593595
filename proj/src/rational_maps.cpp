#include "tricone/rational_maps.hpp"

#include <algorithm>
#include <cmath>

#include "tricone/rational.hpp"

namespace tricone {

namespace {

std::vector<cplx> trimmed(std::vector<cplx> p, double tol) {
    double scale = 0.0;
    for (const cplx& c : p) scale = std::max(scale, std::abs(c));
    while (p.size() > 1 && std::abs(p.back()) <= tol * scale) p.pop_back();
    return p;
}

std::vector<cplx> derivative(const std::vector<cplx>& p) {
    if (p.size() <= 1) return {cplx(0.0)};
    std::vector<cplx> d(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k)
        d[k - 1] = static_cast<double>(k) * p[k];
    return d;
}

std::vector<cplx> multiply(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> out(a.size() + b.size() - 1, cplx(0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

} // namespace

cplx RationalMap::eval(cplx z) const {
    auto horner = [](const std::vector<cplx>& p, cplx x) {
        cplx acc(0.0);
        for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
        return acc;
    };
    return horner(num, z) / horner(den, z);
}

std::int64_t degree_for(const AngleTriple& t) {
    for (int j = 0; j < 3; ++j)
        if (!t[j].is_integer())
            throw NotAdmissible("degree_for: entry " + t[j].str() + " is not an integer");
    std::int64_t m0 = t[0].num(), m1 = t[1].num(), m2 = t[2].num();
    std::int64_t sum = m0 + m1 + m2;
    if (sum % 2 == 0)
        throw NotAdmissible("degree_for: sum " + std::to_string(sum) + " is even");
    if (m0 >= m1 + m2 || m1 >= m0 + m2 || m2 >= m0 + m1)
        throw NotAdmissible("degree_for: an entry reaches the sum of the others");
    return (sum - 1) / 2;
}

RationalMap construct(const AngleTriple& t) {
    const std::int64_t d = degree_for(t);
    const std::int64_t m0 = t[0].num(), m1 = t[1].num(), minf = t[2].num();
    const std::int64_t p_deg = d - m0;   // f = z^m0 P / Q
    const std::int64_t q_deg = d - minf; // Q monic of this degree

    // Unknowns: P_0..P_p, Q_0..Q_{q-1}. Conditions: (z-1)^m1 divides
    // D = z^m0 P - Q, i.e. D^(k)(1)/k! = 0 for k = 0..m1-1. The monic Q_q
    // moves to the right-hand side. The counting is exact:
    // p+1+q = 2d - m0 - minf + 1 = m1.
    const std::int64_t n_unknown = p_deg + 1 + q_deg;
    if (n_unknown != m1)
        throw SolveFailed("construct: inconsistent dimension bookkeeping");

    auto binom = [](std::int64_t n, std::int64_t k) -> std::int64_t {
        if (k < 0 || k > n) return 0;
        k = std::min(k, n - k);
        std::int64_t r = 1;
        for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };

    const auto n = static_cast<std::size_t>(n_unknown);
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> rhs(n, Rational(0));
    for (std::int64_t k = 0; k < m1; ++k) {
        auto kk = static_cast<std::size_t>(k);
        for (std::int64_t j = 0; j <= p_deg; ++j)
            a[kk][static_cast<std::size_t>(j)] = Rational(binom(m0 + j, k));
        for (std::int64_t j = 0; j < q_deg; ++j)
            a[kk][static_cast<std::size_t>(p_deg + 1 + j)] = Rational(-binom(j, k));
        rhs[kk] = Rational(binom(q_deg, k));
    }

    // Exact Gaussian elimination.
    std::vector<Rational> x(n, Rational(0));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw SolveFailed("construct: singular coefficient system");
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        Rational s = rhs[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }

    // Degeneracy guards: exact local degrees require P(0) != 0 and a nonzero
    // leading coefficient.
    if (x[0].is_zero() || x[static_cast<std::size_t>(p_deg)].is_zero())
        throw SolveFailed("construct: degenerate solution (vanishing edge coefficient)");

    RationalMap f;
    f.degree = static_cast<int>(d);
    f.num.assign(static_cast<std::size_t>(m0 + p_deg) + 1, cplx(0.0));
    for (std::int64_t j = 0; j <= p_deg; ++j)
        f.num[static_cast<std::size_t>(m0 + j)] =
            cplx(x[static_cast<std::size_t>(j)].to_double(), 0.0);
    f.den.assign(static_cast<std::size_t>(q_deg) + 1, cplx(0.0));
    for (std::int64_t j = 0; j < q_deg; ++j)
        f.den[static_cast<std::size_t>(j)] =
            cplx(x[static_cast<std::size_t>(p_deg + 1 + j)].to_double(), 0.0);
    f.den[static_cast<std::size_t>(q_deg)] = cplx(1.0, 0.0);

    if (!verify(f, t)) throw SolveFailed("construct: solution failed verification");
    return f;
}

bool verify(const RationalMap& f, const AngleTriple& t) {
    for (int j = 0; j < 3; ++j)
        if (!t[j].is_integer() || !t[j].is_positive()) return false;
    const std::int64_t m0 = t[0].num(), m1 = t[1].num(), minf = t[2].num();

    const double tol = 1e-8;
    std::vector<cplx> num = trimmed(f.num, tol);
    std::vector<cplx> den = trimmed(f.den, tol);
    const std::int64_t d =
        static_cast<std::int64_t>(std::max(num.size(), den.size())) - 1;
    if (d < 1) return false;

    // Critical orders are read off the derivative numerator
    // W = num' den - num den': ord_z0(W) = local degree - 1 at every finite
    // point of a reduced map, and the deficit of deg W from 2d-2 is the
    // branching at infinity.
    std::vector<cplx> w_poly;
    {
        auto a = multiply(derivative(num), den);
        auto b = multiply(num, derivative(den));
        a.resize(std::max(a.size(), b.size()), cplx(0.0));
        for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
        w_poly = trimmed(std::move(a), tol);
    }
    double scale = 0.0;
    for (const cplx& c : w_poly) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return false;

    auto order_at_zero = [&](const std::vector<cplx>& p) {
        std::size_t k = 0;
        while (k < p.size() && std::abs(p[k]) <= tol * scale) ++k;
        return static_cast<std::int64_t>(k);
    };

    std::int64_t e0 = order_at_zero(w_poly) + 1;

    // Taylor coefficients of W at 1 by repeated synthetic division.
    std::vector<cplx> at_one;
    {
        std::vector<cplx> p = w_poly;
        while (!p.empty()) {
            cplx carry(0.0);
            std::vector<cplx> q(p.size() > 1 ? p.size() - 1 : 0);
            for (std::size_t i = p.size(); i-- > 1;) {
                carry = p[i] + carry;
                q[i - 1] = carry;
            }
            at_one.push_back(p[0] + carry);
            p = std::move(q);
        }
    }
    std::size_t k1 = 0;
    while (k1 < at_one.size() && std::abs(at_one[k1]) <= tol * scale) ++k1;
    std::int64_t e1 = static_cast<std::int64_t>(k1) + 1;

    std::int64_t deg_w = static_cast<std::int64_t>(w_poly.size()) - 1;
    std::int64_t einf = 2 * d - 1 - deg_w;

    // All critical mass must sit at the three marked points.
    bool no_extra = deg_w == (e0 - 1) + (e1 - 1);
    return no_extra && e0 == m0 && e1 == m1 && einf == minf;
}

std::int64_t catalan_count(std::int64_t d) {
    if (d < 1) throw std::invalid_argument("catalan_count: d must be at least 1");
    std::int64_t n = 2 * d - 2, k = d - 1;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        __int128 v = static_cast<__int128>(r) * (n - k + i);
        r = static_cast<std::int64_t>(v / i);
    }
    return r / d;
}

} // namespace tricone
