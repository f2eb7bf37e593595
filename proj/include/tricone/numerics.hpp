#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace tricone {

using cplx = std::complex<double>;

// Dense 2x2 complex matrix, row major. Everything in this project that is a
// matrix is 2x2: solution frames, monodromy generators, Hermitian forms.
struct Mat2 {
    cplx a{0.0}, b{0.0}, c{0.0}, d{0.0};  // [[a, b], [c, d]]

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    cplx det() const { return a * d - b * c; }
    cplx trace() const { return a + d; }

    Mat2 adjoint() const {  // conjugate transpose
        return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
    }

    Mat2 inverse() const {
        cplx dt = det();
        if (std::abs(dt) == 0.0) throw std::domain_error("Mat2: singular");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }

    double frobenius() const {
        return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
    }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    friend Mat2 operator*(cplx s, const Mat2& x) {
        return {s * x.a, s * x.b, s * x.c, s * x.d};
    }
    friend Mat2 operator*(const Mat2& x, cplx s) { return s * x; }
};

inline double dist(const Mat2& x, const Mat2& y) { return (x - y).frobenius(); }

// Scales to determinant 1. The sign of the square root is immaterial for
// every use here (traces and Hermitian invariance are +-insensitive).
Mat2 unit_det(const Mat2& m);

// Eigenvalues of a Hermitian 2x2 matrix (ascending) and a unitary
// diagonalizer U with M = U diag(l1, l2) U^*.
struct HermEigs {
    double l1 = 0.0, l2 = 0.0;
    Mat2 u = Mat2::identity();
};
HermEigs hermitian_eigs(const Mat2& h);

// Cyclic Jacobi for small real symmetric matrices. Returns eigenvalues
// ascending and the matching orthonormal eigenvectors as columns.
struct SymEigs {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;  // vectors[k] = k-th eigenvector
};
SymEigs jacobi_eigs(std::vector<std::vector<double>> a);

// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration on
// the Legendre recurrence; deterministic for fixed n.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

// Partial-pivot solve of a small dense complex system in place.
std::vector<cplx> solve_dense(std::vector<std::vector<cplx>> a, std::vector<cplx> rhs);

// Winding number of a closed polyline around a point (sum of turn angles / 2pi,
// rounded). The polyline is implicitly closed.
int winding_number(const std::vector<cplx>& path, cplx around);

// C^infinity transition: 0 for x <= 0, 1 for x >= 1.
double smoothstep_inf(double x);

// Deterministic compensated accumulation (Neumaier).
double stable_sum(const std::vector<double>& terms);

} // namespace tricone
