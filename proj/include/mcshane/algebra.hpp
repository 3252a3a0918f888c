#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <utility>

#include "errors.hpp"

namespace mcshane {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline const cplx I{0.0, 1.0};

template <std::size_t N>
using Vec = std::array<cplx, N>;
using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

template <std::size_t N>
struct Mat {
    std::array<cplx, N * N> a{};

    Mat() = default;
    Mat(std::initializer_list<cplx> v) { std::copy(v.begin(), v.end(), a.begin()); }

    static Mat identity() {
        Mat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }
    static Mat diag(const Vec<N>& d) {
        Mat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    cplx& operator()(std::size_t i, std::size_t j) { return a[i * N + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * N + j]; }

    Vec<N> col(std::size_t j) const {
        Vec<N> v;
        for (std::size_t i = 0; i < N; ++i) v[i] = (*this)(i, j);
        return v;
    }
    Vec<N> row(std::size_t i) const {
        Vec<N> v;
        for (std::size_t j = 0; j < N; ++j) v[j] = (*this)(i, j);
        return v;
    }
    void set_col(std::size_t j, const Vec<N>& v) {
        for (std::size_t i = 0; i < N; ++i) (*this)(i, j) = v[i];
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    cplx det() const {
        const Mat& m = *this;
        if constexpr (N == 2) {
            return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        } else {
            static_assert(N == 3, "det implemented for 2x2 and 3x3");
            return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        }
    }

    Mat inverse() const {
        const Mat& m = *this;
        const cplx d = det();
        if (std::abs(d) == 0.0) throw DomainError("singular matrix");
        Mat r;
        if constexpr (N == 2) {
            r(0, 0) = m(1, 1) / d;
            r(0, 1) = -m(0, 1) / d;
            r(1, 0) = -m(1, 0) / d;
            r(1, 1) = m(0, 0) / d;
        } else {
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) {
                    const std::size_t i1 = (j + 1) % 3, i2 = (j + 2) % 3;
                    const std::size_t j1 = (i + 1) % 3, j2 = (i + 2) % 3;
                    r(i, j) = (m(i1, j1) * m(i2, j2) - m(i1, j2) * m(i2, j1)) / d;
                }
        }
        return r;
    }

    Mat adjoint() const {
        Mat r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        Mat r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const cplx xik = x(i, k);
                for (std::size_t j = 0; j < N; ++j) r(i, j) += xik * y(k, j);
            }
        return r;
    }
    friend Vec<N> operator*(const Mat& x, const Vec<N>& v) {
        Vec<N> r{};
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r[i] += x(i, j) * v[j];
        return r;
    }
    friend Mat operator+(Mat x, const Mat& y) {
        for (std::size_t i = 0; i < N * N; ++i) x.a[i] += y.a[i];
        return x;
    }
    friend Mat operator-(Mat x, const Mat& y) {
        for (std::size_t i = 0; i < N * N; ++i) x.a[i] -= y.a[i];
        return x;
    }
    friend Mat operator*(cplx s, Mat x) {
        for (auto& e : x.a) e *= s;
        return x;
    }
    Mat operator-() const { return cplx(-1.0) * *this; }
};

using Mat2 = Mat<2>;
using Mat3 = Mat<3>;

template <std::size_t N>
double max_abs(const Mat<N>& m) {
    double r = 0.0;
    for (const auto& e : m.a) r = std::max(r, std::abs(e));
    return r;
}

template <std::size_t N>
double max_abs_diff(const Mat<N>& x, const Mat<N>& y) {
    return max_abs(x - y);
}

template <std::size_t N>
double norm(const Vec<N>& v) {
    double s = 0.0;
    for (const auto& e : v) s += std::norm(e);
    return std::sqrt(s);
}

template <std::size_t N>
double max_modulus(const Vec<N>& v) {
    double r = 0.0;
    for (const auto& e : v) r = std::max(r, std::abs(e));
    return r;
}

template <std::size_t N>
Vec<N> scale(const Vec<N>& v, cplx s) {
    Vec<N> r = v;
    for (auto& e : r) e *= s;
    return r;
}

template <std::size_t N>
Vec<N> add(const Vec<N>& x, const Vec<N>& y) {
    Vec<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = x[i] + y[i];
    return r;
}

template <std::size_t N>
Vec<N> sub(const Vec<N>& x, const Vec<N>& y) {
    Vec<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = x[i] - y[i];
    return r;
}

/// Scale so that the entry of largest modulus equals 1.
template <std::size_t N>
Vec<N> normalize_projective(const Vec<N>& v) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < N; ++i)
        if (std::abs(v[i]) > std::abs(v[k])) k = i;
    if (std::abs(v[k]) == 0.0) throw DomainError("zero vector has no projective class");
    return scale(v, 1.0 / v[k]);
}

/// Projective equality by max-modulus pivot normalization.
template <std::size_t N>
bool projectively_equal(const Vec<N>& x, const Vec<N>& y, double tol = 1e-9) {
    const Vec<N> u = normalize_projective(x);
    std::size_t k = 0;
    for (std::size_t i = 1; i < N; ++i)
        if (std::abs(x[i]) > std::abs(x[k])) k = i;
    if (std::abs(y[k]) == 0.0) return false;
    const Vec<N> w = scale(y, 1.0 / y[k]);
    return max_modulus(sub(u, w)) <= tol;
}

// ---------------------------------------------------------------------------
// Hermitian form of signature (2,1): <z,w> = w* J z.

inline const Mat3 J{0, 0, 1, 0, 1, 0, 1, 0, 0};

inline cplx herm(const Vec3& z, const Vec3& w) {
    if (max_modulus(z) == 0.0 || max_modulus(w) == 0.0)
        throw DomainError("herm: zero vector");
    return z[0] * std::conj(w[2]) + z[1] * std::conj(w[1]) + z[2] * std::conj(w[0]);
}

inline bool is_null(const Vec3& z, double tol = 1e-9) {
    const double m = max_modulus(z);
    return std::abs(herm(z, z)) <= tol * m * m;
}

inline Mat3 su21_inverse(const Mat3& m) { return J * m.adjoint() * J; }

/// Group inverses: the adjugate for SL(2), J M* J for SU(2,1). Both avoid the
/// determinant, which cancels catastrophically once entries are large.
inline Mat2 group_inverse(const Mat2& m) { return {m(1, 1), -m(0, 1), -m(1, 0), m(0, 0)}; }
inline Mat3 group_inverse(const Mat3& m) { return su21_inverse(m); }

inline double su21_form_residual(const Mat3& m) { return max_abs_diff(m.adjoint() * J * m, J); }

/// E(lambda) = diag(e^l, e^{conj(l) - l}, e^{-conj(l)}).
inline Mat3 E(cplx l) {
    return Mat3::diag({std::exp(l), std::exp(std::conj(l) - l), std::exp(-std::conj(l))});
}

// ---------------------------------------------------------------------------
// Isometry wrapper and classification.

enum class Group { SL2R, SL2C, SU21 };
enum class IsoClass { loxodromic, parabolic, elliptic, identity };

inline const char* to_string(IsoClass c) {
    switch (c) {
        case IsoClass::loxodromic: return "loxodromic";
        case IsoClass::parabolic: return "parabolic";
        case IsoClass::elliptic: return "elliptic";
        case IsoClass::identity: return "identity";
    }
    return "?";
}

/// Roots of x^3 + a x^2 + b x + c, by Cardano with a Newton polish.
inline std::array<cplx, 3> cubic_roots(cplx a, cplx b, cplx c) {
    const cplx p = b - a * a / 3.0;
    const cplx q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    cplx s = -q / 2.0 + disc;
    if (std::abs(-q / 2.0 - disc) > std::abs(s)) s = -q / 2.0 - disc;
    const cplx u = std::abs(s) == 0.0 ? cplx(0.0) : std::pow(s, 1.0 / 3.0);
    const cplx w{-0.5, std::sqrt(3.0) / 2.0};
    std::array<cplx, 3> r;
    cplx wk = 1.0;
    for (int k = 0; k < 3; ++k) {
        const cplx uk = u * wk;
        const cplx vk = std::abs(uk) == 0.0 ? cplx(0.0) : -p / (3.0 * uk);
        r[k] = uk + vk - a / 3.0;
        wk *= w;
    }
    auto f = [&](cplx x) { return ((x + a) * x + b) * x + c; };
    auto df = [&](cplx x) { return (3.0 * x + 2.0 * a) * x + b; };
    for (auto& x : r) {
        for (int it = 0; it < 2; ++it) {
            const cplx d = df(x);
            if (std::abs(d) == 0.0) break;
            const cplx y = x - f(x) / d;
            if (std::abs(f(y)) < std::abs(f(x))) x = y; else break;
        }
    }
    return r;
}

inline std::array<cplx, 3> eigenvalues(const Mat3& m) {
    const cplx c2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) -
                    m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    return cubic_roots(-m.trace(), c2, -m.det());
}

/// A kernel vector of m - e I, from the best-conditioned cross product of two rows.
inline Vec3 eigenvector(const Mat3& m, cplx e) {
    const Mat3 a = m - e * Mat3::identity();
    auto cross = [](const Vec3& x, const Vec3& y) {
        return Vec3{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
    };
    Vec3 best{};
    double bn = -1.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const Vec3 v = cross(a.row(i), a.row(j));
            const double n = norm(v);
            if (n > bn) { bn = n; best = v; }
        }
    if (bn <= 0.0) throw DegenerateError("eigenvector: eigenspace is not one-dimensional", "indeterminate");
    return scale(best, 1.0 / bn);
}

inline Vec2 eigenvector(const Mat2& m, cplx e) {
    const Vec2 v1{m(0, 1), e - m(0, 0)};
    const Vec2 v2{e - m(1, 1), m(1, 0)};
    const Vec2 v = norm(v1) >= norm(v2) ? v1 : v2;
    const double n = norm(v);
    if (n == 0.0) throw DegenerateError("eigenvector: scalar matrix", "indeterminate");
    return scale(v, 1.0 / n);
}

inline IsoClass classify_sl2(const Mat2& m) {
    const cplx t = m.trace();
    if (std::abs(t * t - 4.0) < 1e-10) {
        const double s = t.real() > 0 ? 1.0 : -1.0;
        return max_abs_diff(m, cplx(s) * Mat2::identity()) < 1e-10 ? IsoClass::identity
                                                                   : IsoClass::parabolic;
    }
    if (std::abs(t.imag()) <= 1e-12 && std::abs(t.real()) < 2.0) return IsoClass::elliptic;
    return IsoClass::loxodromic;
}

inline IsoClass classify_su21(const Mat3& m) {
    const auto ev = eigenvalues(m);
    double big = 0.0;
    for (const auto& e : ev) big = std::max(big, std::abs(e));
    if (big > 1.0 + 1e-8) return IsoClass::loxodromic;
    // All eigenvalues on the unit circle: diagonalizable means elliptic or identity.
    Mat3 prod = Mat3::identity();
    std::array<cplx, 3> distinct{};
    int nd = 0;
    for (const auto& e : ev) {
        bool seen = false;
        for (int k = 0; k < nd; ++k) seen = seen || std::abs(distinct[k] - e) < 1e-6;
        if (!seen) distinct[nd++] = e;
    }
    for (int k = 0; k < nd; ++k) prod = prod * (m - distinct[k] * Mat3::identity());
    if (max_abs(prod) > 1e-7) return IsoClass::parabolic;
    return nd == 1 ? IsoClass::identity : IsoClass::elliptic;
}

template <std::size_t N>
struct Isometry {
    Mat<N> m;
    Group group;

    IsoClass classify() const {
        if constexpr (N == 2) return classify_sl2(m);
        else return classify_su21(m);
    }

    /// Throws DomainError when the matrix violates the invariants of its group.
    void validate() const {
        if (std::abs(m.det() - 1.0) > 1e-12 * std::max(1.0, max_abs(m) * max_abs(m)))
            throw DomainError("isometry: determinant differs from 1");
        if (group == Group::SL2R)
            for (const auto& e : m.a)
                if (std::abs(e.imag()) > 1e-12) throw DomainError("isometry: SL2R entry is not real");
        if constexpr (N == 3)
            if (su21_form_residual(m) > 1e-10 * std::max(1.0, max_abs(m) * max_abs(m)))
                throw DomainError("isometry: matrix does not preserve the Hermitian form");
    }
};

// ---------------------------------------------------------------------------
// SU(2,1) eigen-data.

struct EigenData {
    cplx lambda;      ///< in S = {Re > 0, Im in (-pi, pi]}
    Vec3 attracting;  ///< null eigenvector for e^lambda
    Vec3 repelling;   ///< null eigenvector for e^{-conj(lambda)}
    Vec3 neutral;     ///< positive eigenvector for e^{conj(lambda) - lambda}
    bool ill_conditioned = false;
};

inline cplx canonical_strip(cplx l) {
    double im = std::remainder(l.imag(), 2.0 * pi);
    if (im <= -pi + 1e-15) im += 2.0 * pi;
    return {l.real(), im};
}

inline EigenData su21_eigendata(const Mat3& m) {
    const auto ev = eigenvalues(m);
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(ev[i]) > std::abs(ev[k])) k = i;
    const double mod = std::abs(ev[k]);
    if (mod <= 1.0 + 1e-8) throw ClassificationError("su21_eigendata: isometry is not loxodromic");
    EigenData d;
    d.lambda = canonical_strip(std::log(ev[k]));
    d.ill_conditioned = mod - 1.0 < 1e-6;
    const cplx el = std::exp(d.lambda);
    const cplx en = std::exp(std::conj(d.lambda) - d.lambda);
    const cplx er = std::exp(-std::conj(d.lambda));
    for (cplx want : {en, er}) {
        double best = 1e300;
        for (const auto& e : ev) best = std::min(best, std::abs(e - want));
        if (best > 1e-9 * std::max(1.0, std::abs(el)))
            throw ClassificationError("su21_eigendata: spectrum is not of the form E(lambda)");
    }
    d.attracting = eigenvector(m, el);
    d.repelling = eigenvector(m, er);
    d.neutral = eigenvector(m, en);
    return d;
}

/// Matrix Q in SU(2,1) whose first column spans a and last column spans r,
/// normalized by <r,a> = 1 and <n,n> = 1 for the middle column n.
inline Mat3 su21_frame(const Vec3& a, const Vec3& r) {
    const cplx ra = herm(r, a);
    if (std::abs(ra) < 1e-300) throw DegenerateError("su21_frame: points coincide", "0");
    const Vec3 rr = scale(r, 1.0 / ra);
    // n with <n,a> = <n,rr> = 0: rows conj(a)^T J and conj(rr)^T J.
    const Vec3 u{std::conj(a[2]), std::conj(a[1]), std::conj(a[0])};
    const Vec3 w{std::conj(rr[2]), std::conj(rr[1]), std::conj(rr[0])};
    Vec3 n{u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
    const double nn = herm(n, n).real();
    if (nn <= 0.0) throw DegenerateError("su21_frame: polar vector is not positive", "indeterminate");
    n = scale(n, 1.0 / std::sqrt(nn));
    Mat3 q;
    q.set_col(0, a);
    q.set_col(1, n);
    q.set_col(2, rr);
    const cplx d = q.det();
    q.set_col(1, scale(n, 1.0 / d));
    return q;
}

// ---------------------------------------------------------------------------
// SL(2,C): fixed points and complex length. Points of the Riemann sphere are
// homogeneous 2-vectors; (1,0) is infinity.

struct FixedPoints2 {
    Vec2 attracting;
    Vec2 repelling;
    cplx multiplier_root;  ///< eigenvalue of modulus > 1 belonging to `attracting`
};

/// Eigenvalue of modulus >= 1, computed without cancellation.
inline cplx sl2_big_eigenvalue(cplx trace) {
    const cplx r = std::sqrt(trace * trace / 4.0 - 1.0);
    const cplx k1 = trace / 2.0 + r, k2 = trace / 2.0 - r;
    return std::abs(k1) >= std::abs(k2) ? k1 : k2;
}

inline FixedPoints2 sl2_fixed_points(const Mat2& m) {
    const cplx t = m.trace();
    if (std::abs(t * t - 4.0) < 1e-10)
        throw DegenerateError("sl2_fixed_points: parabolic or identity has a single fixed point", "parabolic");
    const cplx k = sl2_big_eigenvalue(t);
    if (std::abs(k) <= 1.0 + 1e-12)
        throw ClassificationError("sl2_fixed_points: elliptic element has no attracting point");
    return {eigenvector(m, k), eigenvector(m, 1.0 / k), k};
}

/// Fixed point of a parabolic element.
inline Vec2 sl2_parabolic_fixed_point(const Mat2& m) {
    const cplx t = m.trace();
    if (std::abs(t * t - 4.0) > 1e-8) throw ClassificationError("not parabolic");
    return eigenvector(m, t / 2.0);
}

inline cplx sl2_complex_length(const Mat2& m) {
    const cplx t = m.trace();
    if (std::abs(t.imag()) <= 1e-12 && std::abs(t.real()) <= 2.0 + 1e-12)
        throw ClassificationError("sl2_complex_length: not loxodromic");
    const cplx k = sl2_big_eigenvalue(t);
    if (std::abs(k) <= 1.0 + 1e-12) throw ClassificationError("sl2_complex_length: not loxodromic");
    return canonical_strip(std::log(k * k));
}

inline Vec2 infinity2() { return {1.0, 0.0}; }
inline Vec2 point2(cplx z) { return {z, 1.0}; }
inline bool is_infinite(const Vec2& p, double tol = 1e-14) {
    return std::abs(p[1]) <= tol * std::abs(p[0]);
}
/// Chart value p0/p1; callers check is_infinite first.
inline cplx chart(const Vec2& p) { return p[0] / p[1]; }

inline Vec2 mobius(const Mat2& m, const Vec2& p) { return m * p; }

inline cplx det2(const Vec2& p, const Vec2& q) { return p[0] * q[1] - p[1] * q[0]; }

/// Chordal distance on the Riemann sphere between projective points.
inline double chordal(const Vec2& p, const Vec2& q) {
    return std::abs(det2(p, q)) / (norm(p) * norm(q));
}

}  // namespace mcshane
