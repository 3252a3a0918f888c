#pragma once

#include <cmath>
#include <complex>

#include "algebra.hpp"
#include "errors.hpp"
#include "models.hpp"

namespace mcshane {

namespace detail {
inline cplx checked_quotient(cplx num, cplx den, double scale) {
    if (std::abs(den) <= 1e-14 * scale) {
        const bool zero_num = std::abs(num) <= 1e-14 * scale;
        throw DegenerateError("cross-ratio: denominator vanishes", zero_num ? "indeterminate" : "inf");
    }
    return num / den;
}
}  // namespace detail

/// [a,b,c,d] = <a,b><c,d> / (<a,d><c,b>) on the boundary of complex hyperbolic space.
inline cplx cx_crossratio(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    const double sc = norm(a) * norm(b) * norm(c) * norm(d);
    return detail::checked_quotient(herm(a, b) * herm(c, d), herm(a, d) * herm(c, b), sc);
}

inline cplx cx_crossratio(const HeisenbergPoint& a, const HeisenbergPoint& b, const HeisenbergPoint& c,
                          const HeisenbergPoint& d) {
    return cx_crossratio(lift(a), lift(b), lift(c), lift(d));
}

/// (a-b)(c-d) / ((a-d)(c-b)) on the Riemann sphere, in homogeneous coordinates.
inline cplx sl2_crossratio(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const double sc = norm(a) * norm(b) * norm(c) * norm(d);
    return detail::checked_quotient(det2(a, b) * det2(c, d), det2(a, d) * det2(c, b), sc);
}

/// Cross-ratio through the point type: dispatches on Vec2 / Vec3.
inline cplx crossratio(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    return sl2_crossratio(a, b, c, d);
}
inline cplx crossratio(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    return cx_crossratio(a, b, c, d);
}

/// Scale-free closeness of two boundary points.
inline double separation(const Vec2& p, const Vec2& q) { return chordal(p, q); }
inline double separation(const Vec3& p, const Vec3& q) {
    return std::sqrt(std::abs(herm(p, q))) / std::sqrt(norm(p) * norm(q));
}

/// Distance of the imaginary part of z to 2*pi*Z, combined with the real part.
inline double mod2pi_abs(cplx z) {
    const double im = std::remainder(z.imag(), 2.0 * pi);
    return std::hypot(z.real(), im);
}

// ---------------------------------------------------------------------------
// Period log[g-, g y, g+, y].

inline cplx period(const Mat2& g, const Vec2& y) {
    const FixedPoints2 f = sl2_fixed_points(g);
    if (separation(y, f.attracting) < 1e-8 || separation(y, f.repelling) < 1e-8)
        throw IllConditionedError("period: reference point is a fixed point");
    return std::log(sl2_crossratio(f.repelling, mobius(g, y), f.attracting, y));
}

inline cplx period(const Mat3& g, const Vec3& y) {
    const EigenData e = su21_eigendata(g);
    if (separation(y, e.attracting) < 1e-8 || separation(y, e.repelling) < 1e-8)
        throw IllConditionedError("period: reference point is a fixed point");
    return std::log(cx_crossratio(e.repelling, g * y, e.attracting, y));
}

// ---------------------------------------------------------------------------
// Cross-ratio coordinates of a boundary quadruple.

struct PPInvariants {
    cplx X1, X2, X3;
};

inline PPInvariants pp_invariants(const Vec3& z1, const Vec3& z2, const Vec3& z3, const Vec3& z4) {
    return {cx_crossratio(z4, z2, z3, z1), cx_crossratio(z4, z3, z2, z1), cx_crossratio(z4, z3, z1, z2)};
}

struct PPResiduals {
    double first_printed;    ///< | |X2|^2 - |X1||X3| |
    double first_corrected;  ///< | |X2| - |X1||X3| |
    double second;           ///< | 2|X1|^2 Re X3 - (|X1|^2 + |X2|^2 + 1 - 2 Re(X1 + X2)) |
};

/// Residuals relative to the size of the terms involved.
inline PPResiduals pp_residuals(const PPInvariants& p) {
    const double a1 = std::abs(p.X1), a2 = std::abs(p.X2), a3 = std::abs(p.X3);
    PPResiduals r;
    r.first_printed = std::abs(a2 * a2 - a1 * a3) / std::max(1.0, std::max(a2 * a2, a1 * a3));
    r.first_corrected = std::abs(a2 - a1 * a3) / std::max(1.0, std::max(a2, a1 * a3));
    const double lhs = 2.0 * a1 * a1 * p.X3.real();
    const double rhs = a1 * a1 + a2 * a2 + 1.0 - 2.0 * (p.X1 + p.X2).real();
    r.second = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), a1 * a1 + a2 * a2});
    return r;
}

// ---------------------------------------------------------------------------
// Hölder estimate for [x, y, z, t] in y.

struct HolderRecord {
    double lhs = 0.0;        ///< |[x,y1,z,t] - [x,y2,z,t]|
    double rhs = 0.0;        ///< C_sqrt * rho
    double rho = 0.0;        ///< Cygan distance of y1, y2 in the normalized frame
    double K = 0.0;          ///< |<x,t>| in the normalized frame
    double a = 0.0, b = 0.0; ///< separation band actually used
    double r1 = 0.0, r2 = 0.0;
    double C_sqrt = 0.0;       ///< sqrt((sqrt8 b + 2b + 4b^2)/K)
    double C_published = 0.0;  ///< (sqrt8 b + 2b + 4b^2)/K
    double C_corrected = 0.0;  ///< sqrt((sqrt8 + 6) b)/K, from the inequality chain
    Mat3 move;                 ///< SU(2,1) element sending x -> 0 and z -> infinity
    bool holds() const { return lhs <= rhs * (1.0 + 1e-12) + 1e-15; }
};

/// The normalizing move sends x to the origin and z to infinity and is then
/// dilated so that t has unit Heisenberg norm (K = 1). The band is
/// a = min |<x,y_i>|, b = max(1, max |<x,y_i>|) in that frame.
inline HolderRecord holder_check(const Vec3& x, const Vec3& z, const Vec3& t, const Vec3& y1, const Vec3& y2) {
    const Mat3 F = su21_frame(z, x);
    Mat3 T = su21_inverse(F);
    auto normalized = [&](const Mat3& M, const Vec3& p) {
        const Vec3 w = M * p;
        if (std::abs(w[2]) <= 1e-12 * max_modulus(w))
            throw DomainError("holder_check: point coincides with z");
        return scale(w, 1.0 / w[2]);
    };
    const Vec3 wt0 = normalized(T, t);
    const double k0 = std::abs(wt0[0]);
    if (k0 <= 1e-12) throw DomainError("holder_check: t coincides with x");
    const double delta = 1.0 / std::sqrt(k0);
    T = Mat3::diag({delta, 1.0, 1.0 / delta}) * T;

    HolderRecord r;
    r.move = T;
    const Vec3 wt = normalized(T, t), w1 = normalized(T, y1), w2 = normalized(T, y2);
    r.K = std::abs(wt[0]);
    const double m1 = std::abs(w1[0]), m2 = std::abs(w2[0]);
    r.a = std::min(m1, m2);
    r.b = std::max({1.0, m1, m2});
    if (r.a < 1e-6 || r.b > 1e6) throw DomainError("holder_check: y outside the separation band");
    r.r1 = std::abs(w1[1]) / std::sqrt(2.0);
    r.r2 = std::abs(w2[1]) / std::sqrt(2.0);
    r.rho = std::sqrt(std::abs(herm(w1, w2)));
    r.lhs = std::abs(cx_crossratio(x, y1, z, t) - cx_crossratio(x, y2, z, t));
    const double s = std::sqrt(8.0) * r.b + 2.0 * r.b + 4.0 * r.b * r.b;
    r.C_published = s / r.K;
    r.C_sqrt = std::sqrt(s / r.K);
    r.C_corrected = std::sqrt((std::sqrt(8.0) + 6.0) * r.b) / r.K;
    r.rhs = r.C_sqrt * r.rho;
    return r;
}

}  // namespace mcshane
