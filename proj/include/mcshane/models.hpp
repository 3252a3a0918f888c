#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"

namespace mcshane {

/// Point of the Heisenberg group C x R, or the point at infinity.
struct HeisenbergPoint {
    cplx zeta{};
    double v = 0.0;
    bool infinite = false;

    static HeisenbergPoint infinity() { return {0.0, 0.0, true}; }
};

/// Horospherical coordinates (zeta, v, u) of the Siegel domain, u >= 0.
struct SiegelPoint {
    cplx zeta{};
    double v = 0.0;
    double u = 0.0;
};

/// Point of the real or complex unit ball, any dimension.
struct BallPoint {
    std::vector<cplx> x;
};

inline HeisenbergPoint heisenberg_mul(const HeisenbergPoint& p, const HeisenbergPoint& q) {
    if (p.infinite || q.infinite) throw DomainError("heisenberg_mul: point at infinity");
    return {p.zeta + q.zeta, p.v + q.v + 2.0 * (p.zeta * std::conj(q.zeta)).imag(), false};
}

inline HeisenbergPoint heisenberg_inv(const HeisenbergPoint& p) {
    if (p.infinite) throw DomainError("heisenberg_inv: point at infinity");
    return {-p.zeta, -p.v, false};
}

inline double heisenberg_norm(const HeisenbergPoint& q) {
    if (q.infinite) throw DomainError("heisenberg_norm: point at infinity");
    const double r2 = std::norm(q.zeta);
    return std::pow(r2 * r2 + q.v * q.v, 0.25);
}

inline double cygan_distance(const HeisenbergPoint& p, const HeisenbergPoint& q) {
    return heisenberg_norm(heisenberg_mul(heisenberg_inv(p), q));
}

/// psi(zeta, v, u) = ((-|zeta|^2 - u + i v)/2, zeta, 1).
inline Vec3 psi_lift(const SiegelPoint& p) {
    if (p.u < 0.0) throw DomainError("psi_lift: negative height");
    return {cplx(-std::norm(p.zeta) - p.u, p.v) / 2.0, p.zeta, 1.0};
}

inline Vec3 psi_infinity() { return {1.0, 0.0, 0.0}; }

inline Vec3 lift(const HeisenbergPoint& p) {
    return p.infinite ? psi_infinity() : psi_lift({p.zeta, p.v, 0.0});
}

/// Inverse of psi on negative and null vectors; null vectors with vanishing
/// last coordinate give the point at infinity.
inline SiegelPoint siegel_coords(const Vec3& z) {
    if (std::abs(z[2]) <= 1e-14 * max_modulus(z)) throw DomainError("siegel_coords: point at infinity");
    const cplx z1 = z[0] / z[2];
    const cplx zeta = z[1] / z[2];
    const double u = std::max(0.0, -2.0 * z1.real() - std::norm(zeta));
    return {zeta, 2.0 * z1.imag(), u};
}

inline HeisenbergPoint heisenberg_coords(const Vec3& z) {
    if (std::abs(z[2]) <= 1e-14 * max_modulus(z)) return HeisenbergPoint::infinity();
    const SiegelPoint s = siegel_coords(z);
    return {s.zeta, s.v, false};
}

inline double bergman_distance(const Vec3& z, const Vec3& w) {
    const double zz = herm(z, z).real(), ww = herm(w, w).real();
    if (zz >= 0.0 || ww >= 0.0) throw DomainError("bergman_distance: boundary point is at infinite distance");
    const double q = std::norm(herm(z, w)) / (zz * ww);
    return 2.0 * std::asinh(std::sqrt(std::max(0.0, q - 1.0)));
}

inline double bergman_distance(const SiegelPoint& p, const SiegelPoint& q) {
    if (p.u <= 0.0 || q.u <= 0.0) throw DomainError("bergman_distance: boundary point is at infinite distance");
    return bergman_distance(psi_lift(p), psi_lift(q));
}

// ---------------------------------------------------------------------------
// Unit ball models.

inline cplx ball_inner(const BallPoint& x, const BallPoint& y) {
    if (x.x.size() != y.x.size()) throw DomainError("ball: dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.x.size(); ++i) s += x.x[i] * std::conj(y.x[i]);
    return s;
}

inline double ball_distance(const BallPoint& x, const BallPoint& y) {
    const double nx = ball_inner(x, x).real(), ny = ball_inner(y, y).real();
    if (nx >= 1.0 || ny >= 1.0) throw DomainError("ball_distance: boundary point is at infinite distance");
    const double c = std::abs(1.0 - ball_inner(x, y)) / std::sqrt((1.0 - nx) * (1.0 - ny));
    return std::acosh(std::max(1.0, c));
}

inline double ball_pairing(const BallPoint& x, const BallPoint& y) { return std::abs(1.0 - ball_inner(x, y)); }

namespace detail {
inline double checked_ratio(double num, double den, double scale) {
    if (den <= 1e-14 * scale)
        throw DegenerateError("real cross-ratio: coincident points", num <= 1e-14 * scale ? "indeterminate" : "inf");
    return num / den;
}
}  // namespace detail

/// [x, z, y, w] = <<z,x>><<w,y>> / (<<w,x>><<z,y>>) with <<a,b>> = |1 - <a,b>|.
inline double real_crossratio_ball(const BallPoint& x, const BallPoint& z, const BallPoint& y, const BallPoint& w) {
    const double num = ball_pairing(z, x) * ball_pairing(w, y);
    const double den = ball_pairing(w, x) * ball_pairing(z, y);
    return detail::checked_ratio(num, den, 16.0);
}

/// Heisenberg-model real cross-ratio; factors containing infinity are dropped.
inline double real_crossratio_heisenberg(const HeisenbergPoint& g1, const HeisenbergPoint& g3,
                                         const HeisenbergPoint& g2, const HeisenbergPoint& g4) {
    auto f = [](const HeisenbergPoint& a, const HeisenbergPoint& b) {
        if (a.infinite || b.infinite) return 1.0;
        const double r = cygan_distance(b, a);
        return r * r;
    };
    const double num = f(g1, g3) * f(g2, g4);
    const double den = f(g1, g4) * f(g2, g3);
    double sc = 1.0;
    for (const auto* p : {&g1, &g2, &g3, &g4})
        if (!p->infinite) sc = std::max(sc, std::pow(heisenberg_norm(*p), 4.0));
    return detail::checked_ratio(num, den, sc);
}

/// Euclidean real cross-ratio |X-Y||Z-W| / (|X-W||Z-Y|) on the Riemann sphere.
inline double real_crossratio_planar(const Vec2& x, const Vec2& y, const Vec2& z, const Vec2& w) {
    const double num = chordal(x, y) * chordal(z, w);
    const double den = chordal(x, w) * chordal(z, y);
    return detail::checked_ratio(num, den, 1.0);
}

// ---------------------------------------------------------------------------
// Cayley transform between the complex 2-ball and the Siegel domain.
// Homogeneous ball vectors b = (b1, b2, 1) with form |b1|^2 + |b2|^2 - |b3|^2
// map to z = ((b2 + b3)/sqrt2, b1, (b2 - b3)/sqrt2); the ball point (0, 1)
// goes to q_infinity.

inline Mat3 cayley_matrix() {
    const double s = 1.0 / std::sqrt(2.0);
    return {0, s, s, 1, 0, 0, 0, s, -s};
}

inline Vec3 ball_to_siegel(const BallPoint& b) {
    if (b.x.size() != 2) throw DomainError("ball_to_siegel: complex 2-ball expected");
    return cayley_matrix() * Vec3{b.x[0], b.x[1], 1.0};
}

inline BallPoint siegel_to_ball(const Vec3& z) {
    const double s = 1.0 / std::sqrt(2.0);
    const cplx b1 = z[1], b2 = (z[0] + z[2]) * s, b3 = (z[0] - z[2]) * s;
    if (std::abs(b3) == 0.0) throw DomainError("siegel_to_ball: vector outside the closed ball");
    return {{b1 / b3, b2 / b3}};
}

}  // namespace mcshane
