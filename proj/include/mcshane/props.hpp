#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "crossratio.hpp"
#include "errors.hpp"
#include "models.hpp"
#include "pants.hpp"

namespace mcshane {

// ---------------------------------------------------------------------------
// Random sampling.

using Rng = std::mt19937_64;

inline double gauss(Rng& g) { return std::normal_distribution<double>(0.0, 1.0)(g); }
inline double uniform(Rng& g, double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }
inline cplx gauss_c(Rng& g) {
    const double re = gauss(g);
    return {re, gauss(g)};
}

inline Mat2 random_sl2c(Rng& g) {
    for (;;) {
        Mat2 m{gauss_c(g), gauss_c(g), gauss_c(g), gauss_c(g)};
        const cplx d = m.det();
        if (std::abs(d) < 0.05) continue;
        return (1.0 / std::sqrt(d)) * m;
    }
}

inline HeisenbergPoint random_heisenberg(Rng& g) {
    const cplx z = gauss_c(g);
    return {z, gauss(g), false};
}

/// Left translation by (a, s) on the boundary: psi(zeta, v) -> psi((a, s) * (zeta, v)).
inline Mat3 heisenberg_translation(cplx a, double s) {
    return {1.0, -std::conj(a), cplx(-std::norm(a), s) / 2.0, 0.0, 1.0, a, 0.0, 0.0, 1.0};
}

/// Vertical translation by s, a unipotent parabolic fixing infinity.
inline Mat3 vertical_translation(double s) { return heisenberg_translation(0.0, s); }

inline Mat3 random_su21(Rng& g) {
    const double r = std::exp(uniform(g, -1.0, 1.0));
    const double phi = uniform(g, -pi, pi);
    const cplx e = std::polar(1.0, phi);
    const Mat3 D = Mat3::diag({r * e, std::conj(e * e), e / r});
    const Mat3 m = heisenberg_translation(gauss_c(g), gauss(g)) * D * (-1.0 * J) *
                   heisenberg_translation(gauss_c(g), gauss(g));
    if (su21_form_residual(m) > 1e-9 * max_abs(m) * max_abs(m)) throw DomainError("random_su21: form not preserved");
    return m;
}

// ---------------------------------------------------------------------------
// Suite results.

struct CheckResult {
    std::string name;
    double worst = 0.0;
    double tol = 0.0;
    std::size_t samples = 0;
    std::size_t violations = 0;
    bool binding = true;
    bool pass() const { return violations == 0 && worst <= tol; }
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (c.binding && !c.pass()) return false;
        return true;
    }
};

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

namespace detail {
struct Tracker {
    CheckResult c;
    void see(double r) {
        c.worst = std::max(c.worst, std::isnan(r) ? 1e300 : r);
        ++c.samples;
    }
};

/// The eight cross-ratio axioms over `samples` random quadruples of points P.
template <class P, class Draw, class CR, class RealCR>
SuiteResult axiom_suite(const std::string& name, std::size_t samples, Rng& g, Draw draw, CR cr, RealCR real_cr) {
    const double tol = 1e-10;
    std::vector<Tracker> t(9);
    const char* names[] = {"axiom 1 (zero iff a=b or c=d)",
                           "axiom 2 (one iff a=c or b=d)",
                           "axiom 3 [x,y,z,t]=[x,y,w,t][w,y,z,t]",
                           "axiom 4 [x,y,z,t]=[x,y,z,w][x,w,z,t]",
                           "axiom 5 [x,y,z,t]=[z,t,x,y]",
                           "axiom 6 [x,y,z,t]=[z,y,x,t]^-1",
                           "axiom 7 [x,y,z,t]=[x,t,z,y]^-1",
                           "axiom 8 real cross-ratio = modulus",
                           "axiom 1-2 converse (distinct points give neither 0 nor 1)"};
    for (int i = 0; i < 9; ++i) t[i].c = {std::string(names[i]), 0.0, tol, 0, 0, true};
    for (std::size_t k = 0; k < samples; ++k) {
        const P x = draw(g), y = draw(g), z = draw(g), w = draw(g), u = draw(g);
        const cplx v = cr(x, y, z, w);
        t[0].see(std::max(std::abs(cr(x, x, z, w)), std::abs(cr(x, y, z, z))));
        t[1].see(std::max(std::abs(cr(x, y, x, w) - 1.0), std::abs(cr(x, y, z, y) - 1.0)));
        t[2].see(rel(v, cr(x, y, u, w) * cr(u, y, z, w)));
        t[3].see(rel(v, cr(x, y, z, u) * cr(x, u, z, w)));
        t[4].see(rel(v, cr(z, w, x, y)));
        t[5].see(rel(v, 1.0 / cr(z, y, x, w)));
        t[6].see(rel(v, 1.0 / cr(x, w, z, y)));
        const double re = real_cr(x, y, z, w);
        t[7].see(std::abs(re - std::abs(v)) / std::max(1.0, re));
        // Generic distinct points: the value stays away from 0 and 1.
        t[8].see(std::min(std::abs(v), std::abs(v - 1.0)) < 1e-12 ? 1.0 : 0.0);
    }
    SuiteResult r{name, {}};
    for (auto& x : t) r.checks.push_back(x.c);
    return r;
}
}  // namespace detail

inline SuiteResult crossratio_suite_sphere(std::size_t samples, std::uint64_t seed) {
    Rng g(seed);
    return detail::axiom_suite<Vec2>(
        "cross-ratio axioms on the Riemann sphere", samples, g,
        [](Rng& r) { return point2(gauss_c(r)); }, sl2_crossratio, real_crossratio_planar);
}

inline SuiteResult crossratio_suite_heisenberg(std::size_t samples, std::uint64_t seed) {
    Rng g(seed);
    return detail::axiom_suite<Vec3>(
        "cross-ratio axioms on the boundary of complex hyperbolic space", samples, g,
        [](Rng& r) { return lift(random_heisenberg(r)); },
        [](const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) { return cx_crossratio(a, b, c, d); },
        [](const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
            return real_crossratio_heisenberg(heisenberg_coords(a), heisenberg_coords(b), heisenberg_coords(c),
                                              heisenberg_coords(d));
        });
}

inline SuiteResult crossratio_invariance_suite(std::size_t samples, std::uint64_t seed) {
    Rng g(seed);
    detail::Tracker s, h;
    s.c = {"Moebius invariance", 0, 1e-9, 0, 0, true};
    h.c = {"SU(2,1) invariance", 0, 1e-9, 0, 0, true};
    for (std::size_t k = 0; k < samples; ++k) {
        const Mat2 m = random_sl2c(g);
        Vec2 p[4];
        for (auto& q : p) q = point2(gauss_c(g));
        s.see(rel(sl2_crossratio(p[0], p[1], p[2], p[3]),
                  sl2_crossratio(m * p[0], m * p[1], m * p[2], m * p[3])));
        const Mat3 u = random_su21(g);
        Vec3 q[4];
        for (auto& x : q) x = lift(random_heisenberg(g));
        h.see(rel(cx_crossratio(q[0], q[1], q[2], q[3]), cx_crossratio(u * q[0], u * q[1], u * q[2], u * q[3])));
    }
    return {"cross-ratio invariance", {s.c, h.c}};
}

/// The two cross-ratio relations over random quadruples. The printed form of the
/// first relation and the second relation are binding; the corrected first is reported.
inline SuiteResult pp_suite(std::size_t samples, std::uint64_t seed) {
    Rng g(seed);
    detail::Tracker p, c, s;
    p.c = {"first relation as printed |X2|^2 = |X1||X3|", 0, 1e-10, 0, 0, true};
    c.c = {"first relation corrected |X2| = |X1||X3|", 0, 1e-10, 0, 0, false};
    s.c = {"second relation 2|X1|^2 Re X3 = |X1|^2 + |X2|^2 + 1 - 2 Re(X1 + X2)", 0, 1e-10, 0, 0, true};
    for (std::size_t k = 0; k < samples; ++k) {
        Vec3 z[4];
        for (auto& x : z) x = lift(random_heisenberg(g));
        const PPResiduals r = pp_residuals(pp_invariants(z[0], z[1], z[2], z[3]));
        p.see(r.first_printed);
        c.see(r.first_corrected);
        s.see(r.second);
    }
    return {"cross-ratio relations", {p.c, c.c, s.c}};
}

/// Samples until `samples` admissible configurations were checked.
inline SuiteResult holder_suite(std::size_t samples, std::uint64_t seed) {
    Rng g(seed);
    CheckResult v{"violations of the square-rooted constant", 0.0, 0.0, 0, 0, true};
    CheckResult ratio{"worst lhs / rhs", 0.0, 1.0, 0, 0, false};
    std::size_t tries = 0;
    while (v.samples < samples && tries < 100 * samples) {
        ++tries;
        const Vec3 x = lift(random_heisenberg(g)), z = lift(random_heisenberg(g)), t = lift(random_heisenberg(g));
        const HeisenbergPoint y1 = random_heisenberg(g);
        // y2 near y1 for half the samples so that small distances are exercised.
        HeisenbergPoint y2 = random_heisenberg(g);
        if (tries % 2 == 0) {
            const double e = std::pow(10.0, uniform(g, -6.0, 0.0));
            y2 = heisenberg_mul(y1, {e * gauss_c(g), e * e * gauss(g), false});
        }
        try {
            const HolderRecord r = holder_check(x, z, t, lift(y1), lift(y2));
            ++v.samples;
            ++ratio.samples;
            if (!r.holds()) ++v.violations;
            if (r.rhs > 0) ratio.worst = std::max(ratio.worst, r.lhs / r.rhs);
        } catch (const DomainError&) {
        }
    }
    if (v.samples < samples) v.violations += samples - v.samples;
    return {"Hoelder estimate", {v, ratio}};
}

// ---------------------------------------------------------------------------
// Cocycle properties of W_alpha.

struct CocycleSample {
    cplx a_lhs, a_rhs;  ///< W(alpha s, alpha t), W(s, t)
    cplx b;             ///< W(s, alpha s)
    cplx c_lhs, c_rhs;  ///< W(s, u), W(s, t) + W(t, u)
    cplx s0_a, s0_b;    ///< W(s, t) with two different s0
};

inline SuiteResult cocycle_from(const std::string& name, std::size_t samples, const std::function<CocycleSample()>& f) {
    detail::Tracker a, b, c, s0;
    a.c = {"(a) W(alpha s, alpha t) = W(s, t)", 0, 1e-9, 0, 0, true};
    b.c = {"(b) W(s, alpha s) = 1", 0, 1e-9, 0, 0, true};
    c.c = {"(c) W(s, u) = W(s, t) + W(t, u)", 0, 1e-9, 0, 0, true};
    s0.c = {"independence of s0", 0, 1e-10, 0, 0, true};
    for (std::size_t k = 0; k < samples; ++k) {
        const CocycleSample x = f();
        a.see(rel(x.a_lhs, x.a_rhs));
        b.see(rel(x.b, 1.0));
        c.see(rel(x.c_lhs, x.c_rhs));
        s0.see(rel(x.s0_a, x.s0_b));
    }
    return {name, {a.c, b.c, c.c, s0.c}};
}

inline SuiteResult cocycle_suite_sl2c(std::size_t samples, std::uint64_t seed) {
    Rng g(seed);
    return cocycle_from("W_alpha cocycle in SL(2,C)", samples, [&] {
        const Mat2 h = random_sl2c(g);
        const Mat2 alpha = h * Mat2{1.0, gauss_c(g), 0.0, 1.0} * h.inverse();
        auto pt = [&] { return point2(gauss_c(g)); };
        const Vec2 s = pt(), t = pt(), u = pt(), s0 = pt(), s1 = pt();
        auto W = [&](const Vec2& a, const Vec2& b) { return w_alpha(alpha, a, b, s0); };
        return CocycleSample{W(alpha * s, alpha * t), W(s, t), W(s, alpha * s), W(s, u), W(s, t) + W(t, u),
                             W(s, t), w_alpha(alpha, s, t, s1)};
    });
}

inline SuiteResult cocycle_suite_su21(std::size_t samples, std::uint64_t seed) {
    Rng g(seed);
    return cocycle_from("W_alpha cocycle in SU(2,1)", samples, [&] {
        const Mat3 h = random_su21(g);
        const Mat3 alpha = h * vertical_translation(gauss(g) + (g() % 2 ? 0.5 : -0.5)) * su21_inverse(h);
        const Vec3 c = h * lift(HeisenbergPoint{0.0, gauss(g), false});
        auto pt = [&] { return lift(random_heisenberg(g)); };
        const Vec3 s = pt(), t = pt(), u = pt(), s0 = pt(), s1 = pt();
        auto W = [&](const Vec3& a, const Vec3& b) { return w_alpha(alpha, a, b, s0, c); };
        return CocycleSample{W(alpha * s, alpha * t), W(s, t), W(s, alpha * s), W(s, u), W(s, t) + W(t, u),
                             W(s, t), w_alpha(alpha, s, t, s1, c)};
    });
}

// ---------------------------------------------------------------------------
// Periods against metric translation length.

/// Action of SL(2,C) on upper half-space points (z, t).
inline std::pair<cplx, double> act_h3(const Mat2& m, cplx z, double t) {
    const cplx a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    const double D = std::norm(c * z + d) + std::norm(c) * t * t;
    return {((a * z + b) * std::conj(c * z + d) + a * std::conj(c) * t * t) / D, t / D};
}

inline double h3_distance(cplx z1, double t1, cplx z2, double t2) {
    return std::acosh(1.0 + (std::norm(z1 - z2) + (t1 - t2) * (t1 - t2)) / (2.0 * t1 * t2));
}

/// Translation length of a loxodromic from the displacement of a point on its axis.
inline double metric_translation_length(const Mat2& m) {
    const FixedPoints2 f = sl2_fixed_points(m);
    cplx z;
    double t;
    if (is_infinite(f.attracting) || is_infinite(f.repelling)) {
        z = is_infinite(f.attracting) ? chart(f.repelling) : chart(f.attracting);
        t = 1.0;
    } else {
        const cplx a = chart(f.attracting), r = chart(f.repelling);
        z = (a + r) / 2.0;
        t = std::abs(a - r) / 2.0;
    }
    const auto [z2, t2] = act_h3(m, z, t);
    return h3_distance(z, t, z2, t2);
}

inline double metric_translation_length(const Mat3& m) {
    const EigenData e = su21_eigendata(m);
    const Mat3 F = su21_frame(e.attracting, e.repelling);
    const Vec3 x = F * Vec3{-0.5, 0.0, 1.0};
    return bergman_distance(x, m * x);
}

inline SuiteResult period_suite(std::size_t samples, std::uint64_t seed) {
    Rng g(seed);
    detail::Tracker s, h;
    s.c = {"SL(2,C): Re period = translation length", 0, 1e-8, 0, 0, true};
    h.c = {"SU(2,1): Re period = translation length", 0, 1e-8, 0, 0, true};
    while (s.c.samples < samples) {
        const Mat2 m = random_sl2c(g);
        const cplx k = sl2_big_eigenvalue(m.trace());
        if (std::abs(k) < 1.05 || std::abs(k) > 50.0) continue;
        try {
            const double p = period(m, point2(gauss_c(g))).real();
            s.see(std::abs(p - metric_translation_length(m)));
        } catch (const IllConditionedError&) {
        }
    }
    while (h.c.samples < samples) {
        const Mat3 F = random_su21(g);
        const cplx l(uniform(g, 0.05, 2.0), uniform(g, -pi, pi));
        const Mat3 m = F * E(l) * su21_inverse(F);
        try {
            const double p = period(m, lift(random_heisenberg(g))).real();
            h.see(std::abs(p - metric_translation_length(m)));
        } catch (const IllConditionedError&) {
        }
    }
    return {"period consistency", {s.c, h.c}};
}

}  // namespace mcshane
