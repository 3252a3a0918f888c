#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "algebra.hpp"
#include "crossratio.hpp"
#include "errors.hpp"

namespace mcshane {

enum class PantsKind { interior, boundary };
enum class AlphaKind { hyperbolic, cusp };
enum class Route { definitional, closed };

inline const char* to_string(Route r) { return r == Route::closed ? "closed" : "definitional"; }

/// Pair of pants (alpha, beta, gamma) stored in relation order alpha*gamma*beta = 1.
template <std::size_t N>
struct PantsTriple {
    Mat<N> alpha, gamma, beta;
    PantsKind kind = PantsKind::interior;
    AlphaKind alpha_kind = AlphaKind::hyperbolic;
};

using Pants2 = PantsTriple<2>;
using Pants3 = PantsTriple<3>;

template <std::size_t N>
double relation_residual(const PantsTriple<N>& p) {
    return max_abs_diff(p.alpha * p.gamma * p.beta, Mat<N>::identity());
}

/// Builds the pants with gamma = alpha^-1 beta^-1 and checks the relation.
template <std::size_t N>
PantsTriple<N> make_pants(const Mat<N>& alpha, const Mat<N>& beta, PantsKind kind = PantsKind::interior) {
    PantsTriple<N> p;
    p.alpha = alpha;
    p.beta = beta;
    p.gamma = group_inverse(alpha) * group_inverse(beta);
    p.kind = kind;
    IsoClass c;
    if constexpr (N == 2) c = classify_sl2(alpha);
    else c = classify_su21(alpha);
    p.alpha_kind = c == IsoClass::parabolic ? AlphaKind::cusp : AlphaKind::hyperbolic;
    const double sc = std::max(1.0, max_abs(alpha) * max_abs(beta));
    if (relation_residual(p) > 1e-10 * sc * sc) throw DomainError("make_pants: relation alpha*gamma*beta = 1 fails");
    return p;
}

struct GapValue {
    cplx value;
    Route route;
};

// ---------------------------------------------------------------------------
// Fixed points, uniform over the two groups.

template <std::size_t N>
struct Ends {
    Vec<N> plus, minus;
    cplx eigenvalue;  ///< SL2: eigenvalue at `plus`; SU21: e^lambda
};

inline Ends<2> ends(const Mat2& m) {
    const FixedPoints2 f = sl2_fixed_points(m);
    return {f.attracting, f.repelling, f.multiplier_root};
}

inline Ends<3> ends(const Mat3& m) {
    const EigenData e = su21_eigendata(m);
    return {e.attracting, e.repelling, std::exp(e.lambda)};
}

/// Fixed point of a unipotent SU(2,1) element alpha = I + N with N of rank one.
inline Vec3 su21_parabolic_fixed_point(const Mat3& a) {
    const Mat3 n = a - Mat3::identity();
    if (max_abs(n * n) > 1e-9 * std::max(1.0, max_abs(n) * max_abs(n)))
        throw ClassificationError("su21_parabolic_fixed_point: not a unipotent translation");
    std::size_t k = 0;
    for (std::size_t j = 1; j < 3; ++j)
        if (norm(n.col(j)) > norm(n.col(k))) k = j;
    const Vec3 p = n.col(k);
    if (norm(p) == 0.0) throw ClassificationError("su21_parabolic_fixed_point: identity");
    if (!is_null(p, 1e-8)) throw ClassificationError("su21_parabolic_fixed_point: fixed vector is not null");
    return scale(p, 1.0 / norm(p));
}

template <std::size_t N>
void require_separated(std::initializer_list<Vec<N>> pts) {
    const auto* b = pts.begin();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (separation(b[i], b[j]) <= 1e-15)
                throw DegenerateError("pants: fixed points are not separated", "indeterminate");
}

// ---------------------------------------------------------------------------
// Gap functions for a hyperbolic first boundary.

template <std::size_t N>
GapValue gap_G(const PantsTriple<N>& p) {
    if (p.alpha_kind == AlphaKind::cusp)
        throw DegenerateError("gap_G: alpha is a cusp; the gap is zero, use gap_W", "0");
    const auto a = ends(p.alpha), b = ends(p.beta), g = ends(p.gamma);
    require_separated<N>({a.plus, a.minus, b.plus, g.minus});
    return {std::log(crossratio(a.plus, g.minus, a.minus, b.plus)), Route::definitional};
}

template <std::size_t N>
GapValue gap_Gr(const PantsTriple<N>& p) {
    if (p.alpha_kind == AlphaKind::cusp)
        throw DegenerateError("gap_Gr: alpha is a cusp; the gap is zero, use gap_Wr", "0");
    const auto a = ends(p.alpha), b = ends(p.beta);
    require_separated<N>({a.plus, a.minus, b.plus, b.minus});
    return {std::log(crossratio(a.plus, b.plus, a.minus, b.minus)), Route::definitional};
}

/// Closed form of G in SL(2,C) from the eigenvalues at the attracting points.
inline GapValue closed_G_sl2(const Pants2& p) {
    const cplx ka = sl2_big_eigenvalue(p.alpha.trace());
    const cplx kb = sl2_big_eigenvalue(p.beta.trace());
    const cplx kg = sl2_big_eigenvalue(p.gamma.trace());
    const cplx prod = kb * kg;
    return {std::log((ka - prod) / (1.0 / ka - prod)), Route::closed};
}

// ---------------------------------------------------------------------------
// Cusp gap functions.

/// W_alpha(s, t) for a parabolic alpha in SL(2,C), in a chart with alpha+ at infinity.
inline cplx w_alpha(const Mat2& alpha, const Vec2& s, const Vec2& t, const Vec2& s0) {
    const Vec2 p = sl2_parabolic_fixed_point(alpha);
    const Vec2 e{-std::conj(p[1]), std::conj(p[0])};
    auto w = [&](const Vec2& q) {
        const cplx d = det2(p, q);
        if (std::abs(d) <= 1e-14 * norm(p) * norm(q)) throw DomainError("w_alpha: point equals alpha+");
        return det2(e, q) / d;
    };
    const cplx den = w(mobius(alpha, s0)) - w(s0);
    return (w(t) - w(s)) / den;
}

/// W_alpha(s, t) for a vertical-translation alpha in SU(2,1). `chain_ref` fixes
/// the chain through alpha+ along which y approaches alpha+.
inline cplx w_alpha(const Mat3& alpha, const Vec3& s, const Vec3& t, const Vec3& s0, const Vec3& chain_ref) {
    const Vec3 p = su21_parabolic_fixed_point(alpha);
    auto f = [&](const Vec3& q) {
        const cplx d = herm(q, p);
        if (std::abs(d) <= 1e-14 * norm(p) * norm(q)) throw DomainError("w_alpha: point equals alpha+");
        return herm(q, chain_ref) / d;
    };
    return std::conj((f(s) - f(t)) / (f(s0) - f(alpha * s0)));
}

namespace detail {
template <class G>
cplx richardson_derivative(G&& g, double h) {
    auto central = [&](double k) { return (g(k) - g(-k)) / (2.0 * k); };
    return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}
}  // namespace detail

/// Derivative-ratio definition of W_alpha by finite differences in y.
inline cplx w_alpha_fd(const Mat2& alpha, const Vec2& s, const Vec2& t, const Vec2& s0, double h = 1e-4) {
    const Vec2 p = sl2_parabolic_fixed_point(alpha);
    const Vec2 e{-std::conj(p[1]), std::conj(p[0])};
    auto dlog = [&](const Vec2& a, const Vec2& b) {
        return detail::richardson_derivative(
            [&](double u) { return std::log(sl2_crossratio(p, a, add(p, scale(e, u)), b)); }, h);
    };
    return dlog(s, t) / dlog(s0, mobius(alpha, s0));
}

inline cplx w_alpha_fd(const Mat3& alpha, const Vec3& s, const Vec3& t, const Vec3& s0, const Vec3& chain_ref,
                       double h = 1e-4) {
    const Vec3 p = su21_parabolic_fixed_point(alpha);
    const Vec3 c = scale(chain_ref, 1.0 / herm(chain_ref, p));
    auto dlog = [&](const Vec3& a, const Vec3& b) {
        return detail::richardson_derivative(
            [&](double u) { return std::log(cx_crossratio(p, a, add(scale(p, I), scale(c, u)), b)); }, h);
    };
    return dlog(s, t) / dlog(s0, alpha * s0);
}

inline GapValue gap_W(const Pants2& p) {
    const auto b = ends(p.beta), g = ends(p.gamma);
    return {w_alpha(p.alpha, g.minus, b.plus, g.minus), Route::definitional};
}

inline GapValue gap_Wr(const Pants2& p) {
    if (p.kind != PantsKind::boundary) throw DomainError("gap_Wr: beta is not a boundary of the surface");
    const auto b = ends(p.beta);
    return {w_alpha(p.alpha, b.plus, b.minus, b.plus), Route::definitional};
}

inline GapValue gap_W(const Pants3& p, const Vec3& chain_ref) {
    const auto b = ends(p.beta), g = ends(p.gamma);
    return {w_alpha(p.alpha, g.minus, b.plus, g.minus, chain_ref), Route::definitional};
}

inline GapValue gap_Wr(const Pants3& p, const Vec3& chain_ref) {
    if (p.kind != PantsKind::boundary) throw DomainError("gap_Wr: beta is not a boundary of the surface");
    const auto b = ends(p.beta);
    return {w_alpha(p.alpha, b.plus, b.minus, b.plus, chain_ref), Route::definitional};
}

inline cplx closed_W_sl2(cplx lb, cplx lg) { return 1.0 / (1.0 + std::exp((lb + lg) / 2.0)); }

inline cplx closed_Wr_sl2(cplx lb, cplx lg) {
    return std::sinh(lb / 2.0) / (std::cosh(lg / 2.0) + std::cosh(lb / 2.0));
}

/// Lengths of beta and gamma whose half-exponentials carry the trace signs:
/// e^{lb/2} e^{lg/2} = -(tr alpha / 2) k_beta k_gamma.
inline std::pair<cplx, cplx> signed_lengths(const Pants2& p) {
    const cplx kb = sl2_big_eigenvalue(p.beta.trace());
    const cplx kg = sl2_big_eigenvalue(p.gamma.trace());
    const cplx sa = p.alpha.trace() / 2.0;
    return {2.0 * std::log(kb), 2.0 * std::log(-sa * kg)};
}

inline GapValue closed_W(const Pants2& p) {
    const auto [lb, lg] = signed_lengths(p);
    return {closed_W_sl2(lb, lg), Route::closed};
}

struct Shear {
    cplx A, B, C;
};

inline Shear shear_coords(const Pants2& p) {
    const Vec2 ap = p.alpha_kind == AlphaKind::cusp ? sl2_parabolic_fixed_point(p.alpha) : ends(p.alpha).plus;
    const Vec2 bp = ends(p.beta).plus;
    const Vec2 gm = ends(p.gamma).minus;
    require_separated<2>({ap, bp, gm});
    return {-sl2_crossratio(gm, ap, bp, mobius(p.beta, ap)),
            -sl2_crossratio(ap, bp, gm, mobius(group_inverse(p.alpha), bp)),
            -sl2_crossratio(bp, gm, ap, mobius(group_inverse(p.beta), gm))};
}

// ---------------------------------------------------------------------------
// SU(2,1) closed forms after normalizing alpha to E(lambda).

inline cplx sigma(cplx x) { return std::exp(x) - std::exp(std::conj(x) - x); }

/// alpha = E(lambda), gamma = Q E(mu) Q^-1, beta = R E(nu) R^-1.
struct Su21Normal {
    cplx lambda, mu, nu;
    Mat3 Q, R;
    Mat3 alpha, gamma, beta;
};

inline Su21Normal normalize_su21(const Pants3& p) {
    const EigenData ea = su21_eigendata(p.alpha);
    const Mat3 F = su21_frame(ea.attracting, ea.repelling);
    const Mat3 Fi = su21_inverse(F);
    Su21Normal n;
    n.alpha = Fi * p.alpha * F;
    n.gamma = Fi * p.gamma * F;
    n.beta = Fi * p.beta * F;
    n.lambda = ea.lambda;
    const EigenData eg = su21_eigendata(n.gamma), eb = su21_eigendata(n.beta);
    n.mu = eg.lambda;
    n.nu = eb.lambda;
    n.Q = su21_frame(eg.attracting, eg.repelling);
    n.R = su21_frame(eb.attracting, eb.repelling);
    return n;
}

/// Checks the normal-form precondition alpha = E(lambda).
inline void require_normal(const Su21Normal& n) {
    if (max_abs_diff(n.alpha, E(n.lambda)) > 1e-8 * std::max(1.0, max_abs(n.alpha)))
        throw DomainError("su21 closed form: alpha is not in E(lambda) form");
}

/// Numerator and denominator of the closed form of G.
struct Su21GParts {
    cplx num, den;
};

inline Su21GParts su21_G_parts(cplx lambda, cplx mu, cplx nu, const PPInvariants& x) {
    using std::conj;
    using std::exp;
    const cplx L = lambda, Lb = conj(lambda), m = mu, mb = conj(mu), n = nu, nb = conj(nu);
    const cplx X1 = x.X1, X2b = conj(x.X2), X3b = conj(x.X3);
    const cplx num = exp(-Lb) * (exp(mb - m) + X1 * sigma(-mb) + X2b * sigma(m)) +
                     exp(-nb) * exp(Lb) * (exp(m - mb) + X2b * sigma(-m) + X1 * sigma(mb)) - exp(n - nb) - exp(-n);
    const cplx den = exp(-Lb) * (X2b * sigma(m) + X1 * X3b * sigma(-mb)) +
                     exp(-nb) * exp(-L) * (X2b * sigma(-m) + X1 * X3b * sigma(mb));
    return {num, den};
}

inline cplx su21_gap_G(cplx lambda, cplx mu, cplx nu, const PPInvariants& x) {
    const auto parts = su21_G_parts(lambda, mu, nu, x);
    return std::log(parts.num / parts.den);
}

/// X1 = j conj(a), X2 = c conj(g), X3 = c g / (a j) from the entries of Q.
inline PPInvariants pp_from_frame(const Mat3& Q) {
    const cplx a = Q(0, 0), c = Q(0, 2), g = Q(2, 0), j = Q(2, 2);
    return {j * std::conj(a), c * std::conj(g), c * g / (a * j)};
}

struct Su21GrParts {
    cplx N1, N2, den;
};

inline Su21GrParts su21_Gr_parts(cplx lambda, cplx mu, cplx nu, const Mat3& Q) {
    using std::conj;
    using std::exp;
    const cplx L = lambda, Lb = conj(lambda), m = mu, mb = conj(mu), n = nu, nb = conj(nu);
    const cplx a = Q(0, 0), c = Q(0, 2), g = Q(2, 0), j = Q(2, 2);
    const cplx N1 = exp(Lb) * (conj(a) * c * sigma(mb) + conj(c) * a * sigma(-m)) +
                    exp(-n) * exp(L) * (conj(a) * c * sigma(-mb) + conj(c) * a * sigma(m));
    const cplx N2 = exp(-Lb) * (g * conj(j) * sigma(m) + j * conj(g) * sigma(-mb)) +
                    exp(-nb) * exp(-L) * (g * conj(j) * sigma(-m) + j * conj(g) * sigma(mb));
    const cplx num = su21_G_parts(lambda, mu, nu, pp_from_frame(Q)).num;
    return {N1, N2, std::norm(num)};
}

inline cplx su21_gap_Gr(cplx lambda, cplx mu, cplx nu, const Mat3& Q) {
    const auto p = su21_Gr_parts(lambda, mu, nu, Q);
    return std::log(p.N1 * p.N2 / p.den);
}

/// Expansion of N1*N2 in X1, X2, X3.
inline cplx su21_Gr_numerator_expansion(cplx lambda, cplx mu, cplx nu, const PPInvariants& x) {
    using std::exp;
    const cplx L = lambda, Lb = std::conj(lambda), m = mu, mb = std::conj(mu), n = nu, nb = std::conj(nu);
    const cplx A1 = 1.0 - exp(-n) * exp(-m) * exp(L - Lb);
    const cplx A2 = exp(-nb) * exp(Lb - L) - exp(-m);
    const double x1 = std::norm(x.X1);
    return std::norm(sigma(m) * A1) * x1 * x.X3 + std::norm(sigma(m) * A2) * x1 * std::conj(x.X3) +
           2.0 * (sigma(mb) * sigma(mb) * A1 * A2 * x.X1 * x.X2).real();
}

/// beta written through R and nu (from R R^-1 = I).
inline Mat3 beta_from_R(const Mat3& R, cplx nu) {
    const cplx nb = std::conj(nu);
    const Vec3 first{std::conj(R(2, 2)), std::conj(R(1, 2)), std::conj(R(0, 2))};
    const Vec3 last{std::conj(R(2, 0)), std::conj(R(1, 0)), std::conj(R(0, 0))};
    Mat3 b;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            b(i, k) = R(i, 0) * first[k] * sigma(nu) + R(i, 2) * last[k] * sigma(-nb) +
                      (i == k ? std::exp(nb - nu) : cplx(0.0));
    return b;
}

/// beta written through Q, lambda and mu (from alpha gamma beta = 1).
inline Mat3 beta_from_Q(const Mat3& Q, cplx lambda, cplx mu) {
    const cplx mb = std::conj(mu), Lb = std::conj(lambda);
    const Vec3 first{std::conj(Q(2, 2)), std::conj(Q(1, 2)), std::conj(Q(0, 2))};
    const Vec3 last{std::conj(Q(2, 0)), std::conj(Q(1, 0)), std::conj(Q(0, 0))};
    const Vec3 sc{std::exp(-lambda), std::exp(lambda - Lb), std::exp(Lb)};
    Mat3 b;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            b(i, k) = sc[k] * (Q(i, 0) * first[k] * sigma(-mu) + Q(i, 2) * last[k] * sigma(mb) +
                                (i == k ? std::exp(mu - mb) : cplx(0.0)));
    return b;
}

/// conj(a')/conj(g') for R = [[a',.,.],[.,.,.],[g',.,.]], from the bottom-left entry comparison.
inline cplx su21_top_bottom_ratio(cplx lambda, cplx mu, cplx nu, const Mat3& Q) {
    using std::conj;
    using std::exp;
    const cplx L = lambda, Lb = conj(lambda), m = mu, mb = conj(mu), n = nu, nb = conj(nu);
    const cplx a = Q(0, 0), c = Q(0, 2), g = Q(2, 0), j = Q(2, 2);
    const cplx num = exp(-Lb) * (exp(mb - m) + conj(a) * j * sigma(-mb) + conj(c) * g * sigma(m)) +
                     exp(-nb) * exp(Lb) * (exp(m - mb) + g * conj(c) * sigma(-m) + j * conj(a) * sigma(mb)) -
                     exp(n - nb) - exp(-n);
    const cplx den = exp(-Lb) * (g * conj(j) * sigma(m) + j * conj(g) * sigma(-mb)) +
                     exp(-nb) * exp(-L) * (g * conj(j) * sigma(-m) + j * conj(g) * sigma(mb));
    return num / den;
}

// ---------------------------------------------------------------------------
// Cusp configuration on the vertical axis.

struct CuspConfig {
    double t = 0, t1 = 0, t2 = 0, s1 = 0, s2 = 0;
    cplx mu, nu;
    double W() const { return (s1 - t2) / t; }
    double Wr() const { return (s2 - s1) / t; }
};

/// t2 is a free translation gauge along the axis.
inline CuspConfig su21_cusp_config(cplx mu, cplx nu, double t, double t2 = 0.0) {
    using std::exp;
    if (t == 0.0) throw DomainError("su21_cusp_config: zero translation");
    const cplx mb = std::conj(mu), nb = std::conj(nu);
    if (std::abs(exp(mu - mb) - exp(nb - nu)) > 1e-9)
        throw DomainError("su21_cusp_config: exp(mu - conj mu) differs from exp(conj nu - nu)");
    const cplx D = exp(nu) + exp(-nb) - exp(mb) - exp(-mu);
    const double sc = std::abs(exp(nu)) + std::abs(exp(mu)) + 1.0;
    if (std::abs(D) <= 1e-12 * sc) throw DegenerateError("su21_cusp_config: vanishing denominator", "inf");
    const double d_t = ((exp(mb) - exp(-mu)) * t / D).real();
    const double d_s = ((exp(-nb) - exp(nu)) * t / D).real();
    CuspConfig c;
    c.t = t;
    c.t2 = t2;
    c.t1 = t2 + d_t;
    const double sum = t + c.t1 + c.t2;
    c.s1 = (sum + d_s) / 2.0;
    c.s2 = (sum - d_s) / 2.0;
    c.mu = mu;
    c.nu = nu;
    return c;
}

/// Residuals of the five entry identities of beta, in order.
inline std::array<double, 5> five_identities(const CuspConfig& c) {
    using std::exp;
    const cplx mu = c.mu, nu = c.nu, mb = std::conj(mu), nb = std::conj(nu);
    const double t = c.t, t1 = c.t1, t2 = c.t2, s1 = c.s1, s2 = c.s2;
    return {
        std::abs((exp(-mu) * t1 - exp(mb) * t2) / (t1 - t2) - (s1 * exp(nu) - s2 * exp(-nb)) / (s1 - s2)),
        std::abs((exp(mb) - exp(-mu)) / (t1 - t2) - (exp(-nb) - exp(nu)) / (s1 - s2)),
        std::abs(exp(mu - mb) - exp(nb - nu)),
        std::abs((t * (exp(mb) * t2 - exp(-mu) * t1) + t1 * t2 * (exp(mb) - exp(-mu))) / (t1 - t2) -
                 (exp(-nb) - exp(nu)) / (s1 - s2) * s1 * s2),
        std::abs((t * (exp(mb) - exp(-mu)) + exp(mb) * t1 - exp(-mu) * t2) / (t1 - t2) -
                 (s1 * exp(-nb) - s2 * exp(nu)) / (s1 - s2)),
    };
}

/// Closed-form W for the C-Fuchsian cusp pants, independent of t and the gauge.
inline cplx closed_W_su21(cplx mu, cplx nu) {
    using std::exp;
    const cplx D = exp(nu) + exp(-std::conj(nu)) - exp(std::conj(mu)) - exp(-mu);
    if (std::abs(D) <= 1e-12 * (1.0 + std::abs(exp(nu)) + std::abs(exp(mu))))
        throw DegenerateError("closed_W_su21: vanishing denominator", "inf");
    return (exp(-std::conj(nu)) - exp(-mu)) / D;
}

}  // namespace mcshane
