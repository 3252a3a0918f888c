#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "pants.hpp"

namespace mcshane {

// ---------------------------------------------------------------------------
// Slopes. (p, q) counts the letters A and B of the curve; the q = 0 slot is 1/0.

struct Slope {
    std::int64_t p = 1, q = 0;
    friend bool operator==(const Slope&, const Slope&) = default;
};

inline Slope canonical(std::int64_t p, std::int64_t q) {
    if (p == 0 && q == 0) throw DomainError("slope: zero vector");
    const std::int64_t g = std::gcd(p < 0 ? -p : p, q < 0 ? -q : q);
    p /= g;
    q /= g;
    if (q < 0 || (q == 0 && p < 0)) {
        p = -p;
        q = -q;
    }
    return {p, q};
}

inline std::string to_string(const Slope& s) { return std::to_string(s.p) + "/" + std::to_string(s.q); }

/// Integer vector representing a slope with a chosen sign.
struct Lattice {
    std::int64_t p = 0, q = 0;
    friend Lattice operator+(Lattice a, Lattice b) { return {a.p + b.p, a.q + b.q}; }
    friend Lattice operator-(Lattice a) { return {-a.p, -a.q}; }
};

inline __int128 det(Lattice a, Lattice b) { return (__int128)a.p * b.q - (__int128)a.q * b.p; }
inline Lattice lattice(const Slope& s) { return {s.p, s.q}; }
inline Slope slope_of(Lattice v) { return canonical(v.p, v.q); }
inline bool same_slope(Lattice a, Lattice b) { return det(a, b) == 0; }

/// m lies in the open arc of slopes {x a + y b : x, y > 0} (signs of a, b matter).
inline bool in_open_arc(Lattice m, Lattice a, Lattice b) {
    const __int128 x = det(a, m), y = det(m, b);
    return x != 0 && y != 0 && ((x > 0) == (y > 0));
}

/// Whether the open arcs (a, b) and (s, t) intersect.
inline bool arcs_intersect(Lattice a, Lattice b, Lattice s, Lattice t) {
    if (in_open_arc(a, s, t) || in_open_arc(b, s, t) || in_open_arc(s, a, b) || in_open_arc(t, a, b)) return true;
    return (same_slope(a, s) && same_slope(b, t)) || (same_slope(a, t) && same_slope(b, s));
}

inline bool farey_adjacent(const Slope& a, const Slope& b) {
    const __int128 d = det(lattice(a), lattice(b));
    return d == 1 || d == -1;
}

inline Slope mediant(const Slope& a, const Slope& b) { return canonical(a.p + b.p, a.q + b.q); }

// ---------------------------------------------------------------------------
// Character coordinates.

struct MarkovTriple {
    cplx x, y, z;  ///< traces of A, B, AB
    cplx boundary_trace() const { return x * x + y * y + z * z - x * y * z - 2.0; }
    cplx markov_residual() const { return x * x + y * y + z * z - x * y * z; }
    double scale() const { return std::max(1.0, std::abs(x * y * z)); }
    bool is_cusp(double tol = 1e-10) const { return std::abs(markov_residual()) <= tol * scale(); }
};

/// Vieta involutions: each replaces one trace by the other root of the Markov quadric.
inline MarkovTriple flip_x(const MarkovTriple& t) { return {t.y * t.z - t.x, t.y, t.z}; }
inline MarkovTriple flip_y(const MarkovTriple& t) { return {t.x, t.x * t.z - t.y, t.z}; }
inline MarkovTriple flip_z(const MarkovTriple& t) { return {t.x, t.y, t.x * t.y - t.z}; }

/// L: (A, B) -> (AB, B) and R: (A, B) -> (A, BA) on traces.
inline MarkovTriple move_L(const MarkovTriple& t) { return {t.z, t.y, t.y * t.z - t.x}; }
inline MarkovTriple move_R(const MarkovTriple& t) { return {t.x, t.z, t.x * t.z - t.y}; }

inline void require_monodromy_word(const std::string& w) {
    if (w.empty()) throw ParseError("monodromy: empty word");
    for (char c : w)
        if (c != 'R' && c != 'L') throw ParseError(std::string("monodromy: unknown letter '") + c + "'");
    if (w.find('R') == std::string::npos || w.find('L') == std::string::npos)
        throw DomainError("monodromy: word must contain both R and L");
}

/// Trace map of the word; the last letter acts first.
inline MarkovTriple apply_monodromy(const std::string& word, MarkovTriple t) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) t = *it == 'L' ? move_L(t) : move_R(t);
    return t;
}

/// Integer matrix of the monodromy on slope vectors (p, q), stored row-major.
struct SlopeMap {
    std::int64_t a = 1, b = 0, c = 0, d = 1;
    Lattice operator()(Lattice v) const { return {a * v.p + b * v.q, c * v.p + d * v.q}; }
    SlopeMap operator*(const SlopeMap& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

inline SlopeMap slope_map(const std::string& word) {
    SlopeMap m;
    for (char ch : word) m = (ch == 'L' ? SlopeMap{1, 0, 1, 1} : SlopeMap{1, 1, 0, 1}) * m;
    return m;
}

struct FiberedSolution {
    MarkovTriple triple;
    double residual;  ///< max-norm of T(v) - v
};

/// Non-real cusped fixed points of the monodromy trace map. The fixed set of a
/// trace map is a curve, so the cusp equation is appended and the overdetermined
/// system is solved by Gauss-Newton from the 5x5x5 grid 3 + {-2,-1,0,1,2} i.
inline std::vector<FiberedSolution> fibered_candidates(const std::string& word) {
    require_monodromy_word(word);
    using V = std::array<cplx, 3>;
    using R = std::array<cplx, 4>;
    auto F = [&](const V& v) {
        const MarkovTriple t = apply_monodromy(word, {v[0], v[1], v[2]});
        const MarkovTriple u{v[0], v[1], v[2]};
        return R{t.x - v[0], t.y - v[1], t.z - v[2], u.markov_residual()};
    };
    auto inf_norm = [](const auto& v) {
        double m = 0.0;
        for (const auto& e : v) m = std::max(m, std::abs(e));
        return m;
    };
    std::vector<FiberedSolution> out;
    for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j)
            for (int k = -2; k <= 2; ++k) {
                V v{cplx(3, i), cplx(3, j), cplx(3, k)};
                bool ok = false;
                for (int it = 0; it < 200 && !ok; ++it) {
                    const R f = F(v);
                    if (!std::isfinite(inf_norm(f)) || inf_norm(v) > 1e8) break;
                    if (inf_norm(f) < 1e-13 * std::max(1.0, inf_norm(v) * inf_norm(v))) {
                        ok = true;
                        break;
                    }
                    // Polynomial map: central differences are accurate to rounding.
                    std::array<V, 4> Jr{};
                    for (int c = 0; c < 3; ++c) {
                        const double h = 1e-6 * std::max(1.0, std::abs(v[c]));
                        V vp = v, vm = v;
                        vp[c] += h;
                        vm[c] -= h;
                        const R fp = F(vp), fm = F(vm);
                        for (int r = 0; r < 4; ++r) Jr[r][c] = (fp[r] - fm[r]) / (2.0 * h);
                    }
                    Mat3 N;
                    Vec3 g{};
                    for (int a = 0; a < 3; ++a) {
                        for (int b = 0; b < 3; ++b) {
                            cplx s = 0.0;
                            for (int r = 0; r < 4; ++r) s += std::conj(Jr[r][a]) * Jr[r][b];
                            N(a, b) = s;
                        }
                        for (int r = 0; r < 4; ++r) g[a] += std::conj(Jr[r][a]) * f[r];
                    }
                    if (std::abs(N.det()) < 1e-300) break;
                    const Vec3 step = N.inverse() * g;
                    for (int r = 0; r < 3; ++r) v[r] -= step[r];
                }
                if (!ok) continue;
                const MarkovTriple t{v[0], v[1], v[2]};
                if (!t.is_cusp(1e-9)) continue;
                const double im = std::max({std::abs(t.x.imag()), std::abs(t.y.imag()), std::abs(t.z.imag())});
                if (im < 1e-6) continue;
                bool dup = false;
                for (const auto& s : out)
                    if (inf_norm(V{s.triple.x - t.x, s.triple.y - t.y, s.triple.z - t.z}) < 1e-8) dup = true;
                if (!dup) out.push_back({t, inf_norm(F(v))});
            }
    std::sort(out.begin(), out.end(), [](const FiberedSolution& a, const FiberedSolution& b) {
        const auto key = [](const MarkovTriple& t) {
            return std::array<double, 6>{-t.x.imag(), t.x.real(), t.y.real(), t.y.imag(), t.z.real(), t.z.imag()};
        };
        return key(a.triple) < key(b.triple);
    });
    return out;
}

inline MarkovTriple fibered_character(const std::string& word) {
    const auto c = fibered_candidates(word);
    if (c.empty()) throw DomainError("fibered_character: no non-real fixed point from the seed grid");
    return c.front().triple;
}

// ---------------------------------------------------------------------------
// Representations.

enum class Flavor { fuchsian, quasifuchsian, holed, cfuchsian_su21, fibered };

inline const char* to_string(Flavor f) {
    switch (f) {
        case Flavor::fuchsian: return "fuchsian";
        case Flavor::quasifuchsian: return "quasifuchsian";
        case Flavor::holed: return "holed";
        case Flavor::cfuchsian_su21: return "cfuchsian-su21";
        case Flavor::fibered: return "fibered";
    }
    return "?";
}

struct Representation {
    MarkovTriple triple;
    Mat2 A, B, alpha;  ///< alpha = A B A^-1 B^-1
    Group target = Group::SL2R;
    Flavor flavor = Flavor::fuchsian;
    bool cusp = true;
    bool branch_warning = false;
    std::string monodromy;  ///< fibered only
    Vec3 chain_ref{};       ///< SU(2,1) only: a point on the chain through alpha+
};

inline Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b * group_inverse(a) * group_inverse(b); }

/// A = [[x, 1], [-1, 0]], B = [[0, zeta], [-1/zeta, y]] with zeta + 1/zeta = -z.
inline std::pair<Mat2, Mat2> markov_generators(const MarkovTriple& t) {
    const cplx disc = std::sqrt(t.z * t.z - 4.0);
    const cplx zeta = (-t.z + disc) / 2.0;
    if (std::abs(zeta) < 1e-300) throw DomainError("markov_generators: degenerate trace of AB");
    const Mat2 A{t.x, 1.0, -1.0, 0.0};
    const Mat2 B{0.0, zeta, -1.0 / zeta, t.y};
    return {A, B};
}

inline Representation rep_from_triple(const MarkovTriple& t, Flavor flavor) {
    Representation r;
    r.triple = t;
    std::tie(r.A, r.B) = markov_generators(t);
    r.alpha = commutator(r.A, r.B);
    r.flavor = flavor;
    r.cusp = flavor != Flavor::holed;
    bool real = true;
    for (const auto& m : {r.A, r.B})
        for (const auto& e : m.a) real = real && std::abs(e.imag()) <= 1e-14 * std::max(1.0, std::abs(e));
    r.target = real ? Group::SL2R : Group::SL2C;
    const double sc = t.scale();
    const double tr_err = std::max({std::abs(r.A.trace() - t.x), std::abs(r.B.trace() - t.y),
                                    std::abs((r.A * r.B).trace() - t.z)});
    if (tr_err > 1e-10 * sc) throw DomainError("representation: generator traces do not match the triple");
    if (std::abs(r.alpha.trace() - t.boundary_trace()) > 1e-9 * sc * sc)
        throw DomainError("representation: commutator trace does not match the triple");
    return r;
}

inline Representation build_fuchsian(double x, double y, double z) {
    if (x <= 2.0 || y <= 2.0 || z <= 2.0) throw DomainError("build_fuchsian: traces must exceed 2");
    const MarkovTriple t{x, y, z};
    if (!t.is_cusp()) throw DomainError("build_fuchsian: triple violates x^2 + y^2 + z^2 = xyz");
    return rep_from_triple(t, Flavor::fuchsian);
}

/// z is the root of z^2 - xyz + x^2 + y^2 = 0 continuous from the smaller real root.
inline Representation build_quasifuchsian(cplx x, cplx y, bool larger_root = false) {
    const cplx disc = x * x * y * y - 4.0 * (x * x + y * y);
    const cplx s = std::sqrt(disc);
    const cplx z = (x * y + (larger_root ? s : -s)) / 2.0;
    const MarkovTriple t{x, y, z};
    const bool real = x.imag() == 0.0 && y.imag() == 0.0 && z.imag() == 0.0;
    Representation r = rep_from_triple(t, real ? Flavor::fuchsian : Flavor::quasifuchsian);
    r.branch_warning = std::abs(disc) < 1e-6 * std::max(1.0, std::abs(x * x * y * y));
    return r;
}

inline Representation build_holed_torus(cplx x, cplx y, cplx z) {
    const MarkovTriple t{x, y, z};
    const cplx b = t.boundary_trace();
    if (std::abs(b.imag()) <= 1e-12 && std::abs(b.real()) <= 2.0 + 1e-10)
        throw DomainError("build_holed_torus: |boundary trace| <= 2, not a holed torus");
    if (t.is_cusp()) throw DomainError("build_holed_torus: triple is cusped");
    return rep_from_triple(t, Flavor::holed);
}

/// Cusped or holed torus from any triple, with the flavor read off the traces.
inline Representation build_markov(cplx x, cplx y, cplx z) {
    const MarkovTriple t{x, y, z};
    if (t.is_cusp()) {
        const bool real = x.imag() == 0.0 && y.imag() == 0.0 && z.imag() == 0.0;
        return rep_from_triple(t, real ? Flavor::fuchsian : Flavor::quasifuchsian);
    }
    return build_holed_torus(x, y, z);
}

inline Representation build_fibered(const std::string& word) {
    require_monodromy_word(word);
    Representation r = rep_from_triple(fibered_character(word), Flavor::fibered);
    r.monodromy = word;
    return r;
}

/// [[a, b], [c, d]] -> [[a, 0, ib], [0, 1, 0], [-ic, 0, d]]; real x goes to (ix, 0, 1).
inline Mat3 iota(const Mat2& m) {
    Mat3 r{m(0, 0), 0.0, I * m(0, 1), 0.0, 1.0, 0.0, -I * m(1, 0), 0.0, m(1, 1)};
    if (su21_form_residual(r) > 1e-9 * std::max(1.0, max_abs(r) * max_abs(r)))
        throw DomainError("iota: image does not preserve the Hermitian form (source not real)");
    return r;
}

inline Vec3 iota(const Vec2& p) { return {I * p[0], 0.0, p[1]}; }

inline Representation embed_cfuchsian(const Representation& src) {
    if (src.target != Group::SL2R || src.flavor != Flavor::fuchsian)
        throw DomainError("embed_cfuchsian: source must be a real Fuchsian torus");
    Representation r = src;
    r.target = Group::SU21;
    r.flavor = Flavor::cfuchsian_su21;
    iota(src.A);
    iota(src.B);
    const Vec2 p = sl2_parabolic_fixed_point(src.alpha);
    r.chain_ref = chordal(p, point2(0.0)) > 1e-3 ? iota(point2(0.0)) : iota(point2(1.0));
    return r;
}

// ---------------------------------------------------------------------------
// Farey tree walk.

/// A slope of the walk: its word beta (when matrices are tracked) and trace.
struct TreeRegion {
    Slope slope;
    cplx trace;
    int depth = 0;
    double path_max = 0.0;  ///< largest trace modulus along the path from the root
    Mat2 beta;
};

/// Subtree cut by the trace threshold: its root trace and smaller side trace.
struct PrunedEdge {
    cplx trace;
    double side_min = 0.0;
    int depth = 0;
};

/// Union of arcs {anchor} together with the open arc (anchor, end).
struct SlopeDomain {
    std::vector<std::pair<Lattice, Lattice>> arcs;

    bool contains(Lattice m) const {
        for (const auto& [s, t] : arcs)
            if (same_slope(m, s) || in_open_arc(m, s, t)) return true;
        return false;
    }
    bool meets_arc(Lattice a, Lattice b) const {
        for (const auto& [s, t] : arcs)
            if (arcs_intersect(a, b, s, t)) return true;
        return false;
    }
};

/// Fundamental domain of `copies` translates for the monodromy slope action,
/// anchored at 0/1 and 1/0 on the two arcs cut out by the invariant directions.
inline SlopeDomain monodromy_domain(const std::string& word, int copies = 1) {
    require_monodromy_word(word);
    if (copies < 1) throw DomainError("monodromy_domain: copies must be positive");
    const SlopeMap m = slope_map(word);
    SlopeMap mk;
    for (int i = 0; i < copies; ++i) mk = m * mk;
    SlopeDomain d;
    for (Lattice s : {Lattice{0, 1}, Lattice{1, 0}}) d.arcs.push_back({s, mk(s)});
    return d;
}

struct TreePolicy {
    double trace_threshold = 1e6;
    int max_depth = 100000;
    std::size_t max_terms = 20000000;
    bool with_matrices = true;
    std::optional<SlopeDomain> domain;
};

struct TreeResult {
    std::vector<TreeRegion> regions;  ///< canonical preorder
    std::vector<PrunedEdge> pruned;
    bool budget_exhausted = false;
};

/// Walks the Farey tree from the roots 1/0 (beta = A^-1) and 0/1 (beta = B).
/// An edge (U, V) carries a positive or negative mediant: beta = VU or VU^-1.
inline TreeResult enumerate_tree(const Representation& rep, const TreePolicy& pol) {
    TreeResult res;
    const MarkovTriple& t = rep.triple;
    auto admit = [&](Lattice v) { return !pol.domain || pol.domain->contains(v); };
    if (admit({1, 0})) res.regions.push_back({{1, 0}, t.x, 0, std::abs(t.x), group_inverse(rep.A)});
    if (admit({0, 1})) res.regions.push_back({{0, 1}, t.y, 0, std::abs(t.y), rep.B});

    struct Node {
        Lattice a, b;
        cplx ta, tb, told;
        bool positive;
        int depth;
        double path_max;
        Mat2 U, V;
    };
    std::vector<Node> stack;
    const double root_max = std::max(std::abs(t.x), std::abs(t.y));
    stack.push_back({{1, 0}, {0, -1}, t.x, t.y, t.z, false, 1, root_max, rep.A, rep.B});
    stack.push_back({{1, 0}, {0, 1}, t.x, t.y, t.x * t.y - t.z, true, 1, root_max, rep.A, rep.B});
    while (!stack.empty()) {
        const Node n = stack.back();
        stack.pop_back();
        if (pol.domain && !pol.domain->meets_arc(n.a, n.b)) continue;
        const cplx tm = n.ta * n.tb - n.told;
        const double am = std::abs(tm);
        if (!(am <= pol.trace_threshold) || am > 1e120 || n.depth > pol.max_depth) {
            res.pruned.push_back({tm, std::min(std::abs(n.ta), std::abs(n.tb)), n.depth});
            continue;
        }
        if (res.regions.size() >= pol.max_terms) {
            res.budget_exhausted = true;
            break;
        }
        const Lattice m = n.a + n.b;
        const double pm = std::max(n.path_max, am);
        Mat2 beta, Ui, Vi, UV, VU;
        if (pol.with_matrices) {
            Ui = group_inverse(n.U);
            Vi = group_inverse(n.V);
            beta = n.positive ? n.V * n.U : n.V * Ui;
            UV = n.positive ? n.U * n.V : n.U * Vi;
            VU = beta;
        }
        if (admit(m)) res.regions.push_back({slope_of(m), tm, n.depth, pm, beta});
        // Children: (U, VU^{+-1}) spans (a, m); (UV^{+-1}, V) spans (m, b).
        stack.push_back({m, n.b, tm, n.tb, n.ta, n.positive, n.depth + 1, pm, UV, n.V});
        stack.push_back({n.a, m, n.ta, tm, n.tb, n.positive, n.depth + 1, pm, n.U, VU});
    }
    return res;
}

/// Farey parents of a slope: the two slopes spanning the tree edge whose mediant it is.
/// The roots 1/0 and 0/1 are each other's neighbors on both sides.
inline std::pair<Slope, Slope> farey_neighbors(const Slope& s) {
    const Slope c = canonical(s.p, s.q);
    if (c == Slope{1, 0}) return {{0, 1}, {0, 1}};
    if (c == Slope{0, 1}) return {{1, 0}, {1, 0}};
    const Lattice target = lattice(c);
    Lattice a{1, 0}, b = in_open_arc(target, {1, 0}, {0, 1}) ? Lattice{0, 1} : Lattice{0, -1};
    for (;;) {
        const Lattice m = a + b;
        if (same_slope(m, target)) return {slope_of(a), slope_of(b)};
        if (in_open_arc(target, a, m)) b = m;
        else a = m;
    }
}

/// All slopes of Farey depth <= max_depth in canonical preorder.
inline std::vector<Slope> farey_expand(int max_depth) {
    std::vector<Slope> out{{1, 0}, {0, 1}};
    struct E {
        Lattice a, b;
        int d;
    };
    std::vector<E> st{{{1, 0}, {0, -1}, 1}, {{1, 0}, {0, 1}, 1}};
    while (!st.empty()) {
        const E e = st.back();
        st.pop_back();
        if (e.d > max_depth) continue;
        const Lattice m = e.a + e.b;
        out.push_back(slope_of(m));
        st.push_back({m, e.b, e.d + 1});
        st.push_back({e.a, m, e.d + 1});
    }
    return out;
}

struct SlopeWord {
    cplx trace;  ///< by the trace recursion
    Mat2 beta;   ///< by matrix products
    int depth;
};

inline SlopeWord slope_word(const Representation& rep, const Slope& s) {
    const Slope c = canonical(s.p, s.q);
    const MarkovTriple& t = rep.triple;
    if (c == Slope{1, 0}) return {t.x, group_inverse(rep.A), 0};
    if (c == Slope{0, 1}) return {t.y, rep.B, 0};
    const Lattice target = lattice(c);
    const bool positive = in_open_arc(target, {1, 0}, {0, 1});
    Lattice a{1, 0}, b = positive ? Lattice{0, 1} : Lattice{0, -1};
    cplx ta = t.x, tb = t.y, told = positive ? t.x * t.y - t.z : t.z;
    Mat2 U = rep.A, V = rep.B;
    for (int depth = 1;; ++depth) {
        const Lattice m = a + b;
        const cplx tm = ta * tb - told;
        const Mat2 Ui = group_inverse(U), Vi = group_inverse(V);
        const Mat2 beta = positive ? V * U : V * Ui;
        const Mat2 uv = positive ? U * V : U * Vi;
        if (same_slope(m, target)) return {tm, beta, depth};
        if (std::abs(tm) > 1e120) throw DomainError("slope_word: trace overflow");
        if (in_open_arc(target, a, m)) {
            told = tb;
            b = m;
            tb = tm;
            V = beta;
        } else {
            told = ta;
            a = m;
            ta = tm;
            U = uv;
        }
    }
}

inline cplx trace_for_slope(const Representation& rep, const Slope& s) { return slope_word(rep, s).trace; }

/// The two ordered pants of a slope: (beta, alpha^-1 beta^-1) and (beta^-1 alpha^-1, beta).
inline std::pair<Pants2, Pants2> ordered_pants(const Mat2& alpha, const Mat2& beta) {
    return {make_pants(alpha, beta), make_pants(alpha, group_inverse(beta) * group_inverse(alpha))};
}

inline std::pair<Pants2, Pants2> pants_for_slope(const Representation& rep, const Slope& s) {
    return ordered_pants(rep.alpha, slope_word(rep, s).beta);
}

/// SU(2,1) image of an ordered cusp pants: (iota(-alpha), iota(-gamma), iota(beta)).
inline Pants3 embed_pants(const Pants2& p) {
    return make_pants(iota(-p.alpha), iota(p.beta));
}

}  // namespace mcshane
