#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "algebra.hpp"
#include "crossratio.hpp"
#include "enumeration.hpp"
#include "errors.hpp"
#include "pants.hpp"

namespace mcshane {

// ---------------------------------------------------------------------------
// Deterministic reduction.

/// Neumaier-compensated complex accumulator.
class NeumaierSum {
public:
    void add(cplx v) {
        re_.add(v.real());
        im_.add(v.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    struct Real {
        double s = 0.0, c = 0.0;
        void add(double x) {
            const double t = s + x;
            c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
            s = t;
        }
        double value() const { return s + c; }
    };
    Real re_, im_;
};

/// Evaluates f(0..n-1) into a pre-sized vector on `threads` workers. Results do
/// not depend on the thread count because each slot is written by one call.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, unsigned threads, F&& f) {
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errs(std::max(1u, threads));
    auto work = [&](unsigned w, unsigned stride) {
        try {
            for (std::size_t i = w; i < n; i += stride) out[i] = f(i);
        } catch (...) {
            errs[w] = std::current_exception();
        }
    };
    if (threads <= 1 || n < 64) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

// ---------------------------------------------------------------------------
// Reports.

enum class RouteSel { definitional, closed, both };

inline const char* to_string(RouteSel r) {
    switch (r) {
        case RouteSel::definitional: return "definitional";
        case RouteSel::closed: return "closed";
        case RouteSel::both: return "both";
    }
    return "?";
}

struct SumPolicy {
    double trace_threshold = 1e6;
    int max_depth = 100000;
    std::size_t max_terms = 20000000;
    RouteSel route = RouteSel::closed;
    unsigned threads = 1;
};

/// One slope's contribution: both ordered pants added together.
struct TermRow {
    Slope slope;
    cplx value;         ///< primary route
    cplx partial;       ///< running total through this row
    cplx alt{};         ///< other route when both are computed
    double trace_abs = 0.0;
    double path_max = 0.0;
};

struct Shell {
    double threshold;
    cplx partial;
    std::size_t terms;
};

struct IdentityReport {
    std::string identity;
    std::string rep;
    std::string route;
    std::uint64_t seed = 0;
    cplx target, total, residual;
    double residual_mod2pi = 0.0;
    std::size_t terms = 0;  ///< ordered pants summed
    double tail_bound = std::numeric_limits<double>::infinity();
    bool diverged = false;
    std::optional<cplx> alt_total;   ///< definitional total when route = both
    double max_term_gap = 0.0;       ///< largest per-pants route difference
    std::vector<TermRow> rows;
    std::vector<Shell> shells;       ///< mapping torus only
    cplx per_slope_total{};          ///< mapping torus only: one pants per slope
    double fd_gap = 0.0;             ///< SU(2,1) cusp: closed vs derivative ratio, first 20 slopes
    double seconds = 0.0;
};

namespace detail {

inline void finish(IdentityReport& r, const std::vector<TermRow>& rows) {
    NeumaierSum s, alt;
    r.rows = rows;
    for (auto& row : r.rows) {
        s.add(row.value);
        alt.add(row.alt);
        row.partial = s.value();
    }
    r.total = s.value();
    if (r.route == "both") r.alt_total = alt.value();
    r.residual = r.target - r.total;
    r.residual_mod2pi = mod2pi_abs(r.residual);
    if (!std::isfinite(r.total.real()) || !std::isfinite(r.total.imag())) r.diverged = true;
}

/// sum_d 2^d h(|w| (m-1)^d) over a pruned subtree; infinite when it does not contract.
template <class H>
double subtree_bound(const PrunedEdge& e, H&& h) {
    const double g = e.side_min - 1.0;
    if (g * g <= 2.0) return std::numeric_limits<double>::infinity();
    double x = std::abs(e.trace), total = 0.0, mult = 1.0;
    for (int d = 0; d < 400; ++d) {
        const double v = h(x);
        if (!std::isfinite(v) || v < 0.0) return std::numeric_limits<double>::infinity();
        total += mult * v;
        if (mult * v < 1e-30 * std::max(total, 1e-300)) break;
        mult *= 2.0;
        x *= g;
    }
    return total;
}

template <class H>
double tail_bound(const std::vector<PrunedEdge>& pruned, H&& h) {
    double b = 0.0;
    for (const auto& e : pruned) b += subtree_bound(e, h);
    return b;
}

/// Bound on the two ordered cusp terms of a slope with trace modulus X.
inline double h_cusp(double X) {
    const double k = X - 1.0;
    return k * k > 1.0 ? 2.0 / (k * k - 1.0) : std::numeric_limits<double>::infinity();
}

inline double h_boundary(double X, cplx ka) {
    const double k = X - 1.0;
    const double den = k * k - std::abs(ka);
    return den > 0.0 ? 2.0 * std::abs(ka - 1.0 / ka) / den : std::numeric_limits<double>::infinity();
}

/// W of an ordered cusp pants from the slope trace t: 1/(1 - (tr alpha/2) k(t)^2).
inline cplx closed_cusp_term(cplx t, cplx tr_alpha) {
    const cplx k = sl2_big_eigenvalue(t);
    const cplx lb = 2.0 * std::log(k), lg = 2.0 * std::log(-(tr_alpha / 2.0) * k);
    return closed_W_sl2(lb, lg);
}

inline cplx closed_boundary_term(cplx t, cplx ka) {
    const cplx k = sl2_big_eigenvalue(t);
    return std::log((ka - k * k) / (1.0 / ka - k * k));
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline void require_torus(const Representation& rep, bool cusp) {
    if (rep.cusp != cusp)
        throw DomainError(cusp ? "identity: representation is not cusped" : "identity: representation is cusped");
}

}  // namespace detail

/// Sum of W over ordered pants of a cusped torus (Fuchsian or quasi-Fuchsian); target 1.
inline IdentityReport sum_cusp_identity(const Representation& rep, const SumPolicy& pol, const std::string& label = "") {
    const auto t0 = std::chrono::steady_clock::now();
    detail::require_torus(rep, true);
    if (rep.target == Group::SU21) throw DomainError("sum_cusp_identity: use sum_su21_cusp for SU(2,1)");
    const bool need_def = pol.route != RouteSel::closed;
    const TreeResult tree =
        enumerate_tree(rep, {pol.trace_threshold, pol.max_depth, pol.max_terms, need_def, std::nullopt});
    const cplx tra = rep.alpha.trace();
    struct Out {
        cplx closed, def;
        double gap;
    };
    const auto vals = parallel_map<Out>(tree.regions.size(), pol.threads, [&](std::size_t i) {
        const TreeRegion& r = tree.regions[i];
        Out o{2.0 * detail::closed_cusp_term(r.trace, tra), 0.0, 0.0};
        if (need_def) {
            const auto [p1, p2] = ordered_pants(rep.alpha, r.beta);
            const cplx w1 = gap_W(p1).value, w2 = gap_W(p2).value;
            o.def = w1 + w2;
            const cplx c1 = closed_W(p1).value, c2 = closed_W(p2).value;
            o.gap = std::max(std::abs(w1 - c1), std::abs(w2 - c2));
        }
        return o;
    });
    IdentityReport rpt;
    rpt.identity = "cusp identity: sum W = 1";
    rpt.rep = label;
    rpt.route = to_string(pol.route);
    rpt.target = 1.0;
    std::vector<TermRow> rows(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const auto& r = tree.regions[i];
        const cplx primary = pol.route == RouteSel::definitional ? vals[i].def : vals[i].closed;
        rows[i] = {r.slope, primary, 0.0, pol.route == RouteSel::both ? vals[i].def : cplx(0.0), std::abs(r.trace),
                   r.path_max};
        rpt.max_term_gap = std::max(rpt.max_term_gap, vals[i].gap);
    }
    rpt.terms = 2 * rows.size();
    detail::finish(rpt, rows);
    rpt.tail_bound = detail::tail_bound(tree.pruned, detail::h_cusp);
    rpt.diverged = rpt.diverged || tree.budget_exhausted;
    rpt.seconds = detail::seconds_since(t0);
    return rpt;
}

/// Sum of G over ordered pants of a holed torus; target the complex length of alpha.
inline IdentityReport sum_boundary_identity(const Representation& rep, const SumPolicy& pol,
                                            const std::string& label = "") {
    const auto t0 = std::chrono::steady_clock::now();
    detail::require_torus(rep, false);
    const bool need_def = pol.route != RouteSel::closed;
    const TreeResult tree =
        enumerate_tree(rep, {pol.trace_threshold, pol.max_depth, pol.max_terms, need_def, std::nullopt});
    const cplx ka = sl2_big_eigenvalue(rep.alpha.trace());
    struct Out {
        cplx closed, def;
        double gap;
    };
    const auto vals = parallel_map<Out>(tree.regions.size(), pol.threads, [&](std::size_t i) {
        const TreeRegion& r = tree.regions[i];
        Out o{2.0 * detail::closed_boundary_term(r.trace, ka), 0.0, 0.0};
        if (need_def) {
            const auto [p1, p2] = ordered_pants(rep.alpha, r.beta);
            const cplx g1 = gap_G(p1).value, g2 = gap_G(p2).value;
            o.def = g1 + g2;
            const cplx c1 = closed_G_sl2(p1).value, c2 = closed_G_sl2(p2).value;
            o.gap = std::max(mod2pi_abs(g1 - c1), mod2pi_abs(g2 - c2));
        }
        return o;
    });
    IdentityReport rpt;
    rpt.identity = "boundary identity: sum G = length of the boundary";
    rpt.rep = label;
    rpt.route = to_string(pol.route);
    rpt.target = sl2_complex_length(rep.alpha);
    std::vector<TermRow> rows(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const auto& r = tree.regions[i];
        const cplx primary = pol.route == RouteSel::definitional ? vals[i].def : vals[i].closed;
        rows[i] = {r.slope, primary, 0.0, pol.route == RouteSel::both ? vals[i].def : cplx(0.0), std::abs(r.trace),
                   r.path_max};
        rpt.max_term_gap = std::max(rpt.max_term_gap, vals[i].gap);
    }
    rpt.terms = 2 * rows.size();
    detail::finish(rpt, rows);
    rpt.tail_bound = detail::tail_bound(tree.pruned, [&](double X) { return detail::h_boundary(X, ka); });
    rpt.diverged = rpt.diverged || tree.budget_exhausted;
    rpt.seconds = detail::seconds_since(t0);
    return rpt;
}

/// Cusp identity for the C-Fuchsian image in SU(2,1). The closed route uses the
/// axis configuration in mu, nu; the definitional route the frame-free W_alpha.
inline IdentityReport sum_su21_cusp(const Representation& rep, const SumPolicy& pol, const std::string& label = "") {
    const auto t0 = std::chrono::steady_clock::now();
    if (rep.target != Group::SU21) throw DomainError("sum_su21_cusp: representation is not in SU(2,1)");
    const TreeResult tree =
        enumerate_tree(rep, {pol.trace_threshold, pol.max_depth, pol.max_terms, true, std::nullopt});
    struct Out {
        cplx closed, def;
        double gap, fd_gap;
    };
    const auto vals = parallel_map<Out>(tree.regions.size(), pol.threads, [&](std::size_t i) {
        const auto [p1, p2] = ordered_pants(rep.alpha, tree.regions[i].beta);
        Out o{0.0, 0.0, 0.0, 0.0};
        for (const Pants2* p : {&p1, &p2}) {
            const Pants3 q = embed_pants(*p);
            const cplx mu = su21_eigendata(q.gamma).lambda, nu = su21_eigendata(q.beta).lambda;
            const cplx c = closed_W_su21(mu, nu);
            o.closed += c;
            if (pol.route != RouteSel::closed || i < 20) {
                const cplx w = gap_W(q, rep.chain_ref).value;
                o.def += w;
                o.gap = std::max(o.gap, std::abs(w - c));
            }
            if (i < 20) {
                const Vec3 gm = su21_eigendata(q.gamma).repelling, bp = su21_eigendata(q.beta).attracting;
                o.fd_gap = std::max(o.fd_gap, std::abs(w_alpha_fd(q.alpha, gm, bp, gm, rep.chain_ref) - c));
            }
        }
        return o;
    });
    IdentityReport rpt;
    rpt.identity = "SU(2,1) cusp identity: sum W = 1";
    rpt.rep = label;
    rpt.route = to_string(pol.route);
    rpt.target = 1.0;
    std::vector<TermRow> rows(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const auto& r = tree.regions[i];
        const cplx primary = pol.route == RouteSel::definitional ? vals[i].def : vals[i].closed;
        rows[i] = {r.slope, primary, 0.0, pol.route == RouteSel::both ? vals[i].def : cplx(0.0), std::abs(r.trace),
                   r.path_max};
        rpt.max_term_gap = std::max(rpt.max_term_gap, vals[i].gap);
        rpt.fd_gap = std::max(rpt.fd_gap, vals[i].fd_gap);
    }
    rpt.terms = 2 * rows.size();
    detail::finish(rpt, rows);
    rpt.tail_bound = detail::tail_bound(tree.pruned, detail::h_cusp);
    rpt.diverged = rpt.diverged || tree.budget_exhausted;
    rpt.seconds = detail::seconds_since(t0);
    return rpt;
}

struct MappingTorusPolicy {
    SumPolicy sum;
    std::vector<double> shells{1e3, 1e4, 1e5, 1e6, 1e7};
    int copies = 1;
};

/// Sum of W over one monodromy orbit representative per slope; target 0.
/// `total` counts both ordered pants of each slope, `per_slope_total` one.
inline IdentityReport sum_mapping_torus(const Representation& rep, const MappingTorusPolicy& mp,
                                        const std::string& label = "") {
    const auto t0 = std::chrono::steady_clock::now();
    if (rep.flavor != Flavor::fibered) throw DomainError("sum_mapping_torus: representation is not fibered");
    if (mp.shells.empty()) throw DomainError("sum_mapping_torus: no shells");
    const SumPolicy& pol = mp.sum;
    const double top = *std::max_element(mp.shells.begin(), mp.shells.end());
    const bool need_def = pol.route != RouteSel::closed;
    const TreeResult tree =
        enumerate_tree(rep, {top, pol.max_depth, pol.max_terms, need_def, monodromy_domain(rep.monodromy, mp.copies)});
    const cplx tra = rep.alpha.trace();
    struct Out {
        cplx closed, def;
        double gap;
    };
    const auto vals = parallel_map<Out>(tree.regions.size(), pol.threads, [&](std::size_t i) {
        const TreeRegion& r = tree.regions[i];
        Out o{2.0 * detail::closed_cusp_term(r.trace, tra), 0.0, 0.0};
        if (need_def) {
            const auto [p1, p2] = ordered_pants(rep.alpha, r.beta);
            const cplx w1 = gap_W(p1).value, w2 = gap_W(p2).value;
            o.def = w1 + w2;
            o.gap = std::max(std::abs(w1 - closed_W(p1).value), std::abs(w2 - closed_W(p2).value));
        }
        return o;
    });
    IdentityReport rpt;
    rpt.identity = "mapping torus identity: sum W over a fundamental domain = 0";
    rpt.rep = label;
    rpt.route = to_string(pol.route);
    rpt.target = 0.0;
    std::vector<TermRow> rows(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const auto& r = tree.regions[i];
        const cplx primary = pol.route == RouteSel::definitional ? vals[i].def : vals[i].closed;
        rows[i] = {r.slope, primary, 0.0, pol.route == RouteSel::both ? vals[i].def : cplx(0.0), std::abs(r.trace),
                   r.path_max};
        rpt.max_term_gap = std::max(rpt.max_term_gap, vals[i].gap);
    }
    rpt.terms = 2 * rows.size();
    detail::finish(rpt, rows);
    rpt.per_slope_total = rpt.total / 2.0;
    std::vector<double> th = mp.shells;
    std::sort(th.begin(), th.end());
    for (double T : th) {
        NeumaierSum s;
        std::size_t n = 0;
        for (const auto& row : rpt.rows)
            if (row.path_max <= T) {
                s.add(row.value);
                ++n;
            }
        rpt.shells.push_back({T, s.value(), 2 * n});
    }
    rpt.tail_bound = detail::tail_bound(tree.pruned, detail::h_cusp);
    rpt.diverged = rpt.diverged || tree.budget_exhausted;
    rpt.seconds = detail::seconds_since(t0);
    return rpt;
}

/// |partial| strictly decreasing over the last k shells.
inline bool shells_shrinking(const IdentityReport& r, std::size_t k = 5) {
    if (r.shells.size() < k) return false;
    for (std::size_t i = r.shells.size() - k + 1; i < r.shells.size(); ++i)
        if (!(std::abs(r.shells[i].partial) < std::abs(r.shells[i - 1].partial))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Telescoping of the boundary identity on a Fuchsian holed torus.

struct TelescopeReport {
    double shift_residual = 0.0;  ///< max |log B(alpha z) - log B(z) + l(alpha)|
    double gap_residual = 0.0;    ///< max |log B(g-) - log B(b+) - G(P)|
    double width_sum = 0.0;       ///< sum of the checked gap values
    double length = 0.0;          ///< l(alpha)
    std::size_t pants = 0;
};

/// B(z) = [alpha+, z, alpha-, zeta] for the reference point zeta.
inline TelescopeReport telescope_check(const Representation& rep, const Vec2& zeta, const std::vector<Vec2>& zs,
                                       std::size_t n_slopes) {
    if (rep.cusp || rep.target != Group::SL2R) throw DomainError("telescope_check: needs a real holed torus");
    const FixedPoints2 fa = sl2_fixed_points(rep.alpha);
    auto logB = [&](const Vec2& z) { return std::log(sl2_crossratio(fa.attracting, z, fa.repelling, zeta)); };
    TelescopeReport r;
    r.length = sl2_complex_length(rep.alpha).real();
    for (const auto& z : zs)
        r.shift_residual = std::max(r.shift_residual,
                                    mod2pi_abs(logB(mobius(rep.alpha, z)) - logB(z) + cplx(r.length)));
    const auto slopes = farey_expand(6);
    for (std::size_t i = 0; i < slopes.size() && r.pants < 2 * n_slopes; ++i) {
        const auto [p1, p2] = pants_for_slope(rep, slopes[i]);
        for (const Pants2* p : {&p1, &p2}) {
            const cplx g = gap_G(*p).value;
            const cplx d = logB(ends(p->gamma).minus) - logB(ends(p->beta).plus);
            r.gap_residual = std::max(r.gap_residual, mod2pi_abs(d - g));
            r.width_sum += g.real();
            ++r.pants;
        }
    }
    return r;
}

}  // namespace mcshane
