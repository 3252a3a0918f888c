#include <gtest/gtest.h>

#include "mcshane/enumeration.hpp"
#include "mcshane/pants.hpp"
#include "mcshane/props.hpp"

using namespace mcshane;

namespace {
Mat3 random_loxodromic(Rng& g) {
    const Mat3 F = random_su21(g);
    return F * E(cplx(uniform(g, 0.3, 1.5), uniform(g, -2.0, 2.0))) * su21_inverse(F);
}

// Loxodromic pants in SU(2,1) with all three boundaries well separated.
Pants3 random_su21_pants(Rng& g) {
    for (;;) {
        const Mat3 a = random_loxodromic(g), b = random_loxodromic(g);
        const Pants3 p = make_pants(a, b);
        try {
            if (classify_su21(p.gamma) != IsoClass::loxodromic) continue;
            if (std::abs(su21_eigendata(p.gamma).lambda.real()) < 0.05) continue;
            if (max_abs(p.alpha) > 1e3 || max_abs(p.beta) > 1e3 || max_abs(p.gamma) > 1e3) continue;
            normalize_su21(p);
            return p;
        } catch (const DomainError&) {
        }
    }
}

double rel_mod2pi(cplx a, cplx b) { return mod2pi_abs(a - b) / std::max(1.0, std::abs(a)); }
}  // namespace

TEST(Pants, RelationAndOrderedPair) {
    const Representation r = build_markov(3.0, 3.0, 3.0);
    const auto [p, q] = pants_for_slope(r, {1, 2});
    EXPECT_LE(relation_residual(p), 1e-12);
    EXPECT_LE(relation_residual(q), 1e-12);
    EXPECT_EQ(p.alpha_kind, AlphaKind::cusp);
    EXPECT_LE(max_abs_diff(q.gamma, p.beta), 1e-10);
}

TEST(GapG, CuspReportsZeroLimit) {
    const Representation r = build_markov(3.0, 3.0, 3.0);
    const auto pr = pants_for_slope(r, {1, 0});
    try {
        gap_G(pr.first);
        FAIL();
    } catch (const DegenerateError& e) {
        EXPECT_EQ(e.limit, "0");
    }
    EXPECT_THROW(gap_Gr(pr.first), DegenerateError);
}

TEST(GapG, HoledTorusClosedMatchesDefinitional) {
    const Representation r = build_markov(3.0, 3.0, 4.0);
    ASSERT_FALSE(r.cusp);
    for (const Slope s : {Slope{1, 0}, Slope{0, 1}, Slope{1, 1}, Slope{2, 3}, Slope{-3, 5}}) {
        const auto [p, q] = pants_for_slope(r, s);
        for (const Pants2* x : {&p, &q}) {
            const cplx d = gap_G(*x).value, c = closed_G_sl2(*x).value;
            EXPECT_LT(rel_mod2pi(d, c), 1e-9) << to_string(s);
            EXPECT_GT(c.real(), 0.0);
        }
    }
}

TEST(GapG, ConjugationInvariance) {
    const Representation r = build_markov(3.0, 3.0, 4.0);
    const auto pr = pants_for_slope(r, {1, 1});
    Rng g(31);
    for (int k = 0; k < 20; ++k) {
        const Mat2 h = random_sl2c(g), hi = h.inverse();
        Pants2 c = pr.first;
        c.alpha = h * c.alpha * hi;
        c.beta = h * c.beta * hi;
        c.gamma = h * c.gamma * hi;
        EXPECT_LT(rel_mod2pi(gap_G(c).value, gap_G(pr.first).value), 1e-8);
    }
}

TEST(GapGr, RealPositiveForFuchsianAndInvariant) {
    const Representation r = build_markov(3.0, 3.0, 4.0);
    Rng g(38);
    for (const Slope sl : {Slope{1, 0}, Slope{1, 2}, Slope{-2, 3}}) {
        Pants2 b = pants_for_slope(r, sl).first;
        b.kind = PantsKind::boundary;
        const cplx gr = gap_Gr(b).value;
        EXPECT_LT(mod2pi_abs(cplx(0.0, gr.imag())), 1e-9);
        const Mat2 h = random_sl2c(g), hi = h.inverse();
        Pants2 c = b;
        c.alpha = h * c.alpha * hi;
        c.beta = h * c.beta * hi;
        c.gamma = h * c.gamma * hi;
        EXPECT_LT(rel_mod2pi(gap_Gr(c).value, gr), 1e-8);
    }
}

TEST(ClosedW, SL2Values) {
    EXPECT_NEAR(std::abs(closed_W_sl2(0.0, 0.0) - 0.5), 0.0, 1e-15);
    const double l = 2.0 * std::acosh(1.5);
    EXPECT_NEAR(closed_W_sl2(l, l).real(), 0.1273220, 1e-7);
    EXPECT_NEAR(std::abs(closed_Wr_sl2(0.0, 1.3)), 0.0, 1e-15);
}

TEST(ClosedW, MatchesDefinitionalOnCuspedTori) {
    for (const auto& rep : {build_markov(3.0, 3.0, 3.0), build_quasifuchsian(3.0, cplx(3.0, 0.1))}) {
        for (const Slope s : {Slope{1, 0}, Slope{0, 1}, Slope{1, 1}, Slope{3, 2}, Slope{-1, 4}}) {
            const auto [p, q] = pants_for_slope(rep, s);
            for (const Pants2* x : {&p, &q})
                EXPECT_LT(rel(gap_W(*x).value, closed_W(*x).value), 1e-10) << to_string(s);
        }
    }
}

TEST(ClosedW, FiniteDifferenceDefinition) {
    const Representation rep = build_markov(3.0, 3.0, 3.0);
    const auto [p, q] = pants_for_slope(rep, {1, 2});
    const auto b = ends(p.beta), g = ends(p.gamma);
    const cplx fd = w_alpha_fd(p.alpha, g.minus, b.plus, g.minus);
    EXPECT_LT(rel(fd, gap_W(p).value), 1e-7);
}

TEST(ClosedW, TwoOrderedPantsSumToTheSlopeTerm) {
    const Representation rep = build_markov(3.0, 3.0, 3.0);
    const auto [p, q] = pants_for_slope(rep, {1, 0});
    const cplx s = closed_W(p).value + closed_W(q).value;
    EXPECT_NEAR(s.real(), 2.0 * 0.1273220, 2e-7);
    EXPECT_NEAR(s.imag(), 0.0, 1e-12);
}

TEST(Shear, RealForFuchsian) {
    const Representation rep = build_markov(3.0, 3.0, 3.0);
    for (const Slope s : {Slope{1, 0}, Slope{1, 1}, Slope{2, 5}}) {
        const Shear sh = shear_coords(pants_for_slope(rep, s).first);
        for (cplx v : {sh.A, sh.B, sh.C}) {
            EXPECT_LT(std::abs(v.imag()), 1e-9 * std::max(1.0, std::abs(v)));
            EXPECT_TRUE(std::isfinite(v.real()));
        }
    }
}

TEST(Su21, EmbeddedCuspPantsMatchPlanarW) {
    const Representation rep = embed_cfuchsian(build_markov(3.0, 3.0, 3.0));
    const Representation plane = build_markov(3.0, 3.0, 3.0);
    for (const Slope s : {Slope{1, 0}, Slope{0, 1}, Slope{1, 1}, Slope{2, 3}}) {
        const auto [p, q] = pants_for_slope(plane, s);
        for (const Pants2* x : {&p, &q}) {
            const Pants3 e = embed_pants(*x);
            EXPECT_LE(relation_residual(e), 1e-10);
            EXPECT_LT(su21_form_residual(e.alpha), 1e-12);
            EXPECT_LT(rel(gap_W(e, rep.chain_ref).value, closed_W(*x).value), 1e-9) << to_string(s);
        }
    }
}

TEST(Su21, ClosedGMatchesDefinitional) {
    Rng g(32);
    int checked = 0;
    for (int k = 0; k < 40; ++k) {
        const Pants3 p = random_su21_pants(g);
        const Su21Normal n = normalize_su21(p);
        require_normal(n);
        const cplx c = su21_gap_G(n.lambda, n.mu, n.nu, pp_from_frame(n.Q));
        Pants3 q;
        q.alpha = n.alpha;
        q.beta = n.beta;
        q.gamma = n.gamma;
        const cplx d = gap_G(q).value;
        EXPECT_LT(rel_mod2pi(c, d), 1e-8);
        EXPECT_LT(rel_mod2pi(d, gap_G(p).value), 1e-8);
        ++checked;
    }
    EXPECT_EQ(checked, 40);
}

TEST(Su21, ClosedGrMatchesDefinitional) {
    Rng g(33);
    for (int k = 0; k < 40; ++k) {
        Pants3 p = random_su21_pants(g);
        p.kind = PantsKind::boundary;
        const Su21Normal n = normalize_su21(p);
        const cplx c = su21_gap_Gr(n.lambda, n.mu, n.nu, n.Q);
        EXPECT_LT(rel_mod2pi(c, gap_Gr(p).value), 1e-8);
    }
}

TEST(Su21, FrameInvariantsAreCrossRatios) {
    Rng g(34);
    for (int k = 0; k < 40; ++k) {
        const Su21Normal n = normalize_su21(random_su21_pants(g));
        const EigenData eg = su21_eigendata(n.gamma);
        const PPInvariants x = pp_invariants(eg.attracting, Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 0.0, 1.0}, eg.repelling);
        const PPInvariants y = pp_from_frame(n.Q);
        EXPECT_LT(rel(x.X1, y.X1), 1e-8);
        EXPECT_LT(rel(x.X2, y.X2), 1e-8);
        EXPECT_LT(rel(x.X3, y.X3), 1e-8);
    }
}

TEST(Su21, BetaThroughRAndThroughQ) {
    Rng g(35);
    for (int k = 0; k < 40; ++k) {
        const Su21Normal n = normalize_su21(random_su21_pants(g));
        const double sc = std::max(1.0, max_abs(n.beta));
        EXPECT_LT(max_abs_diff(beta_from_R(n.R, n.nu), n.beta) / sc, 1e-9);
        EXPECT_LT(max_abs_diff(beta_from_Q(n.Q, n.lambda, n.mu), n.beta) / sc, 1e-9);
        const cplx ratio = std::conj(n.R(0, 0)) / std::conj(n.R(2, 0));
        EXPECT_LT(rel(su21_top_bottom_ratio(n.lambda, n.mu, n.nu, n.Q), ratio), 1e-8);
    }
}

TEST(Su21, GrNumeratorExpansion) {
    Rng g(36);
    for (int k = 0; k < 40; ++k) {
        const Su21Normal n = normalize_su21(random_su21_pants(g));
        const Su21GrParts parts = su21_Gr_parts(n.lambda, n.mu, n.nu, n.Q);
        const cplx e = su21_Gr_numerator_expansion(n.lambda, n.mu, n.nu, pp_from_frame(n.Q));
        EXPECT_LT(rel(parts.N1 * parts.N2, e), 1e-8);
        const cplx num = su21_G_parts(n.lambda, n.mu, n.nu, pp_from_frame(n.Q)).num;
        EXPECT_NEAR(parts.den.real(), std::norm(num), 1e-9 * std::max(1.0, std::norm(num)));
    }
}

TEST(CuspConfig, FiveIdentitiesAndGauge) {
    Rng g(37);
    for (int k = 0; k < 200; ++k) {
        const double m = uniform(g, -2.0, 2.0), th = uniform(g, -1.0, 1.0);
        const cplx mu(m, th), nu(uniform(g, -2.0, 2.0), -th + (k % 2 ? pi : 0.0));
        CuspConfig c;
        try {
            c = su21_cusp_config(mu, nu, uniform(g, 0.5, 3.0), uniform(g, -1.0, 1.0));
        } catch (const DegenerateError&) {
            continue;
        }
        for (double r : five_identities(c)) EXPECT_LT(r, 1e-8 * std::max(1.0, std::abs(std::exp(mu)) + std::abs(std::exp(nu))));
        EXPECT_NEAR(c.W(), closed_W_su21(mu, nu).real(), 1e-9);
        const CuspConfig d = su21_cusp_config(mu, nu, 2.0 * c.t, c.t2 + 1.0);
        EXPECT_NEAR(d.W(), c.W(), 1e-9);
        EXPECT_NEAR(d.Wr(), c.Wr(), 1e-9);
    }
}

TEST(CuspConfig, RealMuWithHalfTurn) {
    for (double m : {0.0, 0.3, 1.2}) {
        const cplx mu(m, 0.0), nu(m, pi);
        EXPECT_LT(std::abs(closed_W_su21(mu, nu) - 1.0 / (1.0 + std::exp(2.0 * m))), 1e-14);
        EXPECT_NEAR(su21_cusp_config(mu, nu, 1.0).W(), 1.0 / (1.0 + std::exp(2.0 * m)), 1e-14);
    }
}

TEST(CuspConfig, DegenerateAndInconsistent) {
    try {
        closed_W_su21(0.7, 0.7);
        FAIL();
    } catch (const DegenerateError& e) {
        EXPECT_EQ(e.limit, "inf");
    }
    EXPECT_THROW(su21_cusp_config(cplx(0.2, 0.3), cplx(0.2, 0.3), 1.0), DomainError);
    EXPECT_THROW(su21_cusp_config(cplx(0.2, 0.0), cplx(0.2, pi), 0.0), DomainError);
}
