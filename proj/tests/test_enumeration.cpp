#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "mcshane/enumeration.hpp"
#include "mcshane/props.hpp"

using namespace mcshane;

TEST(Farey, AdjacencyAndMediant) {
    EXPECT_TRUE(farey_adjacent({1, 0}, {0, 1}));
    EXPECT_TRUE(farey_adjacent({1, 2}, {1, 3}));
    EXPECT_TRUE(farey_adjacent({1, 2}, {2, 3}));
    EXPECT_FALSE(farey_adjacent({1, 3}, {2, 3}));
    EXPECT_EQ(mediant({1, 2}, {1, 3}), (Slope{2, 5}));
    EXPECT_EQ(canonical(-2, -4), canonical(1, 2));
    EXPECT_EQ(canonical(0, -3), (Slope{0, 1}));
    EXPECT_THROW(canonical(0, 0), DomainError);
}

TEST(Farey, ExpansionIsDistinctCoprimeAndAdjacent) {
    const auto s = farey_expand(10);
    ASSERT_GE(s.size(), 100u);
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    for (std::size_t i = 0; i < s.size(); ++i) {
        EXPECT_EQ(std::gcd(s[i].p, s[i].q), 1);
        EXPECT_TRUE(seen.insert({s[i].p, s[i].q}).second) << to_string(s[i]);
        if (i < 2) continue;
        const auto [a, b] = farey_neighbors(s[i]);
        EXPECT_TRUE(farey_adjacent(a, b));
        EXPECT_TRUE(same_slope(lattice(mediant(a, b)), lattice(s[i])) ||
                    same_slope({a.p - b.p, a.q - b.q}, lattice(s[i])));
    }
}

TEST(Farey, OpenArcs) {
    EXPECT_TRUE(in_open_arc({1, 1}, {1, 0}, {0, 1}));
    EXPECT_FALSE(in_open_arc({1, -1}, {1, 0}, {0, 1}));
    EXPECT_FALSE(in_open_arc({1, 0}, {1, 0}, {0, 1}));
    EXPECT_TRUE(arcs_intersect({1, 0}, {0, 1}, {2, 1}, {1, 2}));
    EXPECT_FALSE(arcs_intersect({1, 0}, {1, 1}, {1, 2}, {0, 1}));
}

TEST(Markov, TraceOfSlopes) {
    const Representation r = build_markov(3.0, 3.0, 3.0);
    EXPECT_NEAR(std::abs(trace_for_slope(r, {1, 2}) - 6.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(trace_for_slope(r, {1, 1}) - 3.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(trace_for_slope(r, {-1, 1}) - 6.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(trace_for_slope(r, {1, 3}) - 15.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(trace_for_slope(r, {2, 5}) - 87.0), 0.0, 1e-12);
}

TEST(Markov, TreePreservesMarkovEquationAndMatricesMatchTraces) {
    const Representation r = build_markov(3.0, 3.0, 3.0);
    TreePolicy pol;
    pol.trace_threshold = 1e12;
    pol.max_depth = 8;
    const TreeResult t = enumerate_tree(r, pol);
    for (const auto& reg : t.regions) {
        EXPECT_LT(std::abs(reg.beta.trace() - reg.trace), 1e-9 * std::abs(reg.trace)) << to_string(reg.slope);
        EXPECT_NEAR(std::abs(reg.trace - trace_for_slope(r, reg.slope)), 0.0, 1e-9 * std::abs(reg.trace));
        EXPECT_NEAR(reg.trace.imag(), 0.0, 0.0);
        EXPECT_NEAR(std::round(reg.trace.real()), reg.trace.real(), 1e-6);
    }
    // Triples along a Farey path of depth 30 stay on the Markov surface.
    MarkovTriple m{3.0, 3.0, 3.0};
    for (int k = 0; k < 30; ++k) {
        m = k % 2 == 0 ? flip_z(m) : flip_x(m);
        EXPECT_LT(std::abs(m.markov_residual()), 1e-12 * m.scale());
    }
}

TEST(Markov, VietaInvolutions) {
    const MarkovTriple t{cplx(3.0, 0.2), 4.0, cplx(-1.0, 0.5)};
    for (auto f : {flip_x, flip_y, flip_z}) {
        const MarkovTriple u = f(f(t));
        EXPECT_LT(std::abs(u.x - t.x) + std::abs(u.y - t.y) + std::abs(u.z - t.z), 1e-12);
        EXPECT_LT(std::abs(f(t).boundary_trace() - t.boundary_trace()), 1e-10);
    }
}

TEST(Builders, FuchsianQuasifuchsianHoled) {
    const Representation f = build_fuchsian(3.0, 3.0, 3.0);
    EXPECT_EQ(f.target, Group::SL2R);
    EXPECT_TRUE(f.cusp);
    EXPECT_NEAR(std::abs(f.alpha.trace() + 2.0), 0.0, 1e-12);
    EXPECT_EQ(classify_sl2(f.alpha), IsoClass::parabolic);
    EXPECT_THROW(build_fuchsian(3.0, 3.0, 4.0), DomainError);
    EXPECT_THROW(build_fuchsian(1.0, 3.0, 3.0), DomainError);

    const Representation q = build_quasifuchsian(3.0, cplx(3.0, 0.1));
    EXPECT_EQ(q.flavor, Flavor::quasifuchsian);
    EXPECT_EQ(q.target, Group::SL2C);
    EXPECT_LT(std::abs(q.triple.markov_residual()), 1e-12 * q.triple.scale());
    // The smaller root continues the Fuchsian value 3.
    EXPECT_LT(std::abs(q.triple.z - 3.0), 0.2);
    const Representation ql = build_quasifuchsian(3.0, cplx(3.0, 0.1), true);
    EXPECT_GT(std::abs(ql.triple.z - 3.0), 1.0);

    const Representation h = build_markov(3.0, 3.0, 4.0);
    EXPECT_FALSE(h.cusp);
    EXPECT_NEAR(std::abs(h.alpha.trace() - h.triple.boundary_trace()), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(h.alpha.trace() + 4.0), 0.0, 1e-12);
    EXPECT_NEAR(sl2_complex_length(h.alpha).real(), 2.0 * std::acosh(2.0), 1e-12);
}

TEST(Builders, EmbeddingPreservesFormAndPeriods) {
    const Representation f = build_fuchsian(3.0, 3.0, 3.0);
    const Representation e = embed_cfuchsian(f);
    EXPECT_EQ(e.target, Group::SU21);
    for (const Mat2* m : {&f.A, &f.B, &f.alpha}) {
        EXPECT_LT(su21_form_residual(iota(*m)), 1e-12);
        EXPECT_NEAR(std::abs(iota(*m).det() - 1.0), 0.0, 1e-12);
    }
    EXPECT_LT(max_abs_diff(iota(f.A * f.B), iota(f.A) * iota(f.B)), 1e-12);
    const Vec2 y = point2(0.37);
    for (const Mat2* m : {&f.A, &f.B}) {
        EXPECT_TRUE(projectively_equal(iota(mobius(*m, y)), iota(*m) * iota(y), 1e-12));
        EXPECT_LT(mod2pi_abs(period(iota(*m), iota(y)) - period(*m, y)), 1e-10);
    }
    EXPECT_TRUE(is_null(iota(y)));
}

TEST(Fibered, RLCharacter) {
    const MarkovTriple t = fibered_character("RL");
    const cplx z0(1.5, std::sqrt(3.0) / 2.0);
    // Up to complex conjugation of the whole triple.
    const cplx w = t.x.imag() > 0 ? z0 : std::conj(z0);
    EXPECT_LT(std::abs(t.x - w), 1e-10);
    EXPECT_LT(std::abs(t.y - std::conj(w)), 1e-10);
    EXPECT_LT(std::abs(t.z - w), 1e-10);
    const MarkovTriple u = apply_monodromy("RL", t);
    EXPECT_LT(std::abs(u.x - t.x) + std::abs(u.y - t.y) + std::abs(u.z - t.z), 1e-10);
    EXPECT_LT(std::abs(t.markov_residual()), 1e-10);
}

TEST(Fibered, MonodromyPreservesSlopeTraces) {
    const Representation r = build_fibered("RL");
    const SlopeMap m = slope_map("RL");
    EXPECT_EQ(m.a, 1);
    EXPECT_EQ(m.b, 1);
    EXPECT_EQ(m.c, 1);
    EXPECT_EQ(m.d, 2);
    for (const Slope s : farey_expand(5)) {
        const Lattice v = m(lattice(s));
        const cplx a = trace_for_slope(r, s), b = trace_for_slope(r, slope_of(v));
        EXPECT_LT(std::abs(a - b), 1e-8 * std::max(1.0, std::abs(a))) << to_string(s);
    }
}

TEST(Fibered, DomainShape) {
    const SlopeDomain d = monodromy_domain("RL");
    ASSERT_EQ(d.arcs.size(), 2u);
    for (Lattice v : {Lattice{1, 0}, Lattice{0, 1}, Lattice{2, 1}, Lattice{1, 3}}) EXPECT_TRUE(d.contains(v));
    for (Lattice v : {Lattice{1, 1}, Lattice{1, 2}, Lattice{2, 3}, Lattice{-1, 1}}) EXPECT_FALSE(d.contains(v));
    EXPECT_THROW(monodromy_domain("RX"), ParseError);
    EXPECT_THROW(monodromy_domain("RL", 0), DomainError);
}

TEST(Fibered, DomainMeetsEachOrbitOnce) {
    const SlopeDomain d = monodromy_domain("RL");
    const SlopeMap m = slope_map("RL"), mi{m.d, -m.b, -m.c, m.a};
    for (const Slope s : farey_expand(6)) {
        int hits = d.contains(lattice(s)) ? 1 : 0;
        Lattice f = lattice(s), b = lattice(s);
        for (int k = 0; k < 25; ++k) {
            f = m(f);
            b = mi(b);
            hits += d.contains(f) + d.contains(b);
        }
        EXPECT_EQ(hits, 1) << to_string(s);
    }
    const SlopeDomain d2 = monodromy_domain("RL", 2);
    for (const Slope s : farey_expand(6)) {
        int hits = d2.contains(lattice(s)) ? 1 : 0;
        Lattice f = lattice(s), b = lattice(s);
        for (int k = 0; k < 25; ++k) {
            f = m(f);
            b = mi(b);
            hits += d2.contains(f) + d2.contains(b);
        }
        EXPECT_EQ(hits, 2) << to_string(s);
    }
}

TEST(Pants, RelationHoldsAcrossTheTree) {
    for (const auto& rep : {build_markov(3.0, 3.0, 3.0), build_markov(3.0, 3.0, 4.0),
                            build_quasifuchsian(3.0, cplx(3.0, 0.1))}) {
        for (const Slope s : farey_expand(6)) {
            const auto [p, q] = pants_for_slope(rep, s);
            const double sc = std::max(1.0, max_abs(p.beta) * max_abs(p.beta));
            EXPECT_LE(relation_residual(p), 1e-12 * sc);
            EXPECT_LE(relation_residual(q), 1e-12 * sc);
            EXPECT_LT(std::abs(p.beta.trace() - trace_for_slope(rep, s)), 1e-9 * sc);
        }
    }
}

TEST(Tree, PrunesAtThresholdAndHonoursBudget) {
    const Representation r = build_markov(3.0, 3.0, 3.0);
    TreePolicy pol;
    pol.trace_threshold = 1e3;
    const TreeResult t = enumerate_tree(r, pol);
    for (const auto& reg : t.regions) EXPECT_LE(std::abs(reg.trace), 1e3);
    for (const auto& e : t.pruned) EXPECT_GT(std::abs(e.trace), 1e3);
    EXPECT_FALSE(t.budget_exhausted);
    pol.max_terms = 10;
    EXPECT_TRUE(enumerate_tree(r, pol).budget_exhausted);
}
