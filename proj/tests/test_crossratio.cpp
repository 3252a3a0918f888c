#include <gtest/gtest.h>

#include "mcshane/crossratio.hpp"
#include "mcshane/props.hpp"

using namespace mcshane;

namespace {
void expect_all_pass(const SuiteResult& s) {
    for (const auto& c : s.checks) {
        if (!c.binding) continue;
        EXPECT_TRUE(c.pass()) << s.suite << ": " << c.name << " worst " << c.worst << " tol " << c.tol;
        EXPECT_GT(c.samples, 0u);
    }
}
}  // namespace

TEST(CrossRatio, SphereValue) {
    const cplx v = sl2_crossratio(point2(0.0), point2(1.0), infinity2(), point2(2.0));
    EXPECT_NEAR(std::abs(v - 0.5), 0.0, 1e-15);
}

TEST(CrossRatio, DegenerateCarriesLimit) {
    try {
        sl2_crossratio(point2(0.0), point2(1.0), point2(1.0), point2(0.0));
        FAIL();
    } catch (const DegenerateError& e) {
        EXPECT_EQ(e.limit, "inf");
    }
    try {
        sl2_crossratio(point2(0.0), point2(0.0), point2(0.0), point2(0.0));
        FAIL();
    } catch (const DegenerateError& e) {
        EXPECT_EQ(e.limit, "indeterminate");
    }
}

TEST(CrossRatio, AxiomsOnSphere) { expect_all_pass(crossratio_suite_sphere(1000, 11)); }
TEST(CrossRatio, AxiomsOnHeisenbergBoundary) { expect_all_pass(crossratio_suite_heisenberg(1000, 12)); }
TEST(CrossRatio, GroupInvariance) { expect_all_pass(crossratio_invariance_suite(1000, 13)); }

TEST(CrossRatio, ZeroAndOneOnBoundary) {
    Rng g(14);
    const Vec3 x = lift(random_heisenberg(g)), y = lift(random_heisenberg(g)), z = lift(random_heisenberg(g)),
               w = lift(random_heisenberg(g));
    EXPECT_LT(std::abs(cx_crossratio(x, x, z, w)), 1e-12);
    EXPECT_LT(std::abs(cx_crossratio(x, y, x, w) - 1.0), 1e-12);
    EXPECT_LT(std::abs(cx_crossratio(x, y, z, y) - 1.0), 1e-12);
}

TEST(Period, SL2Diagonal) {
    const Mat2 g = Mat2::diag({2.0, 0.5});
    const cplx p = period(g, point2(cplx(0.3, 0.7)));
    EXPECT_NEAR(p.real(), std::log(4.0), 1e-14);
    EXPECT_NEAR(p.imag(), 0.0, 1e-14);
}

TEST(Period, SL2TraceThreeIsTwiceLogOfGoldenSquare) {
    const Mat2 g{2.0, 1.0, 1.0, 1.0};
    const double l = 2.0 * std::acosh(1.5);
    EXPECT_NEAR(period(g, point2(0.25)).real(), l, 1e-12);
    EXPECT_NEAR(sl2_complex_length(g).real(), l, 1e-12);
}

TEST(Period, SU21Diagonal) {
    for (double th : {0.0, 0.4, 2.5}) {
        const cplx c = std::polar(1.0, -th / 3.0);
        const Mat3 g = Mat3::diag({2.0 * c, std::polar(1.0, th) * c, 0.5 * c});
        ASSERT_LT(su21_form_residual(g), 1e-14);
        const cplx p = period(g, lift(HeisenbergPoint{cplx(0.2, -0.5), 0.3, false}));
        EXPECT_NEAR(p.real(), std::log(4.0), 1e-13);
        EXPECT_NEAR(mod2pi_abs(p - std::log(4.0)), 0.0, 1e-13);
    }
}

TEST(Period, FixedPointReferenceIsIllConditioned) {
    const Mat2 g = Mat2::diag({2.0, 0.5});
    EXPECT_THROW(period(g, infinity2()), IllConditionedError);
}

TEST(Period, ConjugationInvariantAndMatchesTranslationLength) { expect_all_pass(period_suite(200, 15)); }

TEST(Period, IndependentOfReference) {
    Rng g(16);
    for (int k = 0; k < 100; ++k) {
        const Mat3 F = random_su21(g);
        const Mat3 m = F * E(cplx(uniform(g, 0.1, 1.5), uniform(g, -2, 2))) * su21_inverse(F);
        const cplx a = period(m, lift(random_heisenberg(g))), b = period(m, lift(random_heisenberg(g)));
        EXPECT_LT(mod2pi_abs(a - b), 1e-8);
    }
}

TEST(PPInvariants, SecondRelationAndCorrectedFirst) {
    Rng g(17);
    for (int k = 0; k < 1000; ++k) {
        Vec3 z[4];
        for (auto& x : z) x = lift(random_heisenberg(g));
        const PPResiduals r = pp_residuals(pp_invariants(z[0], z[1], z[2], z[3]));
        EXPECT_LT(r.second, 1e-10);
        EXPECT_LT(r.first_corrected, 1e-10);
    }
}

TEST(PPInvariants, PrintedFirstRelationIsNotAnIdentity) {
    // |X2| = |X1||X3| holds, so the squared form only holds where |X2| is 0 or 1.
    const SuiteResult s = pp_suite(200, 18);
    EXPECT_FALSE(s.checks[0].pass());
    EXPECT_TRUE(s.checks[1].pass());
    EXPECT_TRUE(s.checks[2].pass());
}

TEST(PPInvariants, DefinitionsInTermsOfCrossRatios) {
    Rng g(19);
    Vec3 z[4];
    for (auto& x : z) x = lift(random_heisenberg(g));
    const PPInvariants p = pp_invariants(z[0], z[1], z[2], z[3]);
    EXPECT_LT(rel(p.X1, cx_crossratio(z[3], z[1], z[2], z[0])), 1e-14);
    EXPECT_LT(rel(p.X2, cx_crossratio(z[3], z[2], z[1], z[0])), 1e-14);
    EXPECT_LT(rel(p.X3, cx_crossratio(z[3], z[2], z[0], z[1])), 1e-14);
}

TEST(Holder, EqualPointsGiveZero) {
    Rng g(20);
    const Vec3 x = lift(random_heisenberg(g)), z = lift(random_heisenberg(g)), t = lift(random_heisenberg(g)),
               y = lift(random_heisenberg(g));
    const HolderRecord r = holder_check(x, z, t, y, y);
    EXPECT_NEAR(r.lhs, 0.0, 1e-15);
    EXPECT_NEAR(r.rho, 0.0, 1e-7);
    EXPECT_NEAR(r.K, 1.0, 1e-12);
    EXPECT_TRUE(r.holds());
}

TEST(Holder, FrameSendsXToOriginAndZToInfinity) {
    Rng g(21);
    const Vec3 x = lift(random_heisenberg(g)), z = lift(random_heisenberg(g)), t = lift(random_heisenberg(g));
    const HolderRecord r = holder_check(x, z, t, lift(random_heisenberg(g)), lift(random_heisenberg(g)));
    EXPECT_LT(su21_form_residual(r.move), 1e-9);
    EXPECT_TRUE(projectively_equal(r.move * x, Vec3{0.0, 0.0, 1.0}, 1e-9));
    EXPECT_TRUE(projectively_equal(r.move * z, psi_infinity(), 1e-9));
}

TEST(Holder, EstimateHoldsOnRandomConfigurations) { expect_all_pass(holder_suite(2000, 22)); }
