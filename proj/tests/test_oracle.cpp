#include "precision_guard.hpp"
#include "aim/analytic.hpp"
#include "aim/oracle.hpp"

#include <gtest/gtest.h>

using aim::ExtReal;

namespace {

aim::PotentialParams params(double A, double B, double C, int kappa) {
    aim::PotentialParams p;
    p.A = ExtReal(A);
    p.B = ExtReal(B);
    p.C = ExtReal(C);
    p.kappa = kappa;
    return p;
}

double d(const ExtReal& x) { return static_cast<double>(x); }

}  // namespace

TEST(Numerov, Hydrogen) {
    const aim::GridSpec g{1e-4, 40, 8000};
    EXPECT_NEAR(d(aim::numerov_eigenvalue(params(0, 1, 0, 0), 0, 0, g)), -0.5, 1e-6);
}

TEST(Numerov, CoulombPlusHarmonic) {
    EXPECT_NEAR(d(aim::numerov_eigenvalue(params(0, 1, 1, 2), 0, 0)), 0.593771, 1e-5);
    const ExtReal big = aim::numerov_eigenvalue(params(0, 1, 5000, 2), 0, 0);
    EXPECT_NEAR(d(big), 138.5572, 138.5572 * 1e-3);
}

TEST(Numerov, MatchesClosedFormsOnLattice) {
    for (int kappa : {0, -1, -2}) {
        for (double A : {0.0, 1.0}) {
            for (double C : {0.0, 0.5}) {
                const auto p = params(A, 1, C, kappa);
                for (int n = 0; n <= 2; ++n) {
                    for (int l = 0; l <= 2; ++l) {
                        const ExtReal exact = aim::exact_energy(p, n, l);
                        const ExtReal num = aim::numerov_eigenvalue(p, n, l);
                        const auto rep = aim::compare(num, exact, ExtReal(1e-6), ExtReal(1e-9));
                        EXPECT_TRUE(rep.pass) << "kappa " << kappa << " A " << A << " C " << C << " n " << n
                                              << " l " << l << ": " << aim::to_string(num) << " vs "
                                              << aim::to_string(exact);
                    }
                }
            }
        }
    }
}

TEST(Numerov, FourthOrderRefinement) {
    // smooth case: no centrifugal singularity at small r
    const auto p = params(1, 1, 0, 0);
    const ExtReal exact = aim::exact_energy(p, 0, 1);
    aim::GridSpec g{1e-3, 60, 1500};
    const ExtReal e1 = aim::numerov_eigenvalue(p, 0, 1, g);
    g.points = 2 * g.points - 1;
    const ExtReal e2 = aim::numerov_eigenvalue(p, 0, 1, g);
    g.points = 2 * g.points - 1;
    const ExtReal e3 = aim::numerov_eigenvalue(p, 0, 1, g);
    const ExtReal d12 = abs(e2 - e1);
    const ExtReal d23 = abs(e3 - e2);
    ASSERT_GT(d12, 0);
    EXPECT_LE(d23 / d12, ExtReal(0.125)) << aim::to_string(d12) << " " << aim::to_string(d23);
    EXPECT_LT(abs(e3 - exact), ExtReal(1e-7));
}

TEST(Numerov, ResolutionCheck) {
    const auto rc = aim::numerov_with_resolution_check(params(0, 1, 0, 0), 0, 0, aim::GridSpec{1e-4, 40, 8000});
    EXPECT_FALSE(rc.resolution_warning);
    const auto coarse = aim::numerov_with_resolution_check(params(0, 1, 0, 0), 0, 1, aim::GridSpec{1e-2, 400, 1000});
    EXPECT_TRUE(coarse.resolution_warning);
    EXPECT_GT(coarse.shift, ExtReal(1e-6));
    // a step this wide cannot resolve the Coulomb singularity at all
    EXPECT_THROW(aim::numerov_with_resolution_check(params(0, 1, 0, 0), 0, 0, aim::GridSpec{1e-4, 400, 1000}),
                 aim::DomainError);
}

TEST(Numerov, Errors) {
    EXPECT_THROW(aim::numerov_eigenvalue(params(0, 1, 0, 0), 0, 0, aim::GridSpec{1e-4, 40, 999}), aim::ParameterError);
    EXPECT_THROW(aim::numerov_eigenvalue(params(0, 1, 0, 0), 0, 0, aim::GridSpec{1, 0.5, 2000}), aim::ParameterError);
    EXPECT_THROW(aim::numerov_eigenvalue(params(0, 1, 0, 0), -1, 0), aim::ParameterError);
    EXPECT_THROW(aim::default_grid(params(0, 1, 1, -1), 0, 0), aim::ParameterError);
}

TEST(Compare, Examples) {
    EXPECT_TRUE(aim::compare(ExtReal(0.59377126), ExtReal(0.5937713), ExtReal(1e-5), ExtReal(1e-8)).pass);
    const auto bad = aim::compare(ExtReal(0.6), ExtReal(0.59377126), ExtReal(1e-5), ExtReal(1e-8));
    EXPECT_FALSE(bad.pass);
    EXPECT_NEAR(d(bad.abs_delta), 0.6 - 0.59377126, 1e-15);
    EXPECT_NEAR(d(bad.rel_delta), (0.6 - 0.59377126) / 0.59377126, 1e-12);
    EXPECT_TRUE(aim::compare(ExtReal(0), ExtReal(1e-10), ExtReal(1e-6), ExtReal(1e-9)).pass);
    EXPECT_THROW(aim::compare(ExtReal(1), ExtReal(1), ExtReal(0), ExtReal(1)), aim::ParameterError);
}

TEST(Compare, PublishedWeakConfinement) {
    const ExtReal oracle = aim::numerov_eigenvalue(params(0, 1, 0.1, 2), 0, 0);
    EXPECT_TRUE(aim::compare(ExtReal(-0.29608776), oracle, ExtReal(1e-5), ExtReal(1e-12)).pass);
}
