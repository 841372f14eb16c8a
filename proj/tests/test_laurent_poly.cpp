#include "precision_guard.hpp"
#include "aim/laurent_poly.hpp"

#include <gtest/gtest.h>

#include <random>

using aim::ExtReal;
using Poly = aim::LaurentPoly<ExtReal>;

namespace {

Poly P(int min_exp, std::initializer_list<double> c) {
    std::vector<ExtReal> v;
    for (double x : c) {
        v.emplace_back(x);
    }
    return Poly(min_exp, std::move(v));
}

Poly random_poly(std::mt19937_64& rng, int lo, int hi) {
    std::uniform_int_distribution<int> e(lo, hi);
    std::uniform_real_distribution<double> c(-3.0, 3.0);
    int a = e(rng);
    int b = e(rng);
    if (a > b) {
        std::swap(a, b);
    }
    std::vector<ExtReal> v;
    for (int i = a; i <= b; ++i) {
        v.emplace_back(c(rng));
    }
    return Poly(a, std::move(v));
}

}  // namespace

TEST(LaurentPoly, AddCombinesCoefficients) {
    EXPECT_EQ(P(-1, {1, 0, 1}) + P(1, {2}), P(-1, {1, 0, 3}));
    const Poly p = P(-2, {1, 2, 3});
    EXPECT_EQ(aim::add(p, Poly{}), p);
}

TEST(LaurentPoly, CancellationGivesCanonicalZero) {
    const Poly z = P(1, {-1, 0, 1}) + P(1, {1, 0, -1});
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.min_exp(), 0);
    EXPECT_EQ(z.size(), 0u);
    EXPECT_EQ(z, Poly{});
    EXPECT_EQ(z(ExtReal(2.5)), 0);
}

TEST(LaurentPoly, Multiply) {
    EXPECT_EQ(aim::mul(P(0, {1, 1}), P(0, {-1, 1})), P(0, {-1, 0, 1}));
    EXPECT_EQ(P(-1, {1}) * P(3, {1}), Poly::monomial(ExtReal(1), 2));
    EXPECT_TRUE((P(0, {1, 2}) * Poly{}).is_zero());
}

TEST(LaurentPoly, Differentiate) {
    EXPECT_EQ(aim::differentiate(Poly::monomial(ExtReal(1), 3)), Poly::monomial(ExtReal(3), 2));
    EXPECT_TRUE(aim::differentiate(Poly::constant(ExtReal(5))).is_zero());
    EXPECT_EQ(aim::differentiate(Poly::monomial(ExtReal(1), -1)), Poly::monomial(ExtReal(-1), -2));
}

TEST(LaurentPoly, Evaluate) {
    EXPECT_EQ(aim::evaluate(P(0, {2, 0, 1}), ExtReal(1)), 3);
    EXPECT_EQ(aim::evaluate(Poly::monomial(ExtReal(1), -1), ExtReal(2)), ExtReal(0.5));
    // 2u^3 - 3u + 1/u at 1.5, summed term by term
    const ExtReal u(1.5);
    const ExtReal direct = 2 * u * u * u - 3 * u + 1 / u;
    const ExtReal got = aim::evaluate(P(-1, {1, 0, -3, 0, 2}), u);
    EXPECT_LT(abs(got - direct), ExtReal(1e-50));
    EXPECT_LT(abs(got - ExtReal(35) / 12), ExtReal(1e-50));
}

TEST(LaurentPoly, EvaluateRejectsNonPositivePivotWithNegativePowers) {
    EXPECT_THROW(aim::evaluate(P(-1, {1, 1}), ExtReal(0)), aim::DomainError);
    EXPECT_THROW(aim::evaluate(P(-1, {1, 1}), ExtReal(-1)), aim::DomainError);
    EXPECT_EQ(aim::evaluate(P(0, {1, 1}), ExtReal(-1)), 0);
}

TEST(LaurentPoly, NormalizationKeepsTinyCoefficients) {
    const Poly p = P(0, {1e-300, 0, 1e-300});
    EXPECT_EQ(p.size(), 3u);
    EXPECT_EQ(p.min_exp(), 0);
    EXPECT_EQ(p.max_exp(), 2);
    const Poly q = P(-3, {0, 0, 4, 0, 0});
    EXPECT_EQ(q.min_exp(), -1);
    EXPECT_EQ(q.max_exp(), -1);
}

TEST(LaurentPolyProperty, ProductRule) {
    std::mt19937_64 rng(20240611);
    for (int i = 0; i < 1000; ++i) {
        const Poly f = random_poly(rng, -4, 8);
        const Poly g = random_poly(rng, -4, 8);
        const Poly lhs = aim::differentiate(aim::mul(f, g));
        const Poly rhs = aim::add(aim::mul(aim::differentiate(f), g), aim::mul(f, aim::differentiate(g)));
        ASSERT_EQ(lhs.min_exp(), rhs.min_exp()) << "case " << i;
        ASSERT_EQ(lhs.max_exp(), rhs.max_exp()) << "case " << i;
        for (int e = lhs.min_exp(); e <= lhs.max_exp(); ++e) {
            const ExtReal scale = 1 + abs(lhs.coeff(e));
            ASSERT_LE(abs(lhs.coeff(e) - rhs.coeff(e)), ExtReal(1e-50) * scale) << "case " << i << " exp " << e;
        }
    }
}

TEST(LaurentPolyProperty, EvaluationHomomorphism) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pick(0.2, 3.0);
    // relative 10^-(0.28 * bits)
    const ExtReal tol = pow(ExtReal(10), -ExtReal(0.28 * aim::working_precision_bits()));
    for (int i = 0; i < 1000; ++i) {
        const Poly p = random_poly(rng, -4, 6);
        const Poly q = random_poly(rng, -4, 6);
        const ExtReal u = i % 2 ? ExtReal(1.5) : ExtReal(pick(rng));
        const ExtReal pu = p(u);
        const ExtReal qu = q(u);
        const ExtReal prod = (p * q)(u);
        const ExtReal sum = (p + q)(u);
        const ExtReal scale_m = 1 + abs(pu) * abs(qu) + abs(prod);
        const ExtReal scale_a = 1 + abs(pu) + abs(qu);
        ASSERT_LE(abs(prod - pu * qu), tol * scale_m * 100) << "case " << i;
        ASSERT_LE(abs(sum - (pu + qu)), tol * scale_a * 100) << "case " << i;
    }
}

TEST(LaurentPolyProperty, DegreeBookkeeping) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Poly a = random_poly(rng, -4, 8);
        const Poly b = random_poly(rng, -4, 8);
        if (a.is_zero() || b.is_zero()) {
            continue;
        }
        const Poly m = a * b;
        ASSERT_EQ(m.max_exp(), a.max_exp() + b.max_exp());
        ASSERT_EQ(m.min_exp(), a.min_exp() + b.min_exp());
    }
}

TEST(LaurentPolyProperty, NegationCancels) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const Poly p = random_poly(rng, -4, 8);
        const Poly z = p + (-p);
        ASSERT_TRUE(z.is_zero());
        ASSERT_EQ(z(ExtReal(0.7)), 0);
    }
}

TEST(LaurentPoly, WorksWithDouble) {
    const aim::LaurentPoly<double> p(-1, {1.0, 0.0, 2.0});
    EXPECT_DOUBLE_EQ(p(2.0), 0.5 + 4.0);
    EXPECT_EQ(p.derivative(), aim::LaurentPoly<double>(-2, {-1.0, 0.0, 2.0}));
}
