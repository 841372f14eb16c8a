#include "precision_guard.hpp"
#include "aim/solver.hpp"

#include <gtest/gtest.h>

#include <map>

using aim::ExtReal;

namespace {

double d(const ExtReal& x) { return static_cast<double>(x); }

std::vector<aim::StateIndex> lattice(int n_max, int l_max) {
    std::vector<aim::StateIndex> s;
    for (int n = n_max; n >= 0; --n) {
        for (int l = 0; l <= l_max; ++l) {
            s.push_back({n, l});
        }
    }
    return s;
}

}  // namespace

TEST(SolveState, Kappa2LargeGamma) {
    const auto spec = aim::ProblemSpec::from_reduced(2, ExtReal(1), ExtReal(10));
    const auto r = aim::solve_state(spec, 2, 2);
    ASSERT_EQ(r.status, aim::ConvergenceStatus::converged);
    EXPECT_NEAR(d(r.epsilon), 152.2273430525, 152.23 * 1e-8);
    EXPECT_EQ(r.n_index, 2);
    EXPECT_EQ(r.l, 2);
    EXPECT_FALSE(r.e_physical.has_value());
}

TEST(SolveState, PhysicalEnergy) {
    aim::PotentialParams p;
    p.B = ExtReal(1);
    p.C = ExtReal(1);
    p.kappa = 2;
    const auto r = aim::solve_state(aim::ProblemSpec::from_physical(p), 0, 0);
    ASSERT_TRUE(r.e_physical.has_value());
    EXPECT_NEAR(d(*r.e_physical), 0.59377126, 0.59377126 * 1e-7);
    EXPECT_EQ(*r.e_physical, aim::to_physical(r.epsilon, p));
}

TEST(SolveState, PhysicalAndReducedAgree) {
    aim::PotentialParams p;
    p.A = ExtReal(0.5);
    p.B = ExtReal(2);
    p.C = ExtReal(3);
    p.kappa = 1;
    p.mass = ExtReal(0.5);
    p.hbar = ExtReal(1);
    const auto red = aim::reduce(p, 0);
    const auto phys = aim::solve_state(aim::ProblemSpec::from_physical(p), 1, 0);
    const auto direct = aim::solve_state(aim::ProblemSpec::from_reduced(1, red.a_tilde, red.gamma), 1, 0);
    EXPECT_EQ(aim::to_string(phys.epsilon), aim::to_string(direct.epsilon));
    EXPECT_EQ(phys.k_converged, direct.k_converged);
}

TEST(SolveState, ScanWindowTooNarrow) {
    const auto spec = aim::ProblemSpec::from_reduced(2, ExtReal(1), ExtReal(1));
    aim::SolverOptions opt;
    opt.scan_min = ExtReal(0);
    opt.scan_max = ExtReal(1);
    EXPECT_THROW(aim::solve_state(spec, 0, 0, opt), aim::BracketLost);
    opt.scan_max = ExtReal(-1);
    EXPECT_THROW(aim::solve_state(spec, 0, 0, opt), aim::ParameterError);
}

TEST(SolveState, FastScanMatchesFullPrecisionScan) {
    const auto spec = aim::ProblemSpec::from_reduced(1, ExtReal(1), ExtReal(1));
    const auto ps = aim::setup(spec.reduced(1), 1);
    aim::SolverOptions fast;
    aim::SolverOptions full;
    full.fast_scan = false;
    const auto a = aim::eigen_brackets(ps, 2, fast);
    const auto b = aim::eigen_brackets(ps, 2, full);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].lo, b[i].lo);
        EXPECT_EQ(a[i].hi, b[i].hi);
    }
}

TEST(SolveStates, Kappa1MonotoneAndCertifiedBy70) {
    const auto spec = aim::ProblemSpec::from_reduced(1, ExtReal(1), ExtReal(1));
    aim::SolverOptions opt;
    opt.beta = ExtReal(0.5);
    opt.tol = ExtReal(1e-6);
    opt.k_max = 70;
    const auto out = aim::solve_states(spec, lattice(2, 2), opt);
    ASSERT_EQ(out.size(), 9u);
    std::map<std::pair<int, int>, ExtReal> eps;
    for (std::size_t i = 0; i < out.size(); ++i) {
        ASSERT_TRUE(out[i].result.has_value()) << out[i].error;
        EXPECT_EQ(out[i].result->status, aim::ConvergenceStatus::converged);
        EXPECT_LE(out[i].result->k_converged, 70);
        eps[{out[i].state.n, out[i].state.l}] = out[i].result->epsilon;
        if (i > 0) {
            const auto& a = out[i - 1].state;
            const auto& b = out[i].state;
            EXPECT_TRUE(a.n < b.n || (a.n == b.n && a.l < b.l));
        }
    }
    for (int n = 0; n <= 2; ++n) {
        for (int l = 0; l <= 2; ++l) {
            if (n < 2) EXPECT_LT(eps.at({n, l}), eps.at({n + 1, l}));
            if (l < 2) EXPECT_LT(eps.at({n, l}), eps.at({n, l + 1}));
        }
    }
    EXPECT_NEAR(d(eps[{2, 2}]), 6.704883, 1e-6);
    EXPECT_NEAR(d(eps[{0, 0}]), 2.36071239, 1e-6);
}

TEST(SolveStates, Kappa2Monotone) {
    for (double g : {0.1, 1.0, 10.0}) {
        const auto spec = aim::ProblemSpec::from_reduced(2, ExtReal(1), ExtReal(g));
        const auto out = aim::solve_states(spec, lattice(2, 2));
        std::map<std::pair<int, int>, ExtReal> eps;
        for (const auto& o : out) {
            ASSERT_TRUE(o.result.has_value()) << o.error;
            eps[{o.state.n, o.state.l}] = o.result->epsilon;
        }
        for (int n = 0; n <= 2; ++n) {
            for (int l = 0; l <= 2; ++l) {
                if (n < 2) EXPECT_LT(eps.at({n, l}), eps.at({n + 1, l})) << "gamma " << g;
                if (l < 2) EXPECT_LT(eps.at({n, l}), eps.at({n, l + 1})) << "gamma " << g;
            }
        }
    }
}

TEST(SolveStates, ParallelMatchesSerial) {
    const auto spec = aim::ProblemSpec::from_reduced(2, ExtReal(1), ExtReal(1));
    std::vector<aim::StateIndex> states = {{1, 1}, {0, 0}, {1, 0}, {0, 1}, {0, 0}};
    aim::SolverOptions serial;
    serial.workers = 1;
    aim::SolverOptions wide;
    wide.workers = 4;
    const auto a = aim::solve_states(spec, states, serial);
    const auto b = aim::solve_states(spec, states, wide);
    ASSERT_EQ(a.size(), 4u);
    ASSERT_EQ(b.size(), 4u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].state.n, b[i].state.n);
        EXPECT_EQ(a[i].state.l, b[i].state.l);
        EXPECT_EQ(a[i].result->epsilon, b[i].result->epsilon);
        EXPECT_EQ(a[i].result->trace.size(), b[i].result->trace.size());
    }
}

TEST(SolveStates, FailuresAreReportedPerState) {
    const auto spec = aim::ProblemSpec::from_reduced(2, ExtReal(1), ExtReal(1));
    aim::SolverOptions opt;
    opt.scan_min = ExtReal(0);
    opt.scan_max = ExtReal(6);
    const auto out = aim::solve_states(spec, {{0, 0}, {3, 0}}, opt);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_TRUE(out[0].result.has_value());
    EXPECT_FALSE(out[1].result.has_value());
    EXPECT_FALSE(out[1].error.empty());
}

TEST(ParallelMap, PreservesOrderAndRethrows) {
    std::vector<int> items(37);
    for (int i = 0; i < 37; ++i) {
        items[i] = i;
    }
    const auto sq = aim::parallel_map(items, [](int x) { return x * x; }, 5);
    for (int i = 0; i < 37; ++i) {
        EXPECT_EQ(sq[i], i * i);
    }
    EXPECT_THROW(aim::parallel_map(
                     items,
                     [](int x) {
                         if (x == 20) throw aim::DomainError("boom");
                         return x;
                     },
                     3),
                 aim::DomainError);
}
