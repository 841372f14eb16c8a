#pragma once

// End-to-end eigenvalue solves: bracket scan at a modest iteration count,
// n-th bracket selection, then convergence tracking in k.

#include "aim/engine.hpp"
#include "aim/problems.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace aim {

/// A member of the potential family in either input mode.
struct ProblemSpec {
    int kappa = 2;
    /// Physical parameters; when present the reduced ones are derived from them.
    std::optional<PotentialParams> physical;
    ExtReal a_tilde{0};
    ExtReal gamma{0};

    static ProblemSpec from_physical(const PotentialParams& p) {
        ProblemSpec s;
        s.kappa = p.kappa;
        s.physical = p;
        return s;
    }
    static ProblemSpec from_reduced(int kappa, const ExtReal& a_tilde, const ExtReal& gamma) {
        ProblemSpec s;
        s.kappa = kappa;
        s.a_tilde = a_tilde;
        s.gamma = gamma;
        return s;
    }

    ReducedParams reduced(int l) const { return physical ? reduce(*physical, l) : reduced_from(a_tilde, gamma, l); }
};

struct SolverOptions {
    std::optional<ExtReal> beta;  ///< defaults per kappa
    int scan_iterations = 25;
    std::optional<ExtReal> scan_min;
    std::optional<ExtReal> scan_max;
    std::optional<ExtReal> scan_step;
    int k_min = 20;
    int k_max = 150;
    int k_step = 5;
    ExtReal tol{1e-9};
    ExtReal root_tol{1e-12};
    /// Scan in double precision (allowed because scan_iterations <= 25);
    /// falls back to ExtReal on non-finite residuals.
    bool fast_scan = true;
    bool run_to_k_max = false;
    /// 0 uses the hardware concurrency.
    unsigned workers = 0;
};

inline constexpr int kFastPathMaxIterations = 25;

/// Scan window [-2, 4 gamma (n + l + 2)^2] with 512 steps unless overridden.
inline Bracket<ExtReal> default_scan_window(const ReducedParams& red, int n) {
    const ExtReal reach = ExtReal(n + red.l + 2);
    ExtReal hi = 4 * red.gamma * reach * reach;
    if (hi < ExtReal(-1)) {
        hi = ExtReal(-1);
    }
    return {ExtReal(-2), hi};
}

/// Residual brackets in ascending eps for one setup.
inline std::vector<Bracket<ExtReal>> eigen_brackets(const ProblemSetup<ExtReal>& ps, int n,
                                                    const SolverOptions& opt) {
    const Bracket<ExtReal> def = default_scan_window(ps.reduced, n);
    const ExtReal lo = opt.scan_min.value_or(def.lo);
    const ExtReal hi = opt.scan_max.value_or(def.hi);
    if (!(lo < hi)) {
        throw ParameterError("scan window is empty (scan-min must be < scan-max)");
    }
    const ExtReal step = opt.scan_step.value_or((hi - lo) / 512);
    if (!(step > 0)) {
        throw ParameterError("scan step must be > 0");
    }
    if (opt.fast_scan && opt.scan_iterations <= kFastPathMaxIterations) {
        try {
            const auto fast = ps.as<double>();
            const auto br = scan_roots(fast, opt.scan_iterations, static_cast<double>(lo), static_cast<double>(hi),
                                       static_cast<double>(step));
            std::vector<Bracket<ExtReal>> out;
            out.reserve(br.size());
            for (const auto& b : br) {
                out.push_back({ExtReal(b.lo), ExtReal(b.hi)});
            }
            return out;
        } catch (const PrecisionExhausted&) {
            // double overflowed; redo at working precision
        }
    }
    return scan_roots(ps, opt.scan_iterations, lo, hi, step);
}

/// Converged (n, l) eigenvalue of `spec`.
inline EigenResult<ExtReal> solve_state(const ProblemSpec& spec, int n, int l, const SolverOptions& opt = {}) {
    if (n < 0 || l < 0) {
        throw ParameterError("n and l must be >= 0");
    }
    const ReducedParams red = spec.reduced(l);
    const ProblemSetup<ExtReal> ps = setup(red, spec.kappa, opt.beta.value_or(default_beta(spec.kappa)));
    const auto brackets = eigen_brackets(ps, n, opt);
    if (static_cast<int>(brackets.size()) <= n) {
        throw BracketLost("scan found " + std::to_string(brackets.size()) + " eigenvalue bracket(s), need n+1 = " +
                          std::to_string(n + 1) + "; widen the scan window");
    }
    const Bracket<ExtReal>& br = brackets[static_cast<std::size_t>(n)];
    ConvergeOptions<ExtReal> copt;
    copt.k_step = opt.k_step;
    copt.root_tol = opt.root_tol;
    copt.run_to_k_max = opt.run_to_k_max;
    copt.initial_width = br.hi - br.lo;
    EigenResult<ExtReal> res = converge(ps, ExtReal((br.lo + br.hi) / 2), opt.k_min, opt.k_max, opt.tol, copt);
    res.n_index = n;
    res.l = l;
    if (spec.physical && spec.physical->B > 0) {
        res.e_physical = to_physical(res.epsilon, *spec.physical);
    }
    return res;
}

struct StateIndex {
    int n = 0;
    int l = 0;
};

/// Runs fn over items on a small worker pool; results keep the item order.
template <class Item, class Fn>
auto parallel_map(const std::vector<Item>& items, Fn fn, unsigned workers = 0)
    -> std::vector<decltype(fn(items.front()))> {
    using Result = decltype(fn(items.front()));
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    std::vector<std::optional<Result>> slots(items.size());
    std::vector<std::exception_ptr> errors(items.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < items.size(); i = next++) {
            try {
                slots[i].emplace(fn(items[i]));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned spawn = std::min<unsigned>(workers, static_cast<unsigned>(items.size()));
    if (spawn <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(spawn);
        for (unsigned t = 0; t < spawn; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    std::vector<Result> out;
    out.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (errors[i]) {
            std::rethrow_exception(errors[i]);
        }
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

/// One result per state, ordered by (n, l). A failing state is reported with
/// status max-iterations and its error message rather than aborting the batch.
struct StateOutcome {
    StateIndex state;
    std::optional<EigenResult<ExtReal>> result;
    std::string error;
};

inline std::vector<StateOutcome> solve_states(const ProblemSpec& spec, std::vector<StateIndex> states,
                                              const SolverOptions& opt = {}) {
    std::sort(states.begin(), states.end(),
              [](const StateIndex& a, const StateIndex& b) { return a.n != b.n ? a.n < b.n : a.l < b.l; });
    states.erase(std::unique(states.begin(), states.end(),
                             [](const StateIndex& a, const StateIndex& b) { return a.n == b.n && a.l == b.l; }),
                 states.end());
    return parallel_map(
        states,
        [&](const StateIndex& s) {
            StateOutcome o;
            o.state = s;
            try {
                o.result = solve_state(spec, s.n, s.l, opt);
            } catch (const BracketLost& e) {
                o.error = e.what();
            } catch (const PrecisionExhausted& e) {
                o.error = e.what();
            }
            return o;
        },
        opt.workers);
}

}  // namespace aim
