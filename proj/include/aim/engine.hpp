#pragma once

// Asymptotic iteration: the lambda_k / s_k recurrence, the quantization
// residual delta_k, eigenvalue bracketing and refinement in eps, convergence
// tracking across iteration counts and the wavefunction generator.

#include "aim/ext_real.hpp"
#include "aim/laurent_poly.hpp"
#include "aim/problems.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aim {

template <class T>
struct AimPair {
    int k = 0;
    LaurentPoly<T> lambda;
    LaurentPoly<T> s;
};

/// One application of
///   lambda_k = lambda_{k-1}' + s_{k-1} + lambda0 lambda_{k-1}
///   s_k      = s_{k-1}' + s0 lambda_{k-1}
template <class T>
AimPair<T> aim_step(const AimPair<T>& prev, const LaurentPoly<T>& lambda0, const LaurentPoly<T>& s0) {
    AimPair<T> next;
    next.k = prev.k + 1;
    next.lambda = prev.lambda.derivative() + prev.s + lambda0 * prev.lambda;
    next.s = prev.s.derivative() + s0 * prev.lambda;
    return next;
}

/// delta = lambda_curr s_prev - lambda_prev s_curr, combined as polynomials
/// and then evaluated at u0.
template <class T>
T delta(const AimPair<T>& curr, const AimPair<T>& prev, const T& u0) {
    const LaurentPoly<T> combo = curr.lambda * prev.s - prev.lambda * curr.s;
    T value = combo(u0);
    if (!is_finite(value)) {
        throw PrecisionExhausted("quantization residual at k=" + std::to_string(curr.k) +
                                 " is not finite; increase the working precision");
    }
    return value;
}

/// Where the recurrence starts. Both produce the same pairs for k >= 0.
enum class RecurrenceStart {
    seed_pair,  ///< k = 0 is (lambda0, s0)
    unit_pair,  ///< k = -1 is (1, 0); one extra step reproduces (lambda0, s0)
};

/// Pairs 0 .. last for a fixed eps.
template <class T>
std::vector<AimPair<T>> aim_sequence(const ProblemSetup<T>& ps, const T& eps, int last,
                                     RecurrenceStart start = RecurrenceStart::seed_pair) {
    const LaurentPoly<T> s0 = ps.s0(eps);
    std::vector<AimPair<T>> pairs;
    pairs.reserve(static_cast<std::size_t>(std::max(last, 0) + 1));
    if (start == RecurrenceStart::seed_pair) {
        pairs.push_back({0, ps.lambda0, s0});
    } else {
        const AimPair<T> unit{-1, LaurentPoly<T>::constant(T(1)), LaurentPoly<T>{}};
        pairs.push_back(aim_step(unit, ps.lambda0, s0));
    }
    while (pairs.back().k < last) {
        pairs.push_back(aim_step(pairs.back(), ps.lambda0, s0));
    }
    return pairs;
}

/// Iteration count k of a quantization run. An iteration count of k tests the
/// termination condition s_{k+1}/lambda_{k+1} = s_k/lambda_k, i.e. delta is
/// formed from pairs k+1 and k. This is the convention of the published
/// convergence tables.
inline int last_pair_index(int iterations) { return iterations + 1; }

/// delta at the pivot for `iterations` AIM iterations at energy eps.
template <class T>
T quantization_residual(const ProblemSetup<T>& ps, const T& eps, int iterations,
                        RecurrenceStart start = RecurrenceStart::seed_pair) {
    if (iterations < 0) {
        throw ParameterError("iteration count must be >= 0");
    }
    const LaurentPoly<T> s0 = ps.s0(eps);
    AimPair<T> prev;
    if (start == RecurrenceStart::seed_pair) {
        prev = {0, ps.lambda0, s0};
    } else {
        prev = aim_step(AimPair<T>{-1, LaurentPoly<T>::constant(T(1)), LaurentPoly<T>{}}, ps.lambda0, s0);
    }
    const int last = last_pair_index(iterations);
    AimPair<T> curr = aim_step(prev, ps.lambda0, s0);
    while (curr.k < last) {
        prev = std::move(curr);
        curr = aim_step(prev, ps.lambda0, s0);
    }
    return delta(curr, prev, ps.u0);
}

template <class T>
struct Bracket {
    T lo;
    T hi;
};

namespace detail {

template <class T>
int sign_of(const T& v) {
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

}  // namespace detail

/// Sign changes of the residual on the grid eps_min, eps_min + step, ... up to
/// eps_max, in ascending order. A grid point where the residual is exactly
/// zero yields a bracket starting at that point.
template <class T>
std::vector<Bracket<T>> scan_roots(const ProblemSetup<T>& ps, int iterations, const T& eps_min, const T& eps_max,
                                   const T& step) {
    if (!(step > 0)) {
        throw ParameterError("scan step must be > 0");
    }
    std::vector<Bracket<T>> out;
    if (!(eps_min < eps_max)) {
        return out;
    }
    T x = eps_min;
    int sx = detail::sign_of(quantization_residual(ps, x, iterations));
    while (x < eps_max) {
        T next = x + step;
        if (next > eps_max) {
            next = eps_max;
        }
        const int sn = detail::sign_of(quantization_residual(ps, next, iterations));
        if (sx == 0) {
            out.push_back({x, next});
        } else if (sn != 0 && sn != sx) {
            out.push_back({x, next});
        }
        x = next;
        sx = sn;
    }
    // A root sitting exactly on eps_max.
    if (sx == 0 && (out.empty() || out.back().hi < x)) {
        out.push_back({x, x});
    }
    return out;
}

/// Bisection on a sign-changing bracket until its width is <= tol.
template <class T>
T refine_root(const ProblemSetup<T>& ps, int iterations, Bracket<T> br, const T& tol) {
    if (!(tol > 0)) {
        throw ParameterError("root tolerance must be > 0");
    }
    T flo = quantization_residual(ps, br.lo, iterations);
    if (flo == 0) {
        return br.lo;
    }
    T fhi = quantization_residual(ps, br.hi, iterations);
    if (fhi == 0) {
        return br.hi;
    }
    const int slo = detail::sign_of(flo);
    if (slo == detail::sign_of(fhi)) {
        throw BracketLost("residual does not change sign on [" + to_string(br.lo, 12) + ", " +
                          to_string(br.hi, 12) + "] at k=" + std::to_string(iterations));
    }
    while (br.hi - br.lo > tol) {
        T mid = (br.lo + br.hi) / 2;
        if (!(mid > br.lo && mid < br.hi)) {
            break;  // bracket width at the precision floor
        }
        const int sm = detail::sign_of(quantization_residual(ps, mid, iterations));
        if (sm == 0) {
            return mid;
        }
        if (sm == slo) {
            br.lo = std::move(mid);
        } else {
            br.hi = std::move(mid);
        }
    }
    return (br.lo + br.hi) / 2;
}

/// Bracket of the residual root closest to `center`, searched on a symmetric
/// grid of half-spacing `width` that is doubled up to `expansions` times.
template <class T>
Bracket<T> bracket_near(const ProblemSetup<T>& ps, int iterations, const T& center, T width, int points_per_side = 8,
                        int expansions = 12) {
    const auto f = [&](const T& e) { return detail::sign_of(quantization_residual(ps, e, iterations)); };
    const int s0 = f(center);
    if (s0 == 0) {
        return {center, center};
    }
    for (int attempt = 0; attempt <= expansions; ++attempt) {
        int s_left = s0;
        int s_right = s0;
        T left = center;
        T right = center;
        for (int j = 1; j <= points_per_side; ++j) {
            const T r = center + width * j;
            const int sr = f(r);
            if (sr != s_right) {
                return {right, r};
            }
            const T l = center - width * j;
            const int sl = f(l);
            if (sl != s_left) {
                return {l, left};
            }
            right = r;
            left = l;
        }
        width *= 2;
    }
    throw BracketLost("no residual root near eps=" + to_string(center, 12) + " at k=" + std::to_string(iterations));
}

enum class ConvergenceStatus { converged, oscillating, max_iterations };

inline std::string to_string(ConvergenceStatus s) {
    switch (s) {
        case ConvergenceStatus::converged:
            return "converged";
        case ConvergenceStatus::oscillating:
            return "oscillating";
        case ConvergenceStatus::max_iterations:
            return "max-iterations";
    }
    return "unknown";
}

template <class T>
struct TracePoint {
    int k = 0;
    T epsilon;
};

template <class T = ExtReal>
struct EigenResult {
    T epsilon{0};
    std::optional<T> e_physical;
    int n_index = 0;
    int l = 0;
    int k_converged = -1;
    std::vector<TracePoint<T>> trace;
    ConvergenceStatus status = ConvergenceStatus::max_iterations;
};

template <class T>
struct ConvergeOptions {
    int k_step = 1;
    T root_tol = T(1e-12);
    /// Keep iterating to k_max after convergence is certified.
    bool run_to_k_max = false;
    /// Half-spacing for the first bracket search; 0 picks 1e-2 (1 + |approx|).
    T initial_width = T(0);
};

/// Tracks the root near approx_eps from k_min to k_max (every k_step).
///
/// Each k is warm-started from the previous root. The result is converged once
/// three consecutive evaluated k agree within tol; k_converged is the first k of
/// that run. A run of 10 strictly growing successive differences is reported as
/// oscillating.
template <class T>
EigenResult<T> converge(const ProblemSetup<T>& ps, const T& approx_eps, int k_min, int k_max, const T& tol,
                        const ConvergeOptions<T>& opt = {}) {
    using std::abs;
    if (k_min < 1 || k_max < k_min || opt.k_step < 1) {
        throw ParameterError("converge needs 1 <= k_min <= k_max and k_step >= 1");
    }
    if (!(tol > 0)) {
        throw ParameterError("convergence tolerance must be > 0");
    }
    EigenResult<T> res;
    res.l = ps.reduced.l;
    T center = approx_eps;
    T width = opt.initial_width > 0 ? opt.initial_width : T(1e-2) * (1 + abs(approx_eps));
    std::vector<T> diffs;
    int growing = 0;
    for (int k = k_min; k <= k_max; k += opt.k_step) {
        Bracket<T> br;
        try {
            br = bracket_near(ps, k, center, width);
        } catch (const BracketLost& e) {
            throw BracketLost(std::string(e.what()) + " (trace holds " + std::to_string(res.trace.size()) +
                              " converged iterations)");
        }
        const T eps = refine_root(ps, k, br, opt.root_tol);
        if (!res.trace.empty()) {
            const T d = abs(eps - res.trace.back().epsilon);
            if (!diffs.empty() && d > diffs.back()) {
                ++growing;
            } else {
                growing = 0;
            }
            diffs.push_back(d);
            // next search width follows the observed drift
            width = std::max(T(4) * d, T(10) * opt.root_tol);
        }
        res.trace.push_back({k, eps});
        center = eps;

        const std::size_t n = res.trace.size();
        if (res.status != ConvergenceStatus::converged && n >= 3) {
            const T& a = res.trace[n - 3].epsilon;
            const T& b = res.trace[n - 2].epsilon;
            const T& c = res.trace[n - 1].epsilon;
            if (abs(c - b) <= tol && abs(b - a) <= tol && abs(c - a) <= tol) {
                res.status = ConvergenceStatus::converged;
                res.k_converged = res.trace[n - 3].k;
                res.epsilon = c;
                if (!opt.run_to_k_max) {
                    break;
                }
            }
        }
        if (res.status != ConvergenceStatus::converged && growing >= 10) {
            res.status = ConvergenceStatus::oscillating;
            break;
        }
    }
    if (res.status != ConvergenceStatus::converged) {
        res.epsilon = res.trace.back().epsilon;
    }
    return res;
}

}  // namespace aim
