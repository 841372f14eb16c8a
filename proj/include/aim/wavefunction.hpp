#pragma once

// Radial eigenfunctions from the AIM generator f(u) = exp(-int s_k / lambda_k du).

#include "aim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace aim {

/// Samples of a radial function R(r) (the reduced radial function, R = r * psi).
template <class T>
struct SampledFunction {
    std::vector<T> r;
    std::vector<T> value;
};

/// Number of sign changes, ignoring exact zeros.
template <class T>
int count_sign_changes(const std::vector<T>& v) {
    int changes = 0;
    int last = 0;
    for (const auto& x : v) {
        const int s = x > 0 ? 1 : (x < 0 ? -1 : 0);
        if (s == 0) {
            continue;
        }
        if (last != 0 && s != last) {
            ++changes;
        }
        last = s;
    }
    return changes;
}

/// Rescales samples so that the trapezoid integral of value^2 over r is 1.
template <class T>
void normalize_trapezoid(SampledFunction<T>& f) {
    using std::sqrt;
    if (f.value.size() == 1) {
        f.value[0] = T(1);
        return;
    }
    T norm2(0);
    for (std::size_t i = 1; i < f.r.size(); ++i) {
        norm2 += (f.r[i] - f.r[i - 1]) * (f.value[i] * f.value[i] + f.value[i - 1] * f.value[i - 1]) / 2;
    }
    if (!(norm2 > 0)) {
        throw DomainError("cannot normalize a function that vanishes on the whole grid");
    }
    const T scale = 1 / sqrt(norm2);
    for (auto& v : f.value) {
        v *= scale;
    }
}

inline constexpr std::size_t kMinWavefunctionPoints = 64;

/// Evenly spaced u grid covering the bulk of the asymptotic factor
/// u^(Lambda+1) exp(-gamma beta u^4 / 2) with margin for excited states.
template <class T>
std::vector<T> default_u_grid(const ProblemSetup<T>& ps, int n, std::size_t points = 400) {
    using std::pow;
    const T bg = ps.beta * static_cast<T>(ps.reduced.gamma);
    const T u_hi = pow(T(2 * (40 + 4 * n)) / bg, T(0.25)) * T(1.25);
    const T u_lo = ps.u0 * T(1e-3);
    std::vector<T> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = u_lo + (u_hi - u_lo) * T(static_cast<double>(i)) / T(static_cast<double>(points - 1));
    }
    return grid;
}

/// Wavefunction of the state at eps generated from pair k of the recurrence.
///
/// f(u) = exp(-int s_k/lambda_k du) is integrated by cumulative trapezoid from
/// the left grid edge. Simple roots u_r of lambda_k inside the grid are poles
/// of the integrand with residue rho_r = s_k(u_r) / lambda_k'(u_r); their
/// contribution |u - u_r|^(-rho_r) sgn(u - u_r)^m_r (m_r = round(-rho_r)) is
/// applied exactly and only the regular remainder is integrated. Grid points
/// within a relative 1e-6 of a root are moved to that distance.
///
/// The result is R(r) at r = r0 u^2 (rho = u^2 when r0 is not set),
/// R = sqrt(u) u^(Lambda+1) exp(-gamma beta u^4 / 2) f(u), normalized to unit
/// squared trapezoid integral over r.
template <class T>
SampledFunction<T> wavefunction(const ProblemSetup<T>& ps, const T& eps, int k, std::vector<T> u_grid) {
    using std::abs;
    using std::exp;
    using std::log;
    using std::round;
    using std::sqrt;

    if (ps.formulation != Formulation::u_space) {
        throw ParameterError("wavefunction generation needs the u-space formulation");
    }
    if (k < 0) {
        throw ParameterError("wavefunction iteration index must be >= 0");
    }
    if (u_grid.size() < kMinWavefunctionPoints) {
        throw ParameterError("wavefunction grid needs at least " + std::to_string(kMinWavefunctionPoints) +
                             " points");
    }
    for (std::size_t i = 0; i < u_grid.size(); ++i) {
        if (!(u_grid[i] > 0) || (i > 0 && !(u_grid[i] > u_grid[i - 1]))) {
            throw ParameterError("wavefunction grid must be strictly ascending and positive");
        }
    }

    const auto pairs = aim_sequence(ps, eps, k);
    const LaurentPoly<T>& lam = pairs.back().lambda;
    const LaurentPoly<T>& s = pairs.back().s;
    const LaurentPoly<T> dlam = lam.derivative();

    // Roots of lambda_k on the grid.
    struct Pole {
        T at;
        T residue;
        int order;
    };
    std::vector<Pole> poles;
    const auto add_pole = [&](const T& ur) {
        const T slope = dlam(ur);
        if (slope == 0) {
            throw DomainError("lambda_k has a multiple root at u=" + to_string(ur, 12) + "; integrand is singular");
        }
        const T res = s(ur) / slope;
        poles.push_back({ur, res, static_cast<int>(static_cast<long>(round(static_cast<double>(-res))))});
    };
    T prev_val = lam(u_grid.front());
    if (prev_val == 0) {
        add_pole(u_grid.front());
    }
    for (std::size_t i = 1; i < u_grid.size(); ++i) {
        const T cur_val = lam(u_grid[i]);
        if (cur_val == 0) {
            add_pole(u_grid[i]);
        } else if (prev_val != 0 && (cur_val > 0) != (prev_val > 0)) {
            T a = u_grid[i - 1];
            T b = u_grid[i];
            const bool a_pos = prev_val > 0;
            for (int it = 0; it < 200; ++it) {
                const T m = (a + b) / 2;
                if (!(m > a && m < b)) {
                    break;
                }
                const T vm = lam(m);
                if (vm == 0) {
                    a = b = m;
                    break;
                }
                if ((vm > 0) == a_pos) {
                    a = m;
                } else {
                    b = m;
                }
            }
            add_pole((a + b) / 2);
        }
        prev_val = cur_val;
    }

    // Keep grid points away from the poles.
    const T keep_out(1e-6);
    for (const auto& p : poles) {
        for (std::size_t i = 0; i < u_grid.size(); ++i) {
            const T gap = u_grid[i] - p.at;
            if (abs(gap) < keep_out * p.at) {
                const T moved = gap < 0 ? p.at * (1 - keep_out) : p.at * (1 + keep_out);
                const bool ordered = (i == 0 || moved > u_grid[i - 1]) &&
                                     (i + 1 == u_grid.size() || moved < u_grid[i + 1]);
                if (!ordered) {
                    throw DomainError("grid too dense around a root of lambda_k at u=" + to_string(p.at, 12));
                }
                u_grid[i] = moved;
            }
        }
    }

    const auto regular = [&](const T& u) {
        T g = s(u) / lam(u);
        for (const auto& p : poles) {
            g -= p.residue / (u - p.at);
        }
        return g;
    };

    const std::size_t npts = u_grid.size();
    const T lam_big = static_cast<T>(ps.reduced.lambda_big);
    const T gb = static_cast<T>(ps.reduced.gamma) * ps.beta;
    std::vector<T> log_mag(npts);
    std::vector<int> sign(npts, 1);
    T integral(0);
    T g_prev = regular(u_grid[0]);
    for (std::size_t i = 0; i < npts; ++i) {
        const T& u = u_grid[i];
        if (i > 0) {
            const T g = regular(u);
            integral += (u - u_grid[i - 1]) * (g + g_prev) / 2;
            g_prev = g;
        }
        T lm = -integral + (lam_big + T(1.5)) * log(u) - gb * u * u * u * u / 2;
        for (const auto& p : poles) {
            const T d = u - p.at;
            lm -= p.residue * log(abs(d));
            if (d < 0 && (p.order % 2 != 0)) {
                sign[i] = -sign[i];
            }
        }
        if (!is_finite(lm)) {
            throw PrecisionExhausted("wavefunction logarithm overflowed at u=" + to_string(u, 12));
        }
        log_mag[i] = lm;
    }

    const T peak = *std::max_element(log_mag.begin(), log_mag.end());
    const T r0 = ps.reduced.r0 ? static_cast<T>(*ps.reduced.r0) : T(1);
    SampledFunction<T> out;
    out.r.reserve(npts);
    out.value.reserve(npts);
    for (std::size_t i = 0; i < npts; ++i) {
        out.r.push_back(r0 * u_grid[i] * u_grid[i]);
        out.value.push_back(T(sign[i]) * exp(log_mag[i] - peak));
    }
    normalize_trapezoid(out);
    return out;
}

}  // namespace aim
