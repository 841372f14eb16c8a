#pragma once

// Closed-form bound states for kappa = 0, -1, -2:
//   kappa =  0: A/r^2 - B/r + C          (Kratzer shifted by a constant)
//   kappa = -1: A/r^2 - (B - C)/r        (Coulomb strength reduced to B - C)
//   kappa = -2: (A + C)/r^2 - B/r        (inverse-square strength raised to A + C)
// Each row is a Kratzer problem E = shift - (m b^2 / 2 hbar^2) (n + 1/2 + sqrt((l + 1/2)^2 + 2 m a / hbar^2))^-2
// with eigenfunction N r^(Lambda+1) exp(-decay r) 1F1(-n, 2 Lambda + 2; 2 decay r).

#include "aim/ext_real.hpp"
#include "aim/problems.hpp"
#include "aim/wavefunction.hpp"

#include <string>
#include <vector>

namespace aim {

/// Quantities entering the closed-form row for one (n, l).
struct ClosedForm {
    int kappa = 0;
    ExtReal lambda_cf{0};  ///< -1/2 + sqrt((l + 1/2)^2 + inverse-square strength)
    ExtReal eps_cf{0};     ///< exponential decay rate of the eigenfunction
    ExtReal energy{0};
};

namespace detail {

inline void require_closed_form_kappa(int kappa) {
    if (kappa != 0 && kappa != -1 && kappa != -2) {
        throw ParameterError("closed forms exist for kappa = 0, -1, -2 only; kappa = " + std::to_string(kappa) +
                             " needs the iterative solver");
    }
}

}  // namespace detail

/// Everything the closed-form row gives for (n, l).
inline ClosedForm closed_form(const PotentialParams& p, int n, int l) {
    detail::require_closed_form_kappa(p.kappa);
    validate(p);
    if (n < 0 || l < 0) {
        throw ParameterError("n and l must be >= 0");
    }
    const ExtReal h2 = p.hbar * p.hbar;
    const ExtReal two_m_over_h2 = 2 * p.mass / h2;
    ExtReal coulomb = p.B;  // effective 1/r strength
    ExtReal inverse_square = p.A;
    ExtReal shift(0);
    switch (p.kappa) {
        case 0:
            shift = p.C;
            break;
        case -1:
            if (p.C > p.B) {
                throw ParameterError("kappa = -1 has bound states only for B >= C");
            }
            coulomb = p.B - p.C;
            break;
        default:
            inverse_square = p.A + p.C;
            break;
    }
    ClosedForm cf;
    cf.kappa = p.kappa;
    const ExtReal half(0.5);
    const ExtReal lh = ExtReal(l) + half;
    cf.lambda_cf = -half + sqrt(lh * lh + two_m_over_h2 * inverse_square);
    const ExtReal denom = ExtReal(n) + cf.lambda_cf + 1;
    cf.eps_cf = two_m_over_h2 * coulomb / (2 * denom);
    cf.energy = shift - p.mass * coulomb * coulomb / (2 * h2) / (denom * denom);
    return cf;
}

inline ExtReal exact_energy(const PotentialParams& p, int n, int l) { return closed_form(p, n, l).energy; }

/// Terminating confluent hypergeometric series
/// 1F1(-n; b; x) = sum_{j=0}^{n} (-n)_j / (b)_j x^j / j!.
template <class T>
T kummer_terminating(int neg_n, const T& b, const T& x) {
    using std::floor;
    if (neg_n > 0) {
        throw ParameterError("kummer_terminating needs a non-positive first argument");
    }
    if (b <= 0 && floor(b) == b) {
        throw DomainError("1F1 second argument is a non-positive integer (pole)");
    }
    const int n = -neg_n;
    T term(1);
    T sum(1);
    for (int j = 0; j < n; ++j) {
        // ratio of consecutive terms: (j - n) x / ((b + j)(j + 1))
        term *= T(j - n) * x / ((b + T(j)) * T(j + 1));
        sum += term;
    }
    return sum;
}

/// Samples of N r^(Lambda+1) exp(-eps r) 1F1(-n, 2 Lambda + 2; 2 eps r) on r_grid,
/// normalized to unit squared trapezoid integral over the grid.
inline SampledFunction<ExtReal> exact_wavefunction(const PotentialParams& p, int n, int l,
                                                    const std::vector<ExtReal>& r_grid) {
    const ClosedForm cf = closed_form(p, n, l);
    if (!(cf.eps_cf > 0)) {
        throw ParameterError("no normalizable bound state (decay rate is zero)");
    }
    if (r_grid.empty()) {
        throw ParameterError("wavefunction grid is empty");
    }
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > 0) || (i > 0 && !(r_grid[i] > r_grid[i - 1]))) {
            throw ParameterError("wavefunction grid must be strictly ascending and positive");
        }
    }
    const ExtReal b = 2 * cf.lambda_cf + 2;
    SampledFunction<ExtReal> out;
    out.r = r_grid;
    out.value.reserve(r_grid.size());
    for (const auto& r : r_grid) {
        out.value.push_back(pow(r, cf.lambda_cf + 1) * exp(-cf.eps_cf * r) *
                            kummer_terminating(-n, b, 2 * cf.eps_cf * r));
    }
    normalize_trapezoid(out);
    return out;
}

}  // namespace aim
