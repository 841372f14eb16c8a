#pragma once

// Physical potential parameters, their dimensionless reduction, and the
// AIM-ready ODE f'' = lambda0 f' + s0 f for the kappa = 1, 2 members of
// V(r) = A/r^2 - B/r + C r^kappa.

#include "aim/ext_real.hpp"
#include "aim/laurent_poly.hpp"

#include <optional>
#include <string>

namespace aim {

/// Physical inputs of V(r) = A/r^2 - B/r + C r^kappa.
struct PotentialParams {
    ExtReal A{0};
    ExtReal B{1};
    ExtReal C{0};
    int kappa = 2;
    ExtReal mass{1};
    ExtReal hbar{1};
};

inline void validate(const PotentialParams& p) {
    if (p.kappa < -2 || p.kappa > 2) {
        throw ParameterError("kappa must be one of -2, -1, 0, 1, 2; got " + std::to_string(p.kappa));
    }
    if (p.A < 0) {
        throw ParameterError("A must be >= 0");
    }
    if (p.C < 0) {
        throw ParameterError("C must be >= 0 (only the confining branch is supported)");
    }
    if (!(p.mass > 0) || !(p.hbar > 0)) {
        throw ParameterError("mass and hbar must be positive");
    }
}

/// Dimensionless form of the radial problem in rho = r / r0.
struct ReducedParams {
    ExtReal a_tilde{0};     ///< 2 m A / hbar^2
    ExtReal gamma{0};       ///< gamma^2 = 2 m C r0^(kappa+2) / hbar^2, stored as the positive root
    ExtReal l_prime{0};     ///< -1/2 + sqrt((l + 1/2)^2 + a_tilde)
    ExtReal lambda_big{0};  ///< 2 l' + 1/2, the centrifugal index after rho = u^2
    std::optional<ExtReal> r0;  ///< hbar^2 / (2 m B); absent in the direct reduced mode
    int l = 0;
};

/// l' = -1/2 + sqrt((l + 1/2)^2 + a_tilde).
inline ExtReal effective_l(int l, const ExtReal& a_tilde) {
    const ExtReal half(0.5);
    const ExtReal lh = ExtReal(l) + half;
    return -half + sqrt(lh * lh + a_tilde);
}

/// Builds reduced parameters directly from (a_tilde, gamma); covers B = 0
/// members of the family, for which r0 is undefined.
inline ReducedParams reduced_from(const ExtReal& a_tilde, const ExtReal& gamma, int l) {
    if (l < 0) {
        throw ParameterError("l must be >= 0");
    }
    if (a_tilde < 0) {
        throw ParameterError("a_tilde must be >= 0");
    }
    if (gamma < 0) {
        throw ParameterError("gamma must be >= 0");
    }
    ReducedParams r;
    r.a_tilde = a_tilde;
    r.gamma = gamma;
    r.l = l;
    r.l_prime = effective_l(l, a_tilde);
    r.lambda_big = 2 * r.l_prime + ExtReal(0.5);
    return r;
}

/// Physical -> reduced units with r0 = hbar^2 / (2 m B).
inline ReducedParams reduce(const PotentialParams& p, int l) {
    validate(p);
    if (!(p.B > 0)) {
        throw ParameterError(
            "B must be > 0 for the physical-to-reduced scaling (r0 = hbar^2/2mB); "
            "supply reduced parameters directly instead");
    }
    const ExtReal h2 = p.hbar * p.hbar;
    const ExtReal r0 = h2 / (2 * p.mass * p.B);
    const ExtReal a_tilde = 2 * p.mass * p.A / h2;
    const ExtReal gamma = sqrt(2 * p.mass * p.C * pow(r0, p.kappa + 2) / h2);
    ReducedParams r = reduced_from(a_tilde, gamma, l);
    r.r0 = r0;
    return r;
}

/// E = 2 m B^2 eps / hbar^2.
inline ExtReal to_physical(const ExtReal& epsilon, const PotentialParams& p) {
    if (!(p.B > 0)) {
        throw ParameterError("B must be > 0 to convert reduced energies to physical units");
    }
    return 2 * p.mass * p.B * p.B * epsilon / (p.hbar * p.hbar);
}

/// eps = hbar^2 E / (2 m B^2).
inline ExtReal to_reduced_energy(const ExtReal& energy, const PotentialParams& p) {
    if (!(p.B > 0)) {
        throw ParameterError("B must be > 0 to convert physical energies to reduced units");
    }
    return p.hbar * p.hbar * energy / (2 * p.mass * p.B * p.B);
}

inline ExtReal default_beta(int kappa) { return kappa == 1 ? ExtReal(0.5) : ExtReal(1); }

/// Which variable the ODE is written in.
enum class Formulation {
    u_space,    ///< rho = u^2, R = sqrt(u) phi(u); the production formulation
    rho_space,  ///< direct rho-space ODE; kept to exhibit the oscillating traces
};

/// f'' = lambda0(u) f' + s0(u; eps) f with s0 affine in eps:
/// s0(u; eps) = s0_base(u) + eps * s0_eps(u).
///
/// The pivot u0 is the positive root of lambda0, i.e. the maximum of the
/// asymptotic factor of the wavefunction.
template <class T = ExtReal>
struct ProblemSetup {
    int kappa = 2;
    Formulation formulation = Formulation::u_space;
    T beta{1};
    T u0{1};
    ReducedParams reduced;
    LaurentPoly<T> lambda0;
    LaurentPoly<T> s0_base;
    LaurentPoly<T> s0_eps;

    LaurentPoly<T> s0(const T& eps) const { return s0_base + eps * s0_eps; }

    /// Same problem in another scalar type (e.g. the fast double path).
    template <class U>
    ProblemSetup<U> as() const {
        auto conv = [](const LaurentPoly<T>& p) {
            std::vector<U> c;
            c.reserve(p.size());
            for (const auto& x : p.coeffs()) {
                c.push_back(static_cast<U>(x));
            }
            return LaurentPoly<U>(p.min_exp(), std::move(c));
        };
        ProblemSetup<U> out;
        out.kappa = kappa;
        out.formulation = formulation;
        out.beta = static_cast<U>(beta);
        out.u0 = static_cast<U>(u0);
        out.reduced = reduced;
        out.lambda0 = conv(lambda0);
        out.s0_base = conv(s0_base);
        out.s0_eps = conv(s0_eps);
        return out;
    }
};

/// u-space ODE for kappa in {1, 2} with phi(u) = u^(Lambda+1) exp(-gamma beta u^4 / 2) f(u):
///   lambda0 = 2 (2 beta gamma u^3 - (Lambda + 1)/u)
///   s0 (kappa=1) = (4 beta gamma Lambda + 10 beta gamma - 4 eps) u^2 - 4 beta^2 gamma^2 u^6 - 4 + 4 gamma^2 u^4
///   s0 (kappa=2) = (4 beta gamma Lambda + 10 beta gamma - 4 eps) u^2 + (4 gamma^2 - 4 beta^2 gamma^2) u^6 - 4
inline ProblemSetup<ExtReal> setup(const ReducedParams& red, int kappa, const ExtReal& beta) {
    if (kappa != 1 && kappa != 2) {
        throw ParameterError("the iterative solver handles kappa = 1 or 2; kappa = " + std::to_string(kappa) +
                             " has closed-form solutions (use the analytic module)");
    }
    if (!(beta > 0)) {
        throw ParameterError("beta must be > 0");
    }
    if (!(red.gamma > 0)) {
        throw ParameterError(
            "gamma = 0 leaves the pivot undefined; C = 0 is the Kratzer case, use the analytic module");
    }
    const ExtReal& g = red.gamma;
    const ExtReal& L = red.lambda_big;
    const ExtReal bg = beta * g;

    ProblemSetup<ExtReal> s;
    s.kappa = kappa;
    s.formulation = Formulation::u_space;
    s.beta = beta;
    s.reduced = red;
    // exponents -1 .. 3
    s.lambda0 = LaurentPoly<ExtReal>(-1, {-2 * (L + 1), ExtReal(0), ExtReal(0), ExtReal(0), 4 * bg});

    const ExtReal c2 = 4 * bg * L + 10 * bg;
    const ExtReal c6_beta = -4 * bg * bg;
    const ExtReal four_g2 = 4 * g * g;
    std::vector<ExtReal> base(7, ExtReal(0));  // exponents 0 .. 6
    base[0] = ExtReal(-4);
    base[2] = c2;
    if (kappa == 1) {
        base[4] = four_g2;
        base[6] = c6_beta;
    } else {
        base[6] = four_g2 + c6_beta;
    }
    s.s0_base = LaurentPoly<ExtReal>(0, std::move(base));
    s.s0_eps = LaurentPoly<ExtReal>::monomial(ExtReal(-4), 2);
    s.u0 = pow((L + 1) / (2 * bg), ExtReal(0.25));
    return s;
}

inline ProblemSetup<ExtReal> setup(const ReducedParams& red, int kappa) {
    return setup(red, kappa, default_beta(kappa));
}

/// The kappa = 2 problem written directly in rho (no u = sqrt(rho) step),
/// with R(rho) = rho^(l'+1) exp(-beta gamma rho^2 / 2) f(rho):
///   lambda0 = 2 (beta gamma rho - (l' + 1)/rho)
///   s0 = beta gamma (2 l' + 3) - eps - 1/rho + (gamma^2 - beta^2 gamma^2) rho^2
/// The pivot is rho0 = sqrt((l' + 1)/(beta gamma)).
inline ProblemSetup<ExtReal> setup_rho_space(const ReducedParams& red, const ExtReal& beta) {
    if (!(beta > 0) || !(red.gamma > 0)) {
        throw ParameterError("rho-space setup needs beta > 0 and gamma > 0");
    }
    const ExtReal& g = red.gamma;
    const ExtReal a = red.l_prime + 1;
    const ExtReal bg = beta * g;

    ProblemSetup<ExtReal> s;
    s.kappa = 2;
    s.formulation = Formulation::rho_space;
    s.beta = beta;
    s.reduced = red;
    s.lambda0 = LaurentPoly<ExtReal>(-1, {-2 * a, ExtReal(0), 2 * bg});
    s.s0_base = LaurentPoly<ExtReal>(-1, {ExtReal(-1), bg * (2 * a + 1), ExtReal(0), g * g - bg * bg});
    s.s0_eps = LaurentPoly<ExtReal>::constant(ExtReal(-1));
    s.u0 = sqrt(a / bg);
    return s;
}

}  // namespace aim
