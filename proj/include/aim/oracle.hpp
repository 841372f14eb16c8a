#pragma once

// Independent eigenvalue oracle: Numerov integration of the radial equation
//   R'' = [2m/hbar^2 (A/r^2 - B/r + C r^kappa - E) + l(l+1)/r^2] R
// on a uniform grid, with node-count bisection followed by refinement on the
// Casoratian of the outward and inward solutions at the matching point.

#include "aim/ext_real.hpp"
#include "aim/problems.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace aim {

struct GridSpec {
    double r_min = 1e-4;
    double r_max = 40;
    int points = 20000;

    double spacing() const { return (r_max - r_min) / (points - 1); }
};

inline void validate(const GridSpec& g) {
    if (!(g.r_min > 0) || !(g.r_max > g.r_min)) {
        throw ParameterError("grid needs 0 < r_min < r_max");
    }
    if (g.points < 1000) {
        throw ParameterError("grid needs at least 1000 points");
    }
}

/// Box large enough for the (n, l) state of `p`, sized from the Coulomb and
/// confinement length scales.
inline GridSpec default_grid(const PotentialParams& p, int n, int l, int points = 40000) {
    const double m = static_cast<double>(p.mass);
    const double h2 = static_cast<double>(p.hbar * p.hbar);
    double coulomb = static_cast<double>(p.B);
    double inv_sq = static_cast<double>(p.A);
    if (p.kappa == -1) {
        coulomb -= static_cast<double>(p.C);
    } else if (p.kappa == -2) {
        inv_sq += static_cast<double>(p.C);
    }
    const double lp = -0.5 + std::sqrt((l + 0.5) * (l + 0.5) + 2 * m * inv_sq / h2);
    const double n_tot = n + lp + 1;

    double r_max = 1e300;
    if (coulomb > 0) {
        const double a0 = h2 / (m * coulomb);
        r_max = a0 * (2 * n_tot * n_tot + 30 * n_tot);
    }
    const double c = static_cast<double>(p.C);
    if (p.kappa > 0 && c > 0) {
        const double scale = std::pow(h2 / (2 * m * c), 1.0 / (p.kappa + 2));
        const double reach = p.kappa == 2 ? std::sqrt(2 * (2 * n + lp + 1.5)) + 7
                                          : std::pow(1.5 * M_PI * (n + 0.5 * lp + 1), 2.0 / 3) * 1.3 + 9;
        r_max = std::min(r_max, scale * reach);
    }
    if (!(r_max < 1e300)) {
        throw ParameterError("potential has no bound states to size a grid for");
    }
    GridSpec g;
    g.r_max = r_max;
    g.r_min = r_max * 1e-6;
    g.points = points;
    return g;
}

namespace detail {

class NumerovProblem {
  public:
    NumerovProblem(const PotentialParams& p, int l, const GridSpec& g) : grid_(g), h_(g.spacing()) {
        validate(p);
        validate(g);
        const double m = static_cast<double>(p.mass);
        const double h2 = static_cast<double>(p.hbar * p.hbar);
        k_ = 2 * m / h2;
        const double A = static_cast<double>(p.A);
        const double B = static_cast<double>(p.B);
        const double C = static_cast<double>(p.C);
        double inv_sq = A;
        double coulomb = B;
        if (p.kappa == -2) {
            inv_sq += C;
        } else if (p.kappa == -1) {
            coulomb -= C;
        }
        const double lp = -0.5 + std::sqrt((l + 0.5) * (l + 0.5) + k_ * inv_sq);
        a_ = lp + 1;
        c1_ = -k_ * coulomb / (2 * a_);
        r_.resize(static_cast<std::size_t>(g.points));
        w_.resize(r_.size());
        for (std::size_t i = 0; i < r_.size(); ++i) {
            const double r = g.r_min + h_ * static_cast<double>(i);
            r_[i] = r;
            const double v = A / (r * r) - B / r + C * std::pow(r, p.kappa);
            w_[i] = k_ * v + l * (l + 1) / (r * r);
        }
    }

    std::size_t size() const { return r_.size(); }
    double lowest_potential() const { return *std::min_element(w_.begin(), w_.end()) / k_; }

    /// Sign changes of the outward solution over the grid.
    int nodes(double e) const {
        std::vector<double> y;
        const std::size_t start = outward(e, y, r_.size() - 1);
        int count = 0;
        int last = 0;
        for (std::size_t i = start; i < y.size(); ++i) {
            const int s = y[i] > 0 ? 1 : (y[i] < 0 ? -1 : 0);
            if (s != 0 && last != 0 && s != last) {
                ++count;
            }
            if (s != 0) {
                last = s;
            }
        }
        return count;
    }

    /// Casoratian of the Numerov-transformed outward and inward solutions at the
    /// matching index; it vanishes exactly at discrete eigenvalues.
    double mismatch(double e, std::size_t match) const {
        std::vector<double> yo;
        std::vector<double> yi;
        outward(e, yo, match + 1);
        inward(e, yi, match);
        const double fo0 = f(e, match) * yo[match];
        const double fo1 = f(e, match + 1) * yo[match + 1];
        const double fi0 = f(e, match) * yi[match];
        const double fi1 = f(e, match + 1) * yi[match + 1];
        const double so = std::max(std::abs(fo0), std::abs(fo1));
        const double si = std::max(std::abs(fi0), std::abs(fi1));
        return (fo1 / so) * (fi0 / si) - (fi1 / si) * (fo0 / so);
    }

    /// Index of the outermost classically allowed point, kept off the grid ends.
    std::size_t matching_index(double e) const {
        std::size_t m = r_.size() / 2;
        for (std::size_t i = r_.size() - 1; i > 0; --i) {
            if (w_[i] - k_ * e < 0) {
                m = i;
                break;
            }
        }
        return std::clamp<std::size_t>(m, 4, r_.size() - 4);
    }

  private:
    double q(double e, std::size_t i) const { return w_[i] - k_ * e; }
    double f(double e, std::size_t i) const { return 1 - h_ * h_ * q(e, i) / 12; }

    static void rescale(std::vector<double>& y, std::size_t from, std::size_t to) {
        for (std::size_t j = from; j <= to; ++j) {
            y[j] *= 1e-200;
        }
    }

    // Integrates outward through index `last`; returns the first index with a
    // meaningful value. Points deep inside the centrifugal barrier, where the
    // Numerov weights lose positivity, are left at zero.
    std::size_t outward(double e, std::vector<double>& y, std::size_t last) const {
        y.assign(last + 1, 0.0);
        std::size_t i0 = 0;
        while (i0 + 2 < r_.size() && h_ * h_ * q(e, i0) / 12 > 0.25) {
            ++i0;
        }
        const auto regular = [&](std::size_t i) { return std::pow(r_[i], a_) * (1 + c1_ * r_[i]); };
        y[i0] = regular(i0);
        y[i0 + 1] = regular(i0 + 1);
        if (i0 > 0 || y[i0] <= 0 || y[i0 + 1] <= 0) {
            // Coulomb correction is only valid near the origin.
            y[i0] = std::pow(r_[i0], a_);
            y[i0 + 1] = std::pow(r_[i0 + 1], a_);
        }
        std::size_t scaled_from = i0;
        for (std::size_t i = i0 + 1; i < last; ++i) {
            y[i + 1] = ((12 - 10 * f(e, i)) * y[i] - f(e, i - 1) * y[i - 1]) / f(e, i + 1);
            if (std::abs(y[i + 1]) > 1e200) {
                rescale(y, scaled_from, i + 1);
            }
        }
        return i0;
    }

    void inward(double e, std::vector<double>& y, std::size_t first) const {
        const std::size_t n = r_.size();
        y.assign(n, 0.0);
        y[n - 1] = 0;
        y[n - 2] = 1e-200;
        for (std::size_t i = n - 2; i > first; --i) {
            y[i - 1] = ((12 - 10 * f(e, i)) * y[i] - f(e, i + 1) * y[i + 1]) / f(e, i - 1);
            if (std::abs(y[i - 1]) > 1e200) {
                for (std::size_t j = i - 1; j < n; ++j) {
                    y[j] *= 1e-200;
                }
            }
        }
    }

    GridSpec grid_;
    double h_;
    double k_ = 2;
    double a_ = 1;
    double c1_ = 0;
    std::vector<double> r_;
    std::vector<double> w_;
};

}  // namespace detail

/// Energy of the (n, l) state with R(r_min) ~ r_min^(l'+1) and R(r_max) = 0.
inline ExtReal numerov_eigenvalue(const PotentialParams& p, int n, int l, const GridSpec& grid) {
    if (n < 0 || l < 0) {
        throw ParameterError("n and l must be >= 0");
    }
    const detail::NumerovProblem prob(p, l, grid);

    double lo = prob.lowest_potential();
    if (prob.nodes(lo) > n) {
        throw DomainError("node count already exceeds n at the potential minimum; grid too coarse");
    }
    double span = std::max(1.0, std::abs(lo));
    double hi = lo + span;
    int expansions = 0;
    while (prob.nodes(hi) <= n) {
        lo = hi;
        span *= 2;
        hi = lo + span;
        if (++expansions > 200 || !std::isfinite(hi)) {
            throw DomainError("energy search window too small: node count " + std::to_string(n + 1) +
                              " never reached");
        }
    }
    // lo has <= n nodes, hi has > n nodes
    for (int it = 0; it < 200 && hi - lo > 1e-7 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (prob.nodes(mid) <= n) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const std::size_t match = prob.matching_index(0.5 * (lo + hi));
    double m_lo = prob.mismatch(lo, match);
    const double m_hi = prob.mismatch(hi, match);
    if ((m_lo > 0) == (m_hi > 0)) {
        // node bracket is already at the resolution limit
        return ExtReal(0.5 * (lo + hi));
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) {
            break;
        }
        const double mm = prob.mismatch(mid, match);
        if (mm == 0) {
            return ExtReal(mid);
        }
        if ((mm > 0) == (m_lo > 0)) {
            lo = mid;
            m_lo = mm;
        } else {
            hi = mid;
        }
    }
    return ExtReal(0.5 * (lo + hi));
}

inline ExtReal numerov_eigenvalue(const PotentialParams& p, int n, int l) {
    return numerov_eigenvalue(p, n, l, default_grid(p, n, l));
}

/// Result of the grid-doubling check.
struct ResolutionCheck {
    ExtReal energy{0};          ///< value on the doubled grid
    ExtReal shift{0};           ///< |E(2N) - E(N)|
    bool resolution_warning = false;  ///< shift above 1e-6 (relative to max(1, |E|))
};

inline ResolutionCheck numerov_with_resolution_check(const PotentialParams& p, int n, int l, GridSpec grid) {
    const ExtReal coarse = numerov_eigenvalue(p, n, l, grid);
    grid.points = 2 * grid.points - 1;
    ResolutionCheck out;
    out.energy = numerov_eigenvalue(p, n, l, grid);
    out.shift = abs(out.energy - coarse);
    const ExtReal scale = abs(out.energy) > 1 ? ExtReal(abs(out.energy)) : ExtReal(1);
    out.resolution_warning = out.shift > ExtReal(1e-6) * scale;
    return out;
}

struct CompareReport {
    bool pass = false;
    ExtReal abs_delta{0};
    ExtReal rel_delta{0};
};

/// pass iff |d| <= abs_tol or |d| / max(|oracle|, abs_tol) <= rel_tol.
inline CompareReport compare(const ExtReal& candidate, const ExtReal& oracle, const ExtReal& rel_tol,
                             const ExtReal& abs_tol) {
    if (!(rel_tol > 0) || !(abs_tol > 0)) {
        throw ParameterError("tolerances must be > 0");
    }
    CompareReport r;
    r.abs_delta = abs(candidate - oracle);
    const ExtReal ao = abs(oracle);
    r.rel_delta = r.abs_delta / (ao > abs_tol ? ao : abs_tol);
    r.pass = r.abs_delta <= abs_tol || r.rel_delta <= rel_tol;
    return r;
}

}  // namespace aim
