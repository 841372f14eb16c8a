#pragma once

// Univariate Laurent polynomials in u with dense coefficient storage.

#include "aim/ext_real.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace aim {

/// Polynomial in u with integer (possibly negative) exponents.
///
/// coeffs()[i] multiplies u^(min_exp() + i). After construction the first and
/// last stored coefficients are nonzero; the zero polynomial is empty with
/// min_exp() == 0. Only exact zeros are trimmed.
template <class T>
class LaurentPoly {
  public:
    LaurentPoly() = default;

    LaurentPoly(int min_exp, std::vector<T> coeffs) : min_exp_(min_exp), coeffs_(std::move(coeffs)) {
        normalize();
    }

    static LaurentPoly monomial(T c, int exp) { return LaurentPoly(exp, std::vector<T>{std::move(c)}); }
    static LaurentPoly constant(T c) { return monomial(std::move(c), 0); }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    int min_exp() const noexcept { return min_exp_; }
    /// Highest exponent; equals min_exp() - 1 for the zero polynomial.
    int max_exp() const noexcept { return min_exp_ + static_cast<int>(coeffs_.size()) - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    std::span<const T> coeffs() const noexcept { return coeffs_; }

    /// Coefficient of u^exp (zero outside the stored range).
    T coeff(int exp) const {
        if (is_zero() || exp < min_exp_ || exp > max_exp()) {
            return T(0);
        }
        return coeffs_[static_cast<std::size_t>(exp - min_exp_)];
    }

    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& c : r.coeffs_) {
            c = -c;
        }
        return r;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, false); }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, true); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        // Iterate the sparser factor in the outer loop; s0 and lambda0 have
        // only a handful of nonzero terms.
        const LaurentPoly& outer = a.nonzero_count() <= b.nonzero_count() ? a : b;
        const LaurentPoly& inner = &outer == &a ? b : a;
        std::vector<T> out(a.size() + b.size() - 1, T(0));
        T tmp;
        for (std::size_t i = 0; i < outer.size(); ++i) {
            const T& ci = outer.coeffs_[i];
            if (ci == 0) {
                continue;
            }
            for (std::size_t j = 0; j < inner.size(); ++j) {
                tmp = ci;
                tmp *= inner.coeffs_[j];
                out[i + j] += tmp;
            }
        }
        return LaurentPoly(a.min_exp_ + b.min_exp_, std::move(out));
    }

    friend LaurentPoly operator*(const T& s, const LaurentPoly& p) {
        if (s == 0) {
            return {};
        }
        LaurentPoly r = p;
        for (auto& c : r.coeffs_) {
            c *= s;
        }
        r.normalize();
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.min_exp_ == b.min_exp_ && a.coeffs_ == b.coeffs_;
    }

    /// d/du; c*u^e maps to c*e*u^(e-1).
    LaurentPoly derivative() const {
        if (is_zero()) {
            return {};
        }
        std::vector<T> out(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            const int e = min_exp_ + static_cast<int>(i);
            out[i] = coeffs_[i] * T(e);
        }
        return LaurentPoly(min_exp_ - 1, std::move(out));
    }

    /// Value at u0. Horner on the nonnegative powers in u0 and on the negative
    /// powers in 1/u0. Throws DomainError for u0 <= 0 when negative exponents
    /// are present.
    T operator()(const T& u0) const {
        if (is_zero()) {
            return T(0);
        }
        if (min_exp_ < 0 && !(u0 > 0)) {
            throw DomainError("Laurent polynomial with negative exponents evaluated at u0 <= 0");
        }
        const int top = max_exp();
        T pos(0);
        for (int e = top; e >= std::max(0, min_exp_); --e) {
            pos *= u0;
            pos += coeff_at(e);
        }
        if (min_exp_ > 0) {
            for (int e = 0; e < min_exp_; ++e) {
                pos *= u0;
            }
        }
        if (min_exp_ >= 0) {
            return pos;
        }
        const T inv = T(1) / u0;
        T neg(0);
        for (int e = min_exp_; e <= std::min(-1, top); ++e) {
            neg += coeff_at(e);
            neg *= inv;
        }
        if (top < -1) {
            for (int e = top; e < -1; ++e) {
                neg *= inv;
            }
        }
        return pos + neg;
    }

  private:
    const T& coeff_at(int e) const { return coeffs_[static_cast<std::size_t>(e - min_exp_)]; }

    std::size_t nonzero_count() const {
        return static_cast<std::size_t>(
            std::count_if(coeffs_.begin(), coeffs_.end(), [](const T& c) { return c != 0; }));
    }

    static LaurentPoly combine(const LaurentPoly& a, const LaurentPoly& b, bool subtract) {
        if (b.is_zero()) {
            return a;
        }
        if (a.is_zero()) {
            return subtract ? -b : b;
        }
        const int lo = std::min(a.min_exp_, b.min_exp_);
        const int hi = std::max(a.max_exp(), b.max_exp());
        std::vector<T> out(static_cast<std::size_t>(hi - lo + 1), T(0));
        for (std::size_t i = 0; i < a.size(); ++i) {
            out[static_cast<std::size_t>(a.min_exp_ - lo) + i] = a.coeffs_[i];
        }
        for (std::size_t i = 0; i < b.size(); ++i) {
            auto& slot = out[static_cast<std::size_t>(b.min_exp_ - lo) + i];
            if (subtract) {
                slot -= b.coeffs_[i];
            } else {
                slot += b.coeffs_[i];
            }
        }
        return LaurentPoly(lo, std::move(out));
    }

    void normalize() {
        auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const T& c) { return c != 0; });
        if (first == coeffs_.end()) {
            coeffs_.clear();
            min_exp_ = 0;
            return;
        }
        auto last = std::find_if(coeffs_.rbegin(), coeffs_.rend(), [](const T& c) { return c != 0; });
        coeffs_.erase(last.base(), coeffs_.end());
        min_exp_ += static_cast<int>(first - coeffs_.begin());
        coeffs_.erase(coeffs_.begin(), first);
    }

    int min_exp_ = 0;
    std::vector<T> coeffs_;
};

template <class T>
LaurentPoly<T> add(const LaurentPoly<T>& a, const LaurentPoly<T>& b) {
    return a + b;
}

template <class T>
LaurentPoly<T> mul(const LaurentPoly<T>& a, const LaurentPoly<T>& b) {
    return a * b;
}

template <class T>
LaurentPoly<T> differentiate(const LaurentPoly<T>& p) {
    return p.derivative();
}

template <class T>
T evaluate(const LaurentPoly<T>& p, const T& u0) {
    return p(u0);
}

}  // namespace aim
