#pragma once

// Extended-precision scalar used throughout the solver, plus the error types
// shared by every module.

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace aim {

using ExtReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                              boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultPrecisionBits = 192;
inline constexpr unsigned kMinPrecisionBits = 53;

/// Base of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A mathematical precondition was violated (e.g. evaluation at u0 <= 0).
struct DomainError : Error {
    using Error::Error;
};

/// Parameters outside the physically meaningful range or inconsistent with
/// the requested operation.
struct ParameterError : Error {
    using Error::Error;
};

/// Working precision is no longer sufficient to resolve the computation.
struct PrecisionExhausted : Error {
    using Error::Error;
};

/// Root tracking lost its sign change.
struct BracketLost : Error {
    using Error::Error;
};

namespace detail {

// boost expresses mpfr precision in decimal digits; pick the smallest digit
// count whose binary width covers the requested bits.
inline unsigned digits10_for_bits(unsigned bits) {
    unsigned d = 1;
    while (boost::multiprecision::detail::digits10_2_2(d) < bits) {
        ++d;
    }
    return d;
}

}  // namespace detail

inline unsigned precision_bits(const ExtReal& x) {
    return static_cast<unsigned>(mpfr_get_prec(x.backend().data()));
}

/// Significand width (bits) that newly created ExtReal values receive.
inline unsigned working_precision_bits() {
    return static_cast<unsigned>(
        boost::multiprecision::detail::digits10_2_2(ExtReal::default_precision()));
}

/// Sets the process-wide working precision for the lifetime of the object.
///
/// All ExtReal values created inside the scope (including temporaries of
/// arithmetic) carry at least `bits` of significand, so every binary
/// operation runs at one common precision.
class PrecisionScope {
  public:
    explicit PrecisionScope(unsigned bits) : saved_(ExtReal::default_precision()) {
        if (bits < kMinPrecisionBits) {
            throw ParameterError("precision must be at least 53 bits, got " + std::to_string(bits));
        }
        ExtReal::default_precision(detail::digits10_for_bits(bits));
    }
    ~PrecisionScope() { ExtReal::default_precision(saved_); }

    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

  private:
    unsigned saved_;
};

/// Reads AIM_PRECISION_BITS, falling back to the library default.
inline unsigned precision_from_env() {
    if (const char* v = std::getenv("AIM_PRECISION_BITS"); v != nullptr && *v != '\0') {
        char* end = nullptr;
        const long bits = std::strtol(v, &end, 10);
        if (end != nullptr && *end == '\0' && bits >= static_cast<long>(kMinPrecisionBits)) {
            return static_cast<unsigned>(bits);
        }
        throw ParameterError(std::string("AIM_PRECISION_BITS must be an integer >= 53, got '") + v +
                             "'");
    }
    return kDefaultPrecisionBits;
}

template <class T>
bool is_finite(const T& x) {
    using std::isfinite;
    using boost::multiprecision::isfinite;
    return isfinite(x);
}

/// Decimal rendering with `digits` significant digits.
template <class T>
std::string to_string(const T& x, int digits = 10) {
    if constexpr (std::is_floating_point_v<T>) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", digits, static_cast<double>(x));
        return buf;
    } else {
        return x.str(digits, std::ios_base::fmtflags{});
    }
}

}  // namespace aim
