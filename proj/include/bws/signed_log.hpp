#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace bws {

/// Sign plus natural-log magnitude. Overflow-safe representation for long
/// weight products: multiplication adds log magnitudes, so quantities like
/// w_{n+1}···w_{n+nu} a_{n+nu} stay representable far beyond double range.
/// The zero element has sign 0 and ln_mag == -inf.
struct SignedLog {
    int sign = 0;          // -1, 0, +1
    double ln_mag = -std::numeric_limits<double>::infinity();

    static SignedLog zero() { return SignedLog{}; }
    static SignedLog one() { return SignedLog{1, 0.0}; }

    static SignedLog from_value(double x) {
        if (x == 0.0) return zero();
        return SignedLog{x > 0.0 ? 1 : -1, std::log(std::abs(x))};
    }

    static SignedLog from_ln(int sign, double ln_mag) {
        if (sign == 0) return zero();
        return SignedLog{sign, ln_mag};
    }

    bool is_zero() const { return sign == 0; }
    bool finite() const { return sign == 0 || std::isfinite(ln_mag); }

    /// Exact within double rounding whenever |ln_mag| < ~709.
    double to_real() const {
        if (sign == 0) return 0.0;
        return static_cast<double>(sign) * std::exp(ln_mag);
    }

    SignedLog abs() const { return sign == 0 ? zero() : SignedLog{1, ln_mag}; }

    SignedLog negate() const { return SignedLog{-sign, ln_mag}; }

    SignedLog inverse() const {
        if (sign == 0) return SignedLog{0, std::numeric_limits<double>::infinity()};
        return SignedLog{sign, -ln_mag};
    }
};

inline SignedLog operator*(SignedLog a, SignedLog b) {
    if (a.sign == 0 || b.sign == 0) return SignedLog::zero();
    return SignedLog{a.sign * b.sign, a.ln_mag + b.ln_mag};
}

inline SignedLog operator/(SignedLog a, SignedLog b) {
    if (a.sign == 0) return SignedLog::zero();
    return SignedLog{a.sign * b.sign, a.ln_mag - b.ln_mag};
}

/// Log-sum-exp addition; the larger magnitude is factored out so the
/// result is stable even when both operands are far outside double range.
inline SignedLog operator+(SignedLog a, SignedLog b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    if (b.ln_mag > a.ln_mag) std::swap(a, b);
    const double d = b.ln_mag - a.ln_mag;  // <= 0
    if (a.sign == b.sign) {
        return SignedLog{a.sign, a.ln_mag + std::log1p(std::exp(d))};
    }
    const double m = -std::expm1(d);  // 1 - exp(d) in [0, 1]
    if (m == 0.0) return SignedLog::zero();
    return SignedLog{a.sign, a.ln_mag + std::log(m)};
}

inline SignedLog operator-(SignedLog a, SignedLog b) { return a + b.negate(); }

/// Magnitude comparison uses ln_mag only.
inline bool mag_less(SignedLog a, SignedLog b) { return a.ln_mag < b.ln_mag; }

/// Product of an iterable of reals: sign composes, ln magnitudes add.
/// Empty product is one; a single zero factor makes the product zero.
template <typename Iterable>
SignedLog slog_product(const Iterable& factors) {
    SignedLog acc = SignedLog::one();
    for (double x : factors) {
        if (x == 0.0) return SignedLog::zero();
        if (x < 0.0) acc.sign = -acc.sign;
        acc.ln_mag += std::log(std::abs(x));
    }
    return acc;
}

}  // namespace bws
