#ifndef BDMC_SCALAR_FN_HPP
#define BDMC_SCALAR_FN_HPP

// Scalar functions linking binary entropy to the Bhattacharyya function.
//
//   ent(q)  = -q log2 q - (1-q) log2 (1-q)
//   bh(q)   = 2 sqrt(q (1-q))
//   phi(u)  = ent((1 - sqrt(1-u^2)) / 2),   so that phi(bh(q)) == ent(q)
//   psi(w)  = phi(sqrt(w))
//
// Derivatives are written in terms of v = sqrt(1-u^2) and the natural
// inverse hyperbolic tangent:
//
//   phi'(u)/u = atanh(v) / (v ln 2)       = (1 + sum_{n>=1} v^2n/(2n+1)) / ln 2
//   phi''(u)  = (atanh(v) - v)/(v^3 ln 2) = (1/3 + sum_{n>=1} v^2n/(2n+3)) / ln 2
//
// The series forms are used for v < series_threshold, where the closed forms
// cancel badly.

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "bdmc/errors.hpp"

namespace bdmc {

// A real number in [0, 1]. Construction from a double validates the range, so
// every scalar function below rejects out-of-range arguments uniformly.
class UnitScalar {
public:
    // NOLINTNEXTLINE(google-explicit-constructor)
    UnitScalar(double value) : value_(value)
    {
        if (!(value >= 0.0 && value <= 1.0)) {
            std::ostringstream os;
            os.precision(17);
            os << "value " << value << " outside [0, 1]";
            throw domain_error(os.str());
        }
    }

    [[nodiscard]] double value() const noexcept { return value_; }
    explicit operator double() const noexcept { return value_; }

private:
    double value_;
};

inline constexpr double log2e = std::numbers::log2e;  // 1 / ln 2
inline constexpr double series_threshold = 0.25;
inline constexpr double series_cutoff = 1e-18;

namespace detail {

inline double clamp01(double x) noexcept
{
    return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
}

// sum_{n>=1} v^(2n) / (2n + offset), truncated at the first term below
// series_cutoff. Only called with v < series_threshold.
inline double even_power_series(double v, int offset) noexcept
{
    const double v2 = v * v;
    double power = v2;
    double sum = 0.0;
    for (int n = 1; power > 0.0; ++n) {
        const double term = power / (2.0 * n + offset);
        sum += term;
        if (term < series_cutoff) {
            break;
        }
        power *= v2;
    }
    return sum;
}

// v = sqrt(1 - u^2) without the cancellation of 1 - u*u near u = 1.
inline double complement_root(double u) noexcept
{
    return std::sqrt((1.0 - u) * (1.0 + u));
}

// atanh(v) given gap = 1 - v computed independently. Near v = 1 the gap
// carries the digits that 1 - v would lose.
inline double atanh_with_gap(double v, double gap) noexcept
{
    return 0.5 * (std::log1p(v) - std::log(gap));
}

// The smaller preimage q of u under bh, i.e. (1 - sqrt(1-u^2)) / 2, in the
// cancellation-free form u^2 / (2 (1 + v)).
inline double lower_preimage(double u) noexcept
{
    const double v = complement_root(u);
    return u * u / (2.0 * (1.0 + v));
}

}  // namespace detail

/// Binary entropy in bits. ent(0) == ent(1) == 0.
inline double ent(UnitScalar q)
{
    const double x = q.value();
    if (x == 0.0 || x == 1.0) {
        return 0.0;
    }
    const double y = 1.0 - x;
    return detail::clamp01(-x * std::log2(x) - y * std::log2(y));
}

/// Bhattacharyya function 2 sqrt(q(1-q)).
inline double bh(UnitScalar q)
{
    const double x = q.value();
    return detail::clamp01(2.0 * std::sqrt(x * (1.0 - x)));
}

/// Inverse of bh on its increasing branch; the result lies in [0, 1/2].
inline double bh_inv(UnitScalar z)
{
    return detail::lower_preimage(z.value());
}

/// Natural inverse hyperbolic tangent on [0, 1). Uses the odd Taylor series
/// below series_threshold.
inline double atanh_nat(double v)
{
    if (!(v >= 0.0 && v < 1.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "atanh_nat: argument " << v << " outside [0, 1)";
        throw domain_error(os.str());
    }
    if (v < series_threshold) {
        // v * (1 + sum v^2n/(2n+1))
        return v * (1.0 + detail::even_power_series(v, 1));
    }
    return std::atanh(v);
}

inline double phi(UnitScalar u)
{
    const double x = u.value();
    if (x == 0.0 || x == 1.0) {
        return x;
    }
    return ent(detail::lower_preimage(x));
}

/// First derivative of phi. Continuous extension: phi_d1(0) = 0,
/// phi_d1(1) = 1/ln 2.
inline double phi_d1(UnitScalar u)
{
    const double x = u.value();
    if (x == 0.0) {
        return 0.0;
    }
    if (x == 1.0) {
        return log2e;
    }
    const double v = detail::complement_root(x);
    if (v < series_threshold) {
        return x * log2e * (1.0 + detail::even_power_series(v, 1));
    }
    // 1 - v = u^2 / (1 + v)
    const double gap = x * x / (1.0 + v);
    return x * detail::atanh_with_gap(v, gap) / v * log2e;
}

/// Second derivative of phi. Throws divergence_error at u = 0, where
/// phi'' grows without bound.
inline double phi_d2(UnitScalar u)
{
    const double x = u.value();
    if (x == 0.0) {
        throw divergence_error("phi_d2: phi'' diverges at u = 0");
    }
    const double v = detail::complement_root(x);
    if (v < series_threshold) {
        return log2e * (1.0 / 3.0 + detail::even_power_series(v, 3));
    }
    const double gap = x * x / (1.0 + v);
    const double a = detail::atanh_with_gap(v, gap);
    return (a - v) / (v * v * v) * log2e;
}

/// psi(w) = phi(sqrt(w)); concave on [0, 1].
inline double psi(UnitScalar w)
{
    return phi(std::sqrt(w.value()));
}

/// Inverse of phi by bisection. phi' vanishes at 0, so no Newton steps.
inline double phi_inv(UnitScalar y)
{
    const double target = y.value();
    if (target == 0.0 || target == 1.0) {
        return target;
    }
    double lo = 0.0;
    double hi = 1.0;
    double f_lo = -target;
    double f_hi = 1.0 - target;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = phi(mid) - target;
        if (f_mid == 0.0) {
            return mid;
        }
        if (f_mid < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    // secant step inside the final bracket
    const double t = f_lo / (f_lo - f_hi);
    return lo + t * (hi - lo);
}

}  // namespace bdmc

#endif  // BDMC_SCALAR_FN_HPP
