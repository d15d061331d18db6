#ifndef BDMC_ENCLOSURE_HPP
#define BDMC_ENCLOSURE_HPP

// Closed intervals of doubles with outward rounding.
//
// Directed rounding is emulated with error-free transformations under the
// default round-to-nearest mode: the exact residual of each operation
// (TwoSum for addition, fma for products and quotients) tells on which side
// of the true result the rounded value landed, and the bound is nudged one
// ulp outward only when needed. This does not touch the FP environment, so
// it is thread safe and immune to compilers that ignore fesetround.
//
// Only finite operands are supported. Products and quotients whose magnitude
// falls below the range where fma residuals are exact are widened
// unconditionally.

#include <cmath>
#include <limits>

#include "bdmc/errors.hpp"

namespace bdmc {

namespace rounding {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

// Below this the residual of a product may itself be inexact.
inline constexpr double tiny = 0x1p-960;

inline double next_down(double x) noexcept { return std::nextafter(x, -infinity); }
inline double next_up(double x) noexcept { return std::nextafter(x, infinity); }

// Exact a + b - fl(a + b) (Knuth TwoSum).
inline double sum_residual(double a, double b, double s) noexcept
{
    const double bb = s - a;
    return (a - (s - bb)) + (b - bb);
}

inline double add_down(double a, double b) noexcept
{
    const double s = a + b;
    return sum_residual(a, b, s) < 0.0 ? next_down(s) : s;
}

inline double add_up(double a, double b) noexcept
{
    const double s = a + b;
    return sum_residual(a, b, s) > 0.0 ? next_up(s) : s;
}

inline double sub_down(double a, double b) noexcept { return add_down(a, -b); }
inline double sub_up(double a, double b) noexcept { return add_up(a, -b); }

inline double mul_down(double a, double b) noexcept
{
    const double p = a * b;
    if (std::abs(p) < tiny) {
        return next_down(p);
    }
    return std::fma(a, b, -p) < 0.0 ? next_down(p) : p;
}

inline double mul_up(double a, double b) noexcept
{
    const double p = a * b;
    if (std::abs(p) < tiny) {
        return next_up(p);
    }
    return std::fma(a, b, -p) > 0.0 ? next_up(p) : p;
}

// Sign of a/b - q is sign(a - q*b) * sign(b).
inline double div_down(double a, double b) noexcept
{
    const double q = a / b;
    if (std::abs(q) < tiny || std::abs(a) < tiny) {
        return next_down(q);
    }
    const double r = std::fma(-q, b, a);
    const bool below = (b > 0.0) ? (r < 0.0) : (r > 0.0);
    return below ? next_down(q) : q;
}

inline double div_up(double a, double b) noexcept
{
    const double q = a / b;
    if (std::abs(q) < tiny || std::abs(a) < tiny) {
        return next_up(q);
    }
    const double r = std::fma(-q, b, a);
    const bool above = (b > 0.0) ? (r > 0.0) : (r < 0.0);
    return above ? next_up(q) : q;
}

}  // namespace rounding

/// A closed interval [lo, hi] guaranteed to contain some real value.
struct Enclosure {
    double lo = 0.0;
    double hi = 0.0;

    constexpr Enclosure() = default;
    constexpr explicit Enclosure(double point) : lo(point), hi(point) {}
    Enclosure(double lower, double upper) : lo(lower), hi(upper)
    {
        if (!(lower <= upper)) {
            throw domain_error("Enclosure: lower bound exceeds upper bound");
        }
    }

    [[nodiscard]] double width() const noexcept { return hi - lo; }
    [[nodiscard]] double mid() const noexcept { return lo + 0.5 * (hi - lo); }
    [[nodiscard]] bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

inline Enclosure operator+(const Enclosure& a, const Enclosure& b)
{
    return {rounding::add_down(a.lo, b.lo), rounding::add_up(a.hi, b.hi)};
}

inline Enclosure operator-(const Enclosure& a, const Enclosure& b)
{
    return {rounding::sub_down(a.lo, b.hi), rounding::sub_up(a.hi, b.lo)};
}

inline Enclosure operator*(const Enclosure& a, const Enclosure& b)
{
    using namespace rounding;
    double lo = mul_down(a.lo, b.lo);
    double hi = mul_up(a.lo, b.lo);
    for (const auto& [x, y] : {std::pair{a.lo, b.hi}, std::pair{a.hi, b.lo}, std::pair{a.hi, b.hi}}) {
        lo = std::min(lo, mul_down(x, y));
        hi = std::max(hi, mul_up(x, y));
    }
    return {lo, hi};
}

inline Enclosure operator/(const Enclosure& a, const Enclosure& b)
{
    if (b.lo <= 0.0 && b.hi >= 0.0) {
        throw domain_error("Enclosure: division by an interval containing zero");
    }
    using namespace rounding;
    double lo = div_down(a.lo, b.lo);
    double hi = div_up(a.lo, b.lo);
    for (const auto& [x, y] : {std::pair{a.lo, b.hi}, std::pair{a.hi, b.lo}, std::pair{a.hi, b.hi}}) {
        lo = std::min(lo, div_down(x, y));
        hi = std::max(hi, div_up(x, y));
    }
    return {lo, hi};
}

// 1/ln 2 = log2(e) = 1.44269504088896340735992468100189...
// The nearest double, std::numbers::log2e, lies below it by ~2e-17, so the
// true constant sits in [log2e, nextup(log2e)].
inline Enclosure log2e_enclosure()
{
    return {std::numbers::log2e, rounding::next_up(std::numbers::log2e)};
}

}  // namespace bdmc

#endif  // BDMC_ENCLOSURE_HPP
