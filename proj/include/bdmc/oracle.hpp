#ifndef BDMC_ORACLE_HPP
#define BDMC_ORACLE_HPP

// Rigorous enclosures of phi'(u)/u and phi''(u) from their power series in
// v = sqrt(1 - u^2), and grid certificates built on top of them.
//
// For a truncation after N terms the neglected tail is bounded by a
// geometric series:
//
//   sum_{n>N} v^2n / (2n + k)  <=  v^(2N+2) / ((2N + 2 + k) (1 - v^2))
//
// so [partial sum, partial sum + tail bound] contains the series value once
// every partial-sum operation is rounded outward.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bdmc/enclosure.hpp"
#include "bdmc/errors.hpp"
#include "bdmc/scalar_fn.hpp"

namespace bdmc {

inline constexpr double default_v_max = 0.999;
inline constexpr int max_series_terms = 10000;
inline constexpr double default_tail_target = 1e-16;
inline constexpr double default_lemma3_pad = 1e-12;
inline constexpr const char* rounding_mode = "directed-emulated";

namespace detail {

inline void check_series_argument(double v, double v_max, int terms)
{
    if (terms < 1) {
        throw domain_error("series enclosure: terms must be positive");
    }
    if (!(v >= 0.0 && v <= v_max && v < 1.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "series enclosure: v = " << v << " outside [0, " << v_max << "]";
        throw domain_error(os.str());
    }
}

// Enclosure of sum_{n>=1} v^2n / (2n + offset) using `terms` terms plus the
// geometric tail bound.
inline Enclosure enclose_even_series(double v, int terms, int offset)
{
    using namespace rounding;
    const double v2_lo = mul_down(v, v);
    const double v2_hi = mul_up(v, v);

    std::vector<double> lo_terms(static_cast<std::size_t>(terms));
    std::vector<double> hi_terms(static_cast<std::size_t>(terms));
    double pow_lo = v2_lo;
    double pow_hi = v2_hi;
    for (int n = 1; n <= terms; ++n) {
        const double denom = 2.0 * n + offset;
        lo_terms[n - 1] = std::max(0.0, div_down(pow_lo, denom));
        hi_terms[n - 1] = div_up(pow_hi, denom);
        if (n < terms) {
            pow_lo = std::max(0.0, mul_down(pow_lo, v2_lo));
            pow_hi = mul_up(pow_hi, v2_hi);
        }
    }

    // v^(2N+2) / ((2N + 2 + offset)(1 - v^2)), rounded up
    const double tail_num = mul_up(pow_hi, v2_hi);
    const double tail_den = mul_down(2.0 * terms + 2.0 + offset, sub_down(1.0, v2_hi));
    const double tail = div_up(tail_num, tail_den);

    // smallest terms first
    double sum_lo = 0.0;
    double sum_hi = tail;
    for (int n = terms; n >= 1; --n) {
        sum_lo = add_down(sum_lo, lo_terms[n - 1]);
        sum_hi = add_up(sum_hi, hi_terms[n - 1]);
    }
    return {sum_lo, sum_hi};
}

// Upper bound on the tail after `terms` terms, in plain arithmetic.
inline double tail_estimate(double v, int terms, int offset)
{
    const double v2 = v * v;
    return std::pow(v2, terms + 1) / ((2.0 * terms + 2.0 + offset) * (1.0 - v2));
}

}  // namespace detail

/// Smallest term count whose tail bound is below `target`, capped at
/// max_series_terms.
inline int default_terms(double v, int offset = 1, double target = default_tail_target)
{
    if (v == 0.0) {
        return 1;
    }
    // tail shrinks by at least v^2 per extra term; bisect on the monotone
    // estimate
    int lo = 1;
    int hi = max_series_terms;
    if (detail::tail_estimate(v, hi, offset) >= target) {
        return hi;
    }
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (detail::tail_estimate(v, mid, offset) < target) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

/// Encloses phi'(u)/u = (1 + sum v^2n/(2n+1)) / ln 2.
inline Enclosure enclose_series_d1(double v, int terms, double v_max = default_v_max)
{
    detail::check_series_argument(v, v_max, terms);
    const Enclosure c = log2e_enclosure();
    const Enclosure tail = detail::enclose_even_series(v, terms, 1);
    return c + c * tail;
}

inline Enclosure enclose_series_d1(double v)
{
    return enclose_series_d1(v, default_terms(v, 1));
}

/// Encloses phi''(u) = (1/3 + sum v^2n/(2n+3)) / ln 2.
inline Enclosure enclose_series_d2(double v, int terms, double v_max = default_v_max)
{
    detail::check_series_argument(v, v_max, terms);
    const Enclosure c = log2e_enclosure();
    const Enclosure third{rounding::div_down(1.0, 3.0), rounding::div_up(1.0, 3.0)};
    const Enclosure tail = detail::enclose_even_series(v, terms, 3);
    return c * (third + tail);
}

inline Enclosure enclose_series_d2(double v)
{
    return enclose_series_d2(v, default_terms(v, 3));
}

/// Minimum slack of one inequality over a grid.
struct CheckSummary {
    std::string name;
    double min_slack = std::numeric_limits<double>::infinity();
    double argmin = 0.0;
    // Over the points where the inequality must be strict.
    double strict_min_slack = std::numeric_limits<double>::infinity();
    double strict_argmin = 0.0;
    bool pass = true;
};

struct SlackSample {
    double x = 0.0;      // grid coordinate (v for lemma 1, u for lemma 3)
    double slack = 0.0;  // smallest certified slack at this point
};

struct CertificateReport {
    std::string lemma;
    std::size_t grid = 0;
    std::optional<double> v_max;
    std::string mode;
    double min_slack = std::numeric_limits<double>::infinity();
    double argmin = 0.0;
    bool pass = false;
    std::optional<double> pad;
    std::string note;
    std::vector<CheckSummary> checks;
    std::vector<SlackSample> samples;
};

namespace detail {

inline void record(CheckSummary& check, double x, double slack, bool strict_here)
{
    if (slack < check.min_slack) {
        check.min_slack = slack;
        check.argmin = x;
    }
    if (strict_here && slack < check.strict_min_slack) {
        check.strict_min_slack = slack;
        check.strict_argmin = x;
    }
}

}  // namespace detail

/// Certified lower bound on phi'(u)/u - phi''(u) at a single v.
inline double lemma1_slack(double v, double v_max = default_v_max)
{
    const Enclosure d1 = enclose_series_d1(v, default_terms(v, 1), v_max);
    const Enclosure d2 = enclose_series_d2(v, default_terms(v, 3), v_max);
    return rounding::sub_down(d1.lo, d2.hi);
}

/// Certifies 0 < phi''(u) < phi'(u)/u on the grid v_k = k v_max / (n - 1),
/// k = 1..n-1, using series enclosures. The uncovered range v in (v_max, 1)
/// follows from the term-by-term argument recorded in `note` together with
/// the "floor" check: phi'(u)/u - phi''(u) >= 2 / (3 ln 2) for every v.
inline CertificateReport certify_lemma1(std::size_t grid_points, double v_max = default_v_max)
{
    if (grid_points < 2) {
        throw domain_error("certify_lemma1: grid_points must be at least 2");
    }
    if (!(v_max > 0.0 && v_max < 1.0)) {
        throw domain_error("certify_lemma1: v_max must lie in (0, 1)");
    }

    CertificateReport report;
    report.lemma = "lemma1";
    report.grid = grid_points;
    report.v_max = v_max;
    report.mode = rounding_mode;

    CheckSummary ordering{.name = "d2 < d1/u"};
    CheckSummary positivity{.name = "d2 > 0"};

    const double steps = static_cast<double>(grid_points - 1);
    for (std::size_t k = 1; k < grid_points; ++k) {
        const double v = (k + 1 == grid_points) ? v_max : v_max * (static_cast<double>(k) / steps);
        const Enclosure d1 = enclose_series_d1(v, default_terms(v, 1), v_max);
        const Enclosure d2 = enclose_series_d2(v, default_terms(v, 3), v_max);
        const double slack = rounding::sub_down(d1.lo, d2.hi);
        detail::record(ordering, v, slack, true);
        detail::record(positivity, v, d2.lo, true);
        report.samples.push_back({v, slack});
    }
    ordering.pass = ordering.strict_min_slack > 0.0;
    positivity.pass = positivity.strict_min_slack > 0.0;

    // Term by term, 1/(2n+1) > 1/(2n+3) and 1 > 1/3, so the difference of the
    // two series is at least (1 - 1/3)/ln 2 for every v in [0, 1).
    const Enclosure c = log2e_enclosure();
    const Enclosure two_thirds{rounding::div_down(2.0, 3.0), rounding::div_up(2.0, 3.0)};
    const double floor_lo = (c * two_thirds).lo;
    CheckSummary floor{.name = "term-by-term floor"};
    detail::record(floor, 1.0, floor_lo, true);
    floor.pass = floor_lo > 0.0;

    report.checks = {ordering, positivity, floor};
    report.min_slack = ordering.strict_min_slack;
    report.argmin = ordering.strict_argmin;
    report.pass = ordering.pass && positivity.pass && floor.pass;
    report.note =
        "grid covers v in (0, v_max]; for v in (v_max, 1) both series increase in v, so "
        "phi'' stays above its certified value at v_max, and the difference phi'/u - phi'' "
        "dominates 2/(3 ln 2) term by term";
    return report;
}

struct Lemma3Slacks {
    double upper;    // u - phi(u)
    double square;   // phi(u) - u^2
    double tangent;  // phi(u) - (1 + (u - 1)/ln 2)
};

inline Lemma3Slacks lemma3_slacks(UnitScalar u)
{
    const double x = u.value();
    const double p = phi(x);
    return {x - p, p - x * x, p - (1.0 + (x - 1.0) * log2e)};
}

/// Checks phi(u) <= u, phi(u) >= u^2 and phi(u) >= 1 + (u - 1)/ln 2 on a
/// uniform grid of [0, 1]. Every slack must exceed -pad; where the inequality
/// is strict (interior for the first two, u < 1 for the tangent bound) the
/// slack must exceed +pad.
inline CertificateReport certify_lemma3(std::size_t grid_points, double pad = default_lemma3_pad)
{
    if (grid_points < 3) {
        throw domain_error("certify_lemma3: grid_points must be at least 3");
    }
    CertificateReport report;
    report.lemma = "lemma3";
    report.grid = grid_points;
    report.mode = "point-evaluation+pad";
    report.pad = pad;

    CheckSummary upper{.name = "phi(u) <= u"};
    CheckSummary square{.name = "phi(u) >= u^2"};
    CheckSummary tangent{.name = "phi(u) >= 1 + (u-1)/ln 2"};

    const double steps = static_cast<double>(grid_points - 1);
    for (std::size_t k = 0; k < grid_points; ++k) {
        const double u = (k + 1 == grid_points) ? 1.0 : static_cast<double>(k) / steps;
        const Lemma3Slacks s = lemma3_slacks(u);
        const bool interior = k != 0 && k + 1 != grid_points;
        detail::record(upper, u, s.upper, interior);
        detail::record(square, u, s.square, interior);
        detail::record(tangent, u, s.tangent, k + 1 != grid_points);
        report.samples.push_back({u, std::min({s.upper, s.square, s.tangent})});
    }

    report.pass = true;
    report.min_slack = std::numeric_limits<double>::infinity();
    for (CheckSummary* check : {&upper, &square, &tangent}) {
        check->pass = check->min_slack >= -pad && check->strict_min_slack > pad;
        report.pass = report.pass && check->pass;
        if (check->strict_min_slack < report.min_slack) {
            report.min_slack = check->strict_min_slack;
            report.argmin = check->strict_argmin;
        }
    }
    report.checks = {upper, square, tangent};
    report.note = "equality expected at u in {0, 1} for the first two bounds and at u = 1 for the tangent bound";
    return report;
}

}  // namespace bdmc

#endif  // BDMC_ORACLE_HPP
