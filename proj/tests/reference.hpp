#ifndef BDMC_TESTS_REFERENCE_HPP
#define BDMC_TESTS_REFERENCE_HPP

// 50-digit reference evaluations from the closed forms. Independent of the
// series paths and of the double-precision code under test.

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace bdmc::reference {

using real = boost::multiprecision::cpp_bin_float_50;

inline real ln2() { return boost::multiprecision::log(real(2)); }

inline real log2(const real& x) { return boost::multiprecision::log(x) / ln2(); }

inline real ent(const real& q)
{
    if (q == 0 || q == 1) {
        return 0;
    }
    return -q * log2(q) - (1 - q) * log2(1 - q);
}

inline real atanh(const real& v) { return boost::multiprecision::log((1 + v) / (1 - v)) / 2; }

inline real phi(const real& u)
{
    const real v = boost::multiprecision::sqrt(1 - u * u);
    return ent((1 - v) / 2);
}

// Below this the closed forms cancel even at 50 digits; the first few
// series terms are exact to far beyond double precision there.
inline const real tiny_v("1e-6");

// sum_{n=0}^{7} v^2n / (2n + 1 + shift)
inline real short_series(const real& v, int shift)
{
    real total = 0;
    real power = 1;
    for (int n = 0; n < 8; ++n) {
        total += power / (2 * n + 1 + shift);
        power *= v * v;
    }
    return total;
}

// phi'(u)/u as a function of v
inline real d1_over_u(const real& v)
{
    if (v < tiny_v) {
        return short_series(v, 0) / ln2();
    }
    return atanh(v) / (v * ln2());
}

// phi''(u) as a function of v
inline real d2(const real& v)
{
    if (v < tiny_v) {
        return short_series(v, 2) / ln2();
    }
    return (atanh(v) - v) / (v * v * v * ln2());
}

inline real v_of_u(double u)
{
    const real x(u);
    return boost::multiprecision::sqrt(1 - x * x);
}

}  // namespace bdmc::reference

#endif  // BDMC_TESTS_REFERENCE_HPP
