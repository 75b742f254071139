#pragma once

/**
 * @file rational.hpp
 * @brief Arbitrary-precision integers and rationals (GMP) plus small helpers.
 *
 * mpq_class keeps every value canonical (lowest terms, positive denominator)
 * after each arithmetic operation, so no explicit normalization is needed.
 */

#include "divsym/error.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

namespace divsym {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den)
{
    require(den != 0, "rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1)
{
    return make_rational(Integer(num), Integer(den));
}

inline Integer factorial(unsigned long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q)
{
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

inline std::pair<std::string, std::string> to_string_pair(const Rational& q)
{
    return {q.get_num().get_str(), q.get_den().get_str()};
}

} // namespace divsym
