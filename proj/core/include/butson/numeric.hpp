#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace butson {

// All counting and ring arithmetic in the toolkit is exact. Integer and
// Rational are the only numeric value types; floating point appears solely
// in test oracles.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer integer_pow(unsigned base, unsigned exp) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

// Raised when an enumeration would exceed the configured desk-scale cap.
// The CLI maps it to its resource-bounds exit code.
class BoundsError : public std::runtime_error {
public:
    explicit BoundsError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace butson
