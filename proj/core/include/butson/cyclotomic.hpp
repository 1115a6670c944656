#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "butson/numeric.hpp"

namespace butson {

unsigned euler_phi(unsigned q);
std::vector<unsigned> divisors(unsigned q);

/**
 * The q-th cyclotomic polynomial Phi_q, monic with integer coefficients,
 * of degree phi(q). Obtained by exact division of x^q - 1 by the product
 * of Phi_d over proper divisors d of q.
 */
class CycloPolynomial {
public:
    unsigned order() const { return q_; }
    unsigned degree() const { return static_cast<unsigned>(coeffs_.size()) - 1; }
    // Coefficients low to high; back() == 1.
    const std::vector<Integer>& coeffs() const { return coeffs_; }

private:
    friend const CycloPolynomial& cyclotomic_polynomial(unsigned q);
    unsigned q_ = 0;
    std::vector<Integer> coeffs_;
};

// Cached, safe under concurrent use; one-time construction per q.
const CycloPolynomial& cyclotomic_polynomial(unsigned q);

/**
 * An element of Z[zeta_q] in the reduced power basis
 * 1, zeta, ..., zeta^{phi(q)-1}. The representation is canonical, so
 * equality of elements is equality of coefficient vectors and the zero
 * test (the decision procedure behind every orthogonality claim) is
 * "all coefficients zero".
 */
class CyclotomicElement {
public:
    explicit CyclotomicElement(unsigned q);  // zero element

    static CyclotomicElement zero(unsigned q) { return CyclotomicElement(q); }
    static CyclotomicElement one(unsigned q) { return from_integer(q, 1); }
    static CyclotomicElement from_integer(unsigned q, Integer v);
    // zeta_q^e for 0 <= e < q, canonically reduced.
    static CyclotomicElement root_power(unsigned q, unsigned e);

    unsigned order() const { return q_; }
    const std::vector<Integer>& coeffs() const { return coeffs_; }

    CyclotomicElement operator+(const CyclotomicElement& o) const;
    CyclotomicElement operator-(const CyclotomicElement& o) const;
    CyclotomicElement operator-() const;
    CyclotomicElement operator*(const CyclotomicElement& o) const;
    CyclotomicElement& operator+=(const CyclotomicElement& o);
    CyclotomicElement operator*(const Integer& s) const;
    bool operator==(const CyclotomicElement& o) const = default;

    // zeta |-> zeta^{q-1}, the complex conjugation.
    CyclotomicElement conjugate() const;
    // zeta |-> zeta^r for gcd(r, q) = 1 (the Galois action used by the
    // orbit machinery).
    CyclotomicElement galois(unsigned r) const;

    bool is_zero() const;
    // True iff the element lies in Z, i.e. all non-constant coordinates
    // vanish (the power basis makes this a faithful test).
    bool is_integer() const;
    const Integer& constant_coeff() const { return coeffs_[0]; }

    std::string to_string() const;
    // Numerical image; tests only.
    std::complex<double> to_complex() const;

private:
    unsigned q_;
    std::vector<Integer> coeffs_;  // length phi(q)
};

// a * conj(a); always fixed by conjugation.
CyclotomicElement abs_square(const CyclotomicElement& a);
// Decides a * conj(a) == r exactly (denominators cleared internally).
bool abs_square_equals(const CyclotomicElement& a, const Rational& r);

/**
 * Per-q reduction table: row e holds the reduced coordinates of zeta_q^e.
 * Search kernels accumulate exponent counts and decide vanishing through
 * these rows without touching arbitrary-precision arithmetic; the int64
 * fast path is only enabled when the row magnitudes make overflow
 * impossible for the advertised count bound.
 */
class ReductionTable {
public:
    explicit ReductionTable(unsigned q);

    unsigned order() const { return q_; }
    unsigned degree() const { return phi_; }

    const std::vector<Integer>& integer_row(unsigned e) const { return rows_[e]; }
    bool has_fast_path() const { return fast_; }
    std::span<const std::int64_t> row(unsigned e) const;
    // Largest total count magnitude the int64 path accepts.
    std::int64_t safe_count_bound() const { return safe_bound_; }

    // Exact zero test of sum_e counts[e] * zeta^e (counts.size() == q).
    bool counts_vanish(std::span<const std::int64_t> counts) const;
    // Reduced coordinates of the same sum into out (size phi(q)).
    void reduce(std::span<const std::int64_t> counts, std::span<std::int64_t> out) const;
    CyclotomicElement element_from_counts(std::span<const std::int64_t> counts) const;

private:
    unsigned q_;
    unsigned phi_;
    std::vector<std::vector<Integer>> rows_;
    std::vector<std::int64_t> fast_rows_;  // q * phi, row-major
    bool fast_ = false;
    std::int64_t safe_bound_ = 0;
};

// Cached alongside Phi_q; safe under concurrent use.
const ReductionTable& reduction_table(unsigned q);

}  // namespace butson
