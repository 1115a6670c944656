#include "butson/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

namespace butson {

unsigned euler_phi(unsigned q) {
    if (q == 0) throw std::invalid_argument("euler_phi: q must be positive");
    unsigned result = q;
    unsigned m = q;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

std::vector<unsigned> divisors(unsigned q) {
    std::vector<unsigned> d;
    for (unsigned i = 1; i * i <= q; ++i) {
        if (q % i == 0) {
            d.push_back(i);
            if (i != q / i) d.push_back(q / i);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

namespace {

using Poly = std::vector<Integer>;  // low to high, no trailing zeros except poly 0 = {}

Poly poly_x_pow_minus_one(unsigned q) {
    Poly p(q + 1, Integer(0));
    p[0] = -1;
    p[q] = 1;
    return p;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Exact division by a monic divisor; throws if a remainder survives.
Poly poly_div_exact(Poly num, const Poly& den) {
    if (den.empty() || den.back() != 1)
        throw std::logic_error("poly_div_exact: divisor must be monic");
    if (num.size() < den.size()) throw std::logic_error("poly_div_exact: degree underflow");
    Poly quot(num.size() - den.size() + 1, Integer(0));
    for (std::size_t i = quot.size(); i-- > 0;) {
        Integer c = num[i + den.size() - 1];
        quot[i] = c;
        if (c != 0)
            for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    for (const Integer& c : num)
        if (c != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
    return quot;
}

struct TableCache {
    std::mutex mutex;
    std::map<unsigned, std::unique_ptr<const CycloPolynomial>> polys;
    std::map<unsigned, std::unique_ptr<const ReductionTable>> tables;
};

TableCache& cache() {
    static TableCache c;
    return c;
}

Poly phi_poly(unsigned q);

Poly phi_poly_uncached(unsigned q) {
    if (q == 1) return Poly{Integer(-1), Integer(1)};  // x - 1
    Poly denom{Integer(1)};
    for (unsigned d : divisors(q)) {
        if (d == q) continue;
        denom = poly_mul(denom, phi_poly(d));
    }
    return poly_div_exact(poly_x_pow_minus_one(q), denom);
}

Poly phi_poly(unsigned q) { return cyclotomic_polynomial(q).coeffs(); }

}  // namespace

const CycloPolynomial& cyclotomic_polynomial(unsigned q) {
    if (q == 0) throw std::invalid_argument("cyclotomic_polynomial: q must be positive");
    auto& c = cache();
    {
        std::lock_guard lock(c.mutex);
        auto it = c.polys.find(q);
        if (it != c.polys.end()) return *it->second;
    }
    // Computed outside the lock; recursion through proper divisors would
    // deadlock on a non-recursive mutex otherwise.
    Poly coeffs = phi_poly_uncached(q);
    auto poly = std::make_unique<CycloPolynomial>();
    poly->q_ = q;
    poly->coeffs_ = std::move(coeffs);
    std::lock_guard lock(c.mutex);
    return *c.polys.emplace(q, std::move(poly)).first->second;
}

CyclotomicElement::CyclotomicElement(unsigned q) : q_(q) {
    if (q == 0) throw std::invalid_argument("CyclotomicElement: q must be positive");
    coeffs_.assign(euler_phi(q), Integer(0));
}

CyclotomicElement CyclotomicElement::from_integer(unsigned q, Integer v) {
    CyclotomicElement e(q);
    e.coeffs_[0] = std::move(v);
    return e;
}

CyclotomicElement CyclotomicElement::root_power(unsigned q, unsigned e) {
    if (e >= q) throw std::invalid_argument("root_power: exponent out of range");
    const ReductionTable& t = reduction_table(q);
    CyclotomicElement r(q);
    r.coeffs_ = t.integer_row(e);
    return r;
}

CyclotomicElement CyclotomicElement::operator+(const CyclotomicElement& o) const {
    if (q_ != o.q_) throw std::invalid_argument("cyclotomic add: mismatched q");
    CyclotomicElement r(q_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    return r;
}

CyclotomicElement& CyclotomicElement::operator+=(const CyclotomicElement& o) {
    if (q_ != o.q_) throw std::invalid_argument("cyclotomic add: mismatched q");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

CyclotomicElement CyclotomicElement::operator-(const CyclotomicElement& o) const {
    if (q_ != o.q_) throw std::invalid_argument("cyclotomic sub: mismatched q");
    CyclotomicElement r(q_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] - o.coeffs_[i];
    return r;
}

CyclotomicElement CyclotomicElement::operator-() const {
    CyclotomicElement r(q_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = -coeffs_[i];
    return r;
}

CyclotomicElement CyclotomicElement::operator*(const Integer& s) const {
    CyclotomicElement r(q_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] * s;
    return r;
}

CyclotomicElement CyclotomicElement::operator*(const CyclotomicElement& o) const {
    if (q_ != o.q_) throw std::invalid_argument("cyclotomic mul: mismatched q");
    const unsigned phi = static_cast<unsigned>(coeffs_.size());
    std::vector<Integer> prod(2 * phi - 1, Integer(0));
    for (unsigned i = 0; i < phi; ++i) {
        if (coeffs_[i] == 0) continue;
        for (unsigned j = 0; j < phi; ++j) {
            if (o.coeffs_[j] == 0) continue;
            prod[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    // Remainder modulo the monic Phi_q.
    const auto& phi_coeffs = cyclotomic_polynomial(q_).coeffs();
    for (std::size_t i = prod.size(); i-- > phi;) {
        Integer c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (unsigned j = 0; j < phi; ++j) prod[i - phi + j] -= c * phi_coeffs[j];
    }
    CyclotomicElement r(q_);
    for (unsigned i = 0; i < phi; ++i) r.coeffs_[i] = std::move(prod[i]);
    return r;
}

CyclotomicElement CyclotomicElement::galois(unsigned r) const {
    r %= q_;
    if (std::gcd(static_cast<unsigned long>(r), static_cast<unsigned long>(q_)) != 1)
        throw std::invalid_argument("galois: r must be coprime to q");
    const ReductionTable& t = reduction_table(q_);
    CyclotomicElement out(q_);
    for (unsigned j = 0; j < coeffs_.size(); ++j) {
        if (coeffs_[j] == 0) continue;
        const auto& row = t.integer_row((static_cast<unsigned long long>(j) * r) % q_);
        for (unsigned i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] += coeffs_[j] * row[i];
    }
    return out;
}

CyclotomicElement CyclotomicElement::conjugate() const {
    if (q_ == 1 || q_ == 2) return *this;
    return galois(q_ - 1);
}

bool CyclotomicElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c == 0; });
}

bool CyclotomicElement::is_integer() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

std::string CyclotomicElement::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << " ";
        os << coeffs_[i];
    }
    os << "] (q=" << q_ << ")";
    return os.str();
}

std::complex<double> CyclotomicElement::to_complex() const {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (coeffs_[j] == 0) continue;
        double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(q_);
        acc += coeffs_[j].get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return acc;
}

CyclotomicElement abs_square(const CyclotomicElement& a) { return a * a.conjugate(); }

bool abs_square_equals(const CyclotomicElement& a, const Rational& r) {
    CyclotomicElement sq = abs_square(a);
    // sq * den - num must vanish; clears the denominator to stay in Z[zeta].
    const Integer num(r.get_num());
    const Integer den(r.get_den());
    CyclotomicElement scaled = sq * den - CyclotomicElement::from_integer(a.order(), num);
    return scaled.is_zero();
}

ReductionTable::ReductionTable(unsigned q) : q_(q), phi_(euler_phi(q)) {
    const auto& phi_coeffs = cyclotomic_polynomial(q).coeffs();
    rows_.assign(q, std::vector<Integer>(phi_, Integer(0)));
    std::vector<Integer> cur(phi_, Integer(0));
    cur[0] = 1;
    for (unsigned e = 0; e < q; ++e) {
        rows_[e] = cur;
        // Multiply by x and reduce the overflow term via the monic Phi_q.
        Integer top = cur[phi_ - 1];
        for (unsigned i = phi_ - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (unsigned i = 0; i < phi_; ++i) cur[i] -= top * phi_coeffs[i];
    }

    Integer max_abs(0);
    for (const auto& row : rows_)
        for (const Integer& c : row) {
            Integer a = abs(c);
            if (a > max_abs) max_abs = a;
        }
    if (max_abs == 0) max_abs = 1;
    if (max_abs.fits_slong_p()) {
        const std::int64_t m = max_abs.get_si();
        safe_bound_ = std::numeric_limits<std::int64_t>::max() / (m * 4);
        fast_ = true;
        fast_rows_.assign(static_cast<std::size_t>(q) * phi_, 0);
        for (unsigned e = 0; e < q; ++e)
            for (unsigned i = 0; i < phi_; ++i)
                fast_rows_[static_cast<std::size_t>(e) * phi_ + i] = rows_[e][i].get_si();
    }
}

std::span<const std::int64_t> ReductionTable::row(unsigned e) const {
    if (!fast_) throw std::logic_error("ReductionTable: no int64 fast path for this q");
    return {fast_rows_.data() + static_cast<std::size_t>(e) * phi_, phi_};
}

bool ReductionTable::counts_vanish(std::span<const std::int64_t> counts) const {
    if (counts.size() != q_) throw std::invalid_argument("counts_vanish: counts.size() != q");
    if (fast_) {
        std::int64_t total = 0;
        for (std::int64_t c : counts) total += (c < 0 ? -c : c);
        if (total <= safe_bound_) {
            for (unsigned i = 0; i < phi_; ++i) {
                std::int64_t acc = 0;
                for (unsigned e = 0; e < q_; ++e)
                    acc += counts[e] * fast_rows_[static_cast<std::size_t>(e) * phi_ + i];
                if (acc != 0) return false;
            }
            return true;
        }
    }
    return element_from_counts(counts).is_zero();
}

void ReductionTable::reduce(std::span<const std::int64_t> counts,
                            std::span<std::int64_t> out) const {
    if (!fast_) throw std::logic_error("ReductionTable: no int64 fast path for this q");
    if (counts.size() != q_ || out.size() != phi_)
        throw std::invalid_argument("reduce: bad span sizes");
    std::int64_t total = 0;
    for (std::int64_t c : counts) total += (c < 0 ? -c : c);
    if (total > safe_bound_) throw std::overflow_error("reduce: counts exceed safe bound");
    for (unsigned i = 0; i < phi_; ++i) {
        std::int64_t acc = 0;
        for (unsigned e = 0; e < q_; ++e)
            acc += counts[e] * fast_rows_[static_cast<std::size_t>(e) * phi_ + i];
        out[i] = acc;
    }
}

CyclotomicElement ReductionTable::element_from_counts(std::span<const std::int64_t> counts) const {
    if (counts.size() != q_) throw std::invalid_argument("element_from_counts: counts.size() != q");
    CyclotomicElement acc(q_);
    for (unsigned e = 0; e < q_; ++e) {
        if (counts[e] == 0) continue;
        acc += CyclotomicElement::root_power(q_, e) * Integer(static_cast<long>(counts[e]));
    }
    return acc;
}

const ReductionTable& reduction_table(unsigned q) {
    if (q == 0) throw std::invalid_argument("reduction_table: q must be positive");
    cyclotomic_polynomial(q);  // ensure the polynomial exists before locking
    auto& c = cache();
    {
        std::lock_guard lock(c.mutex);
        auto it = c.tables.find(q);
        if (it != c.tables.end()) return *it->second;
    }
    auto table = std::make_unique<const ReductionTable>(q);
    std::lock_guard lock(c.mutex);
    return *c.tables.emplace(q, std::move(table)).first->second;
}

}  // namespace butson
