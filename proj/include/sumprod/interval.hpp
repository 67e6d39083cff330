#pragma once

// Outward-rounded interval arithmetic on MPFR.
//
// Every operation rounds the lower endpoint toward -inf and the upper endpoint
// toward +inf, so the true real value is always enclosed. Comparisons answer
// yes / no only when the enclosure decides them; callers retry at a higher
// precision (see decide()) instead of trusting an undecided comparison.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>
#include <utility>

#include "sumprod/core.hpp"
#include "sumprod/errors.hpp"

namespace sumprod {

inline constexpr mpfr_prec_t kIntervalPrecision = 128;
inline constexpr mpfr_prec_t kMaxIntervalPrecision = 8192;

enum class Verdict { yes, no, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

class Interval {
public:
    explicit Interval(mpfr_prec_t prec = kIntervalPrecision) {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }

    Interval(const Interval& o) {
        mpfr_init2(lo_, mpfr_get_prec(o.lo_));
        mpfr_init2(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }

    Interval(Interval&& o) noexcept : Interval(mpfr_get_prec(o.lo_)) { swap(o); }

    Interval& operator=(Interval o) noexcept {
        swap(o);
        return *this;
    }

    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    void swap(Interval& o) noexcept {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }

    static Interval of(const Integer& v, mpfr_prec_t prec = kIntervalPrecision) {
        Interval r(prec);
        mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
        return r;
    }

    static Interval of(const Scalar& v, mpfr_prec_t prec = kIntervalPrecision) {
        Interval r(prec);
        mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    static Interval of(long v, mpfr_prec_t prec = kIntervalPrecision) { return of(Integer(v), prec); }

    static Interval ln2(mpfr_prec_t prec = kIntervalPrecision) {
        Interval r(prec);
        mpfr_const_log2(r.lo_, MPFR_RNDD);
        mpfr_const_log2(r.hi_, MPFR_RNDU);
        return r;
    }

    mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }

    double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double mid_double() const { return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)); }

    /// Exact rational value of an endpoint (finite endpoints only).
    Scalar lo_rational() const { return endpoint_rational(lo_); }
    Scalar hi_rational() const { return endpoint_rational(hi_); }

    bool contains(const Scalar& v) const {
        return mpfr_cmp_q(lo_, v.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, v.get_mpq_t()) >= 0;
    }
    bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }
    bool strictly_positive() const { return mpfr_sgn(lo_) > 0; }
    bool nonnegative() const { return mpfr_sgn(lo_) >= 0; }

    friend Interval operator+(const Interval& x, const Interval& y) {
        Interval r(common_prec(x, y));
        mpfr_add(r.lo_, x.lo_, y.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, x.hi_, y.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval& x, const Interval& y) {
        Interval r(common_prec(x, y));
        mpfr_sub(r.lo_, x.lo_, y.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, x.hi_, y.lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator*(const Interval& x, const Interval& y) {
        const mpfr_prec_t prec = common_prec(x, y);
        Interval r(prec);
        mpfr_t t;
        mpfr_init2(t, prec);
        bool first = true;
        for (mpfr_srcptr a : {x.lo_, x.hi_}) {
            for (mpfr_srcptr b : {y.lo_, y.hi_}) {
                mpfr_mul(t, a, b, MPFR_RNDD);
                if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
                mpfr_mul(t, a, b, MPFR_RNDU);
                if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
                first = false;
            }
        }
        mpfr_clear(t);
        return r;
    }

    friend Interval operator/(const Interval& x, const Interval& y) {
        if (mpfr_sgn(y.lo_) <= 0 && mpfr_sgn(y.hi_) >= 0) {
            throw DivisionByZero("interval division by an interval containing 0");
        }
        Interval inv(y.precision());
        mpfr_ui_div(inv.lo_, 1, y.hi_, MPFR_RNDD);
        mpfr_ui_div(inv.hi_, 1, y.lo_, MPFR_RNDU);
        return x * inv;
    }

    friend Interval log(const Interval& x) {
        if (!x.strictly_positive()) {
            throw InvalidArgument("interval log of a non-positive interval");
        }
        Interval r(x.precision());
        mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
        mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
        return r;
    }

    /// x^(num/den) for x >= 0; num < 0 requires x > 0.
    friend Interval pow(const Interval& x, long num, unsigned long den) {
        if (den == 0) throw InvalidArgument("pow with zero denominator");
        if (!x.nonnegative()) throw InvalidArgument("fractional power of a negative interval");
        const unsigned long mag = static_cast<unsigned long>(num < 0 ? -num : num);
        Interval r(x.precision());
        // Monotone increasing on [0, inf): round both endpoints in their own direction.
        mpfr_rootn_ui(r.lo_, x.lo_, den, MPFR_RNDD);
        mpfr_rootn_ui(r.hi_, x.hi_, den, MPFR_RNDU);
        mpfr_pow_ui(r.lo_, r.lo_, mag, MPFR_RNDD);
        mpfr_pow_ui(r.hi_, r.hi_, mag, MPFR_RNDU);
        if (num < 0) {
            return Interval::of(1L, x.precision()) / r;
        }
        return r;
    }

    friend Interval pow(const Interval& x, unsigned long n) { return pow(x, static_cast<long>(n), 1UL); }

    friend Verdict certainly_le(const Interval& x, const Interval& y) {
        if (mpfr_lessequal_p(x.hi_, y.lo_)) return Verdict::yes;
        if (mpfr_greater_p(x.lo_, y.hi_)) return Verdict::no;
        return Verdict::inconclusive;
    }

    friend Verdict certainly_lt(const Interval& x, const Interval& y) {
        if (mpfr_less_p(x.hi_, y.lo_)) return Verdict::yes;
        if (mpfr_greaterequal_p(x.lo_, y.hi_)) return Verdict::no;
        return Verdict::inconclusive;
    }

private:
    static mpfr_prec_t common_prec(const Interval& x, const Interval& y) {
        return std::max(x.precision(), y.precision());
    }

    static Scalar endpoint_rational(mpfr_srcptr e) {
        if (!mpfr_number_p(e)) {
            throw InvalidArgument("non-finite interval endpoint");
        }
        Scalar q;
        mpfr_get_q(q.get_mpq_t(), e);
        return q;
    }

    mpfr_t lo_;
    mpfr_t hi_;
};

/// Evaluates `attempt(prec)` at 128, 256, ... bits until it returns a decided
/// verdict or the precision cap is reached.
template <class Attempt>
Verdict decide(Attempt&& attempt, mpfr_prec_t start = kIntervalPrecision) {
    for (mpfr_prec_t prec = start; prec <= kMaxIntervalPrecision; prec *= 2) {
        const Verdict v = attempt(prec);
        if (v != Verdict::inconclusive) return v;
    }
    return Verdict::inconclusive;
}

/// base^(num/den)
struct Power {
    Integer base;
    long num = 1;
    unsigned long den = 1;
};

/// Enclosure of a product of rational powers of nonnegative integers.
inline Interval monomial(std::initializer_list<Power> factors, mpfr_prec_t prec = kIntervalPrecision) {
    Interval r = Interval::of(1L, prec);
    for (const Power& f : factors) r = r * pow(Interval::of(f.base, prec), f.num, f.den);
    return r;
}

/// Double enclosure [lo, hi] of an observed value divided by a bound.
struct RatioInterval {
    double lo = 0;
    double hi = 0;
    double mid() const { return 0.5 * (lo + hi); }
};

inline RatioInterval ratio_interval(const Interval& value, const Interval& bound) {
    if (!bound.strictly_positive()) return RatioInterval{0, 0};
    const Interval q = value / bound;
    return RatioInterval{q.lo_double(), q.hi_double()};
}

inline RatioInterval ratio_interval(const Integer& value, const Interval& bound) {
    return ratio_interval(Interval::of(value, bound.precision()), bound);
}

/// Integer <= real, where the real is enclosed by `bound(prec)`.
template <class Bound>
Verdict integer_le_real(const Integer& lhs, Bound&& bound) {
    return decide([&](mpfr_prec_t prec) { return certainly_le(Interval::of(lhs, prec), bound(prec)); });
}

} // namespace sumprod
