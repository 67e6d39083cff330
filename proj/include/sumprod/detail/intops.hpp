#pragma once

// Small set of integer primitives shared by the int64 fast paths and the
// arbitrary-precision fallbacks. Every counting kernel is written once as a
// template over `Int` and instantiated for std::int64_t and mpz_class.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <utility>

namespace sumprod::detail {

inline std::int64_t gcd_abs(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

inline mpz_class gcd_abs(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline int sign_of(std::int64_t v) { return (v > 0) - (v < 0); }
inline int sign_of(const mpz_class& v) { return sgn(v); }

inline bool divides(std::int64_t d, std::int64_t v) { return v % d == 0; }
inline bool divides(const mpz_class& d, const mpz_class& v) {
    return mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::size_t hash_value(std::int64_t v) { return std::hash<std::int64_t>{}(v); }

inline std::size_t hash_value(const mpz_class& v) {
    const mpz_srcptr z = v.get_mpz_t();
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z) + 1);
    const std::size_t n = mpz_size(z);
    for (std::size_t i = 0; i < n; ++i) {
        h = hash_combine(h, static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))));
    }
    return h;
}

inline std::size_t hash_value(const mpq_class& v) {
    return hash_combine(hash_value(v.get_num()), hash_value(v.get_den()));
}

struct ValueHash {
    template <class T>
    std::size_t operator()(const T& v) const {
        return hash_value(v);
    }
    template <class T, class U>
    std::size_t operator()(const std::pair<T, U>& p) const {
        return hash_combine(hash_value(p.first), hash_value(p.second));
    }
};

inline mpz_class to_integer(std::int64_t v) { return mpz_class(static_cast<long>(v)); }
inline const mpz_class& to_integer(const mpz_class& v) { return v; }

} // namespace sumprod::detail
