#pragma once

// Integer images of rational sets.
//
// Multiplying every input by the lcm L of all denominators turns the sets into
// integer sets; differences, sums, products and ratios keep their
// representation counts (x -> Lx, x -> L^2 x and a/b are bijections), and
// collinearity is invariant under the uniform scaling. When every scaled value
// has magnitude <= kSmallLimit = 2^26 the kernels run on std::int64_t: line
// coefficients stay below 2^27, line constants and cross products below 2^56.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "sumprod/setgen.hpp"

namespace sumprod::detail {

inline constexpr std::int64_t kSmallLimit = std::int64_t{1} << 26;

/// Forces the arbitrary-precision path; used by tests to compare both paths.
inline bool& force_big_integers() {
    static bool flag = false;
    return flag;
}

template <class Int>
struct IntImage {
    Integer scale;
    std::vector<std::vector<Int>> sets;
};

inline Integer common_denominator(const std::vector<const RatSet*>& sets) {
    Integer l(1);
    for (const RatSet* s : sets) {
        for (const Scalar& x : *s) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
    return l;
}

/// Calls `fn(image)` with an IntImage<std::int64_t> when the scaled values are
/// small, otherwise with an IntImage<mpz_class>. Both instantiations must
/// return the same type.
template <class Fn>
decltype(auto) with_integer_image(const std::vector<const RatSet*>& sets, Fn&& fn) {
    const Integer scale = common_denominator(sets);
    bool small = !force_big_integers();
    std::vector<std::vector<Integer>> big;
    big.reserve(sets.size());
    for (const RatSet* s : sets) {
        std::vector<Integer> v;
        v.reserve(s->size());
        for (const Scalar& x : *s) {
            Integer y = x.get_num() * (scale / x.get_den());
            if (abs(y) > kSmallLimit) small = false;
            v.push_back(std::move(y));
        }
        big.push_back(std::move(v));
    }
    if (small) {
        IntImage<std::int64_t> img{scale, {}};
        img.sets.reserve(big.size());
        for (const auto& v : big) {
            std::vector<std::int64_t> w;
            w.reserve(v.size());
            for (const Integer& y : v) w.push_back(y.get_si());
            img.sets.push_back(std::move(w));
        }
        return fn(img);
    }
    IntImage<mpz_class> img{scale, std::move(big)};
    return fn(img);
}

} // namespace sumprod::detail
