#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "sumprod/setgen.hpp"

namespace testing_support {

inline oracle::Vec to_vec(const sumprod::RatSet& a) { return a.elements(); }

inline sumprod::RatSet from_ints(std::initializer_list<long> xs) {
    std::vector<sumprod::Scalar> v;
    for (long x : xs) v.emplace_back(x);
    return sumprod::RatSet(std::move(v));
}

/// Small random set with values in [lo, hi] / den, drawn with its own engine.
inline sumprod::RatSet small_set(std::mt19937_64& rng, std::size_t max_size, long lo, long hi, long den = 1) {
    std::uniform_int_distribution<long> value(lo, hi);
    std::uniform_int_distribution<std::size_t> size(1, max_size);
    const std::size_t n = size(rng);
    std::vector<sumprod::Scalar> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(oracle::q(value(rng), den));
    return sumprod::RatSet(std::move(v));
}

} // namespace testing_support
