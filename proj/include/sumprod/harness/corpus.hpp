#pragma once

#include <random>
#include <vector>

#include "sumprod/core.hpp"
#include "sumprod/setgen.hpp"

namespace sumprod::harness {

inline Scalar frac(long p, long q) { return make_scalar(Integer(p), Integer(q)); }

/// APs, GPs, GridExample sets, seeded random sets and one rational literal,
/// all free of 0 and of size at most 64.
inline std::vector<GeneratorConfig> default_corpus() {
    std::vector<GeneratorConfig> c;
    c.push_back(ApConfig{Scalar(1), Scalar(1), 8});
    c.push_back(ApConfig{Scalar(1), Scalar(1), 16});
    c.push_back(ApConfig{Scalar(1), Scalar(1), 32});
    c.push_back(ApConfig{Scalar(1), Scalar(1), 64});
    c.push_back(ApConfig{Scalar(3), Scalar(7), 24});
    c.push_back(ApConfig{frac(-11, 2), frac(1, 3), 12});
    c.push_back(GpConfig{Scalar(1), Scalar(2), 8});
    c.push_back(GpConfig{Scalar(1), Scalar(2), 16});
    c.push_back(GpConfig{Scalar(1), Scalar(3), 12});
    c.push_back(GpConfig{Scalar(1), Scalar(2), 32});
    c.push_back(GpConfig{Scalar(5), frac(-1, 2), 10});
    c.push_back(GridExampleConfig{2, 2});
    c.push_back(GridExampleConfig{3, 3});
    c.push_back(GridExampleConfig{4, 4});
    c.push_back(GridExampleConfig{5, 5});
    c.push_back(GridExampleConfig{8, 8});
    c.push_back(RandomConfig{16, 64, 1});
    c.push_back(RandomConfig{32, 128, 2});
    c.push_back(RandomConfig{32, 1'000'000, 7});
    c.push_back(RandomConfig{48, 1000, 4});
    c.push_back(RandomConfig{64, 256, 3});
    c.push_back(LiteralConfig{{frac(1, 2), frac(2, 3), frac(3, 4), frac(5, 7), Scalar(1), frac(3, 2), frac(7, 5),
                               frac(9, 4), frac(-1, 3), frac(-5, 2)}});
    return c;
}

/// GridExample with S = P = s for s in [lo, hi].
inline std::vector<GeneratorConfig> grid_family(std::size_t lo, std::size_t hi) {
    std::vector<GeneratorConfig> c;
    for (std::size_t s = lo; s <= hi; ++s) c.push_back(GridExampleConfig{s, s});
    return c;
}

/// The exact-suite set named in the docs: AP(1,1,8), GP(1,2,8), GridExample(3,3).
inline std::vector<GeneratorConfig> small_exact_corpus() {
    return {ApConfig{Scalar(1), Scalar(1), 8}, GpConfig{Scalar(1), Scalar(2), 8}, GridExampleConfig{3, 3}};
}

/// A random set of `size` distinct values in {(v - shift) / den : v in [1, range]};
/// used to vary sign, zero membership and denominators in the oracle runs.
inline RatSet shifted_random_set(std::size_t size, std::uint64_t range, std::uint64_t seed, long shift, long den) {
    const RatSet base = generate(RandomConfig{size, range, seed});
    return affine(base, make_scalar(Integer(1), Integer(den)), make_scalar(Integer(-shift), Integer(den)));
}

} // namespace sumprod::harness
