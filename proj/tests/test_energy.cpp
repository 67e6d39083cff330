#include <gtest/gtest.h>

#include <random>

#include "sumprod/detail/scaled.hpp"
#include "sumprod/energy.hpp"
#include "support.hpp"

using namespace sumprod;
using testing_support::from_ints;
using testing_support::small_set;
using testing_support::to_vec;

TEST(Energy, HandValues) {
    EXPECT_EQ(additive_energy(from_ints({1, 2, 3})), 19);
    EXPECT_EQ(additive_energy(from_ints({1, 2, 3}), 3), 45);
    EXPECT_EQ(multiplicative_energy(from_ints({1, 2, 4})), 19);
    EXPECT_EQ(additive_energy(from_ints({1, 2, 3, 4})), 44);

    EXPECT_EQ(oracle::energy(oracle::vec({1, 2, 3}), oracle::vec({1, 2, 3}), 2, oracle::Op::sub), 19);
    EXPECT_EQ(oracle::energy(oracle::vec({1, 2, 3}), oracle::vec({1, 2, 3}), 3, oracle::Op::sub), 45);
    EXPECT_EQ(oracle::energy(oracle::vec({1, 2, 4}), oracle::vec({1, 2, 4}), 2, oracle::Op::div), 19);
    EXPECT_EQ(oracle::energy(oracle::vec({1, 2, 3, 4}), oracle::vec({1, 2, 3, 4}), 2, oracle::Op::sub), 44);
}

TEST(Energy, HistogramMassIsProductOfSizes) {
    const RatSet a = from_ints({-3, 0, 1, 5, 8});
    const RatSet b = from_ints({2, 7, 9});
    for (SetOp op : {SetOp::sum, SetOp::diff, SetOp::prod, SetOp::ratio}) {
        EXPECT_EQ(rep_histogram(a, b, op).total(), a.size() * b.size()) << to_string(op);
    }
    const CountHistogram h = rep_histogram(a, a, SetOp::diff);
    EXPECT_EQ(h.count(0), a.size());
    EXPECT_EQ(h.count(100), 0u);
    EXPECT_EQ(h.support(), set_op(a, a, SetOp::diff));
    EXPECT_THROW(rep_histogram(a, a, SetOp::ratio), DivisionByZero);
}

TEST(Energy, MatchesOracleOnRandomSets) {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 150; ++i) {
        const RatSet a = small_set(rng, 7, -6, 9, 1 + i % 3);
        const RatSet b = small_set(rng, 7, 1, 12, 1 + i % 2);
        for (int k = 2; k <= 4; ++k) {
            EXPECT_EQ(energy(a, b, k, Flavor::additive), oracle::energy(to_vec(a), to_vec(b), k, oracle::Op::sub));
            EXPECT_EQ(energy(b, b, k, Flavor::multiplicative), oracle::energy(to_vec(b), to_vec(b), k, oracle::Op::div));
        }
    }
}

TEST(Energy, BigIntegerPathAgrees) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 40; ++i) {
        const RatSet a = small_set(rng, 8, 1, 30, 1 + i % 4);
        const Integer e_add = additive_energy(a, 3);
        const Integer e_mul = multiplicative_energy(a);
        detail::force_big_integers() = true;
        const Integer big_add = additive_energy(a, 3);
        const Integer big_mul = multiplicative_energy(a);
        detail::force_big_integers() = false;
        EXPECT_EQ(e_add, big_add);
        EXPECT_EQ(e_mul, big_mul);
    }
    // Values above the int64 image limit take the mpz path on their own.
    const RatSet huge{Scalar(Integer("100000000000000000000")), Scalar(Integer("200000000000000000000")), Scalar(3)};
    EXPECT_EQ(additive_energy(huge), oracle::energy(to_vec(huge), to_vec(huge), 2, oracle::Op::sub));
    EXPECT_EQ(multiplicative_energy(huge), oracle::energy(to_vec(huge), to_vec(huge), 2, oracle::Op::div));
}

TEST(Energy, ProductFormWithZero) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        const RatSet x = small_set(rng, 5, -3, 3);
        const RatSet y = small_set(rng, 5, -3, 3, 1 + i % 2);
        EXPECT_EQ(energy_mul_product_form(x, y), oracle::product_form(to_vec(x), to_vec(y)));
    }
    EXPECT_EQ(energy_mul_product_form(RatSet{0}, RatSet{0}), 1);
}

TEST(Energy, MomentRange) {
    EXPECT_THROW(additive_energy(from_ints({1, 2}), 1), InvalidArgument);
    EXPECT_THROW(additive_energy(from_ints({1, 2}), 9), InvalidArgument);
}

TEST(Energy, DLower) {
    const RatSet a = from_ints({1, 2, 3, 4});
    const std::vector<RatSet> cands{from_ints({1}), a, set_op(a, a, SetOp::diff)};
    const DLowerEstimate d = d_lower(a, 2, Flavor::additive, cands);
    // E(A, {1}) / 4 = 1, E(A, A) / 16 = 44/16, E(A, A - A) / 28 = 92/28.
    EXPECT_EQ(d.value, make_scalar(23, 7));
    EXPECT_EQ(d.witness_index, 2u);
    EXPECT_THROW(d_lower(a, 2, Flavor::additive, std::vector<RatSet>{}), EmptyCandidateList);
}

TEST(Energy, ExactInequalities) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 60; ++i) {
        const RatSet a = small_set(rng, 9, 1, 40, 1 + i % 3);
        EXPECT_TRUE(cauchy_schwarz_ladder_holds(a));
        EXPECT_TRUE(product_set_energy_bound_holds(a, SetOp::prod));
        EXPECT_TRUE(product_set_energy_bound_holds(a, SetOp::ratio));
    }
    EXPECT_THROW(product_set_energy_bound_holds(from_ints({0, 1}), SetOp::prod), DivisionByZero);
}

TEST(Energy, L4UnionCheck) {
    const std::vector<RatSet> parts{from_ints({1, 2, 4}), from_ints({3, 6}), from_ints({5})};
    const L4Check c = l4_union_check(parts);
    EXPECT_EQ(c.verdict, Verdict::yes);
    EXPECT_EQ(c.union_energy, multiplicative_energy(from_ints({1, 2, 3, 4, 5, 6})));
    EXPECT_LE(c.bound_lo, c.bound_hi);
    const std::vector<RatSet> overlapping{from_ints({1, 2}), from_ints({2, 3})};
    EXPECT_THROW(l4_union_check(overlapping), InvalidArgument);
}
