#include <gtest/gtest.h>

#include <random>

#include "sumprod/collinear.hpp"
#include "support.hpp"

using namespace sumprod;
using testing_support::from_ints;
using testing_support::small_set;
using testing_support::to_vec;

TEST(Triples, HandValues) {
    const RatSet z{0}, z1{0, 1}, z2{0, 1, 2};
    EXPECT_EQ(t_count_brute(z, z, z), 1u);
    EXPECT_EQ(t_count_brute(z1, z1, z1), 40u);
    EXPECT_EQ(t_o_count(z1, z1, z1, TripleMode::brute), 0u);
    EXPECT_EQ(t_o_count(z1, z1, z1, TripleMode::linehash), 0u);
    EXPECT_EQ(t_o_count(z2, z2, z2, TripleMode::brute), 48u);
    EXPECT_EQ(t_o_count(z2, z2, z2, TripleMode::linehash), 48u);

    EXPECT_EQ(oracle::T(to_vec(z), to_vec(z), to_vec(z)), 1u);
    EXPECT_EQ(oracle::T(to_vec(z1), to_vec(z1), to_vec(z1)), 40u);
    EXPECT_EQ(oracle::T_o(to_vec(z1), to_vec(z1), to_vec(z1)), 0u);
    EXPECT_EQ(oracle::T_o(to_vec(z2), to_vec(z2), to_vec(z2)), 48u);
}

TEST(Triples, ModesAgreeWithOracle) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 120; ++i) {
        const RatSet a = small_set(rng, 4, -3, 3, 1 + i % 2);
        const RatSet b = small_set(rng, 4, -2, 4);
        const RatSet c = small_set(rng, 4, -1, 5, 1 + i % 3);
        const Count expected = oracle::T_o(to_vec(a), to_vec(b), to_vec(c));
        EXPECT_EQ(t_o_count(a, b, c, TripleMode::brute), expected);
        EXPECT_EQ(t_o_count(a, b, c, TripleMode::linehash), expected);
        EXPECT_EQ(t_count_brute(a, b, c), oracle::T(to_vec(a), to_vec(b), to_vec(c)));
    }
}

TEST(Triples, BigIntegerPathAgrees) {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 20; ++i) {
        const RatSet a = small_set(rng, 5, -6, 6, 1 + i % 3);
        const RatSet b = small_set(rng, 5, -6, 6);
        const Count lh = t_o_count(a, b, a, TripleMode::linehash);
        const Count br = t_o_count(a, b, a, TripleMode::brute);
        detail::force_big_integers() = true;
        EXPECT_EQ(t_o_count(a, b, a, TripleMode::linehash), lh);
        EXPECT_EQ(t_o_count(a, b, a, TripleMode::brute), br);
        detail::force_big_integers() = false;
    }
}

TEST(Triples, AffineInvariance) {
    // A common affine map of all three sets maps each grid to itself up to an
    // affine map of the plane, which preserves collinearity.
    std::mt19937_64 rng(6);
    for (int i = 0; i < 30; ++i) {
        const RatSet a = small_set(rng, 5, -4, 6);
        const RatSet b = small_set(rng, 5, -4, 6);
        long num = static_cast<long>(rng() % 7) - 3;
        if (num == 0) num = 2;
        const Scalar s = oracle::q(num, 1 + i % 4);
        const Scalar t = oracle::q(static_cast<long>(rng() % 11) - 5, 3);
        EXPECT_EQ(t_o_count(affine(a, s, t), affine(b, s, t), affine(a, s, t), TripleMode::linehash),
                  t_o_count(a, b, a, TripleMode::linehash));
    }
}

TEST(Triples, OriginBound) {
    // T^o({0}, A, A) >= E^x(A) - |A|^2 for zero-free A.
    std::mt19937_64 rng(13);
    for (int i = 0; i < 40; ++i) {
        const RatSet a = small_set(rng, 8, 1, 20, 1 + i % 2);
        const Integer lhs(static_cast<unsigned long>(t_o_count(RatSet{0}, a, a, TripleMode::linehash)));
        EXPECT_GE(lhs, oracle::energy(to_vec(a), to_vec(a), 2, oracle::Op::div) - Integer(a.size() * a.size()));
    }
}

TEST(Triples, Budget) {
    const RatSet a = generate(ApConfig{Scalar(1), Scalar(1), 10});
    EXPECT_THROW(t_o_count(a, a, a, TripleMode::brute, 1000), BudgetExceeded);
    EXPECT_THROW(t_o_count(a, a, a, TripleMode::linehash, 1000), BudgetExceeded);
}

TEST(Triples, Report) {
    const RatSet a = from_ints({0, 1, 2});
    const TripleCountReport r = t_report(a, a, a);
    EXPECT_EQ(r.T, oracle::T(to_vec(a), to_vec(a), to_vec(a)));
    EXPECT_EQ(r.T_o, 48u);
    EXPECT_EQ(r.degenerate_terms, r.T - r.T_o);
    EXPECT_GT(r.ratio_vs_bound.lo, 0);
    EXPECT_LE(r.ratio_vs_bound.lo, r.ratio_vs_bound.hi);
}

TEST(Identity, EqualGrids) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 25; ++i) {
        const RatSet a = small_set(rng, 4, -3, 3);
        const RatSet c = small_set(rng, 4, -3, 4, 1 + i % 2);
        const IdentityReport r = t_identity_check(a, c, c);
        EXPECT_TRUE(r.ok);
        EXPECT_TRUE(r.grid_ok);
        EXPECT_EQ(r.rhs, oracle::T(to_vec(a), to_vec(c), to_vec(c)));
    }
}

TEST(Identity, DistinctGridsGiveTheMixedCount) {
    const RatSet a = from_ints({1, 2});
    const RatSet c = from_ints({1, 2, 4});
    const RatSet d = from_ints({1, 3});
    const IdentityReport r = t_identity_check(a, c, d);
    EXPECT_EQ(r.lhs, 52);
    EXPECT_EQ(r.grid_rhs, 52u);
    EXPECT_EQ(r.rhs, 42u);
    EXPECT_TRUE(r.grid_ok);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.rhs, oracle::T(to_vec(a), to_vec(c), to_vec(d)));
    EXPECT_EQ(r.grid_rhs, oracle::mixed_grid(to_vec(a), to_vec(c), to_vec(d)));

    // The sum itself, straight from its definition.
    Integer lhs = 0;
    for (const auto& x : to_vec(a))
        for (const auto& y : to_vec(a)) lhs += oracle::product_form(oracle::shift(to_vec(c), -x), oracle::shift(to_vec(d), -y));
    EXPECT_EQ(lhs, 52);
}

TEST(Identity, MixedGridOnRandomTriples) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 30; ++i) {
        const RatSet a = small_set(rng, 4, -3, 3);
        const RatSet c = small_set(rng, 4, -3, 3);
        const RatSet d = small_set(rng, 4, -3, 3, 1 + i % 2);
        const IdentityReport r = t_identity_check(a, c, d);
        EXPECT_TRUE(r.grid_ok);
        EXPECT_EQ(r.grid_rhs, oracle::mixed_grid(to_vec(a), to_vec(c), to_vec(d)));
    }
}
