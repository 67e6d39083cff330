#include <gtest/gtest.h>

#include <map>
#include <random>

#include "sumprod/decompose.hpp"
#include "support.hpp"

using namespace sumprod;
using testing_support::from_ints;
using testing_support::small_set;
using testing_support::to_vec;

namespace {

CountHistogram histogram_of(const std::vector<Count>& counts) {
    std::vector<CountHistogram::Entry> e;
    for (std::size_t i = 0; i < counts.size(); ++i) e.emplace_back(Scalar(static_cast<long>(i)), counts[i]);
    return CountHistogram(std::move(e));
}

// r_{P+B}(b) straight from pairs.
Count pop_naive(const Scalar& b, const RatSet& p, const RatSet& base) {
    Count n = 0;
    for (const Scalar& x : p)
        for (const Scalar& y : base) n += (x + y == b);
    return n;
}

// sum_{x in zA} |zA ∩ x zA|
Integer dilate_naive(const RatSet& a, const Scalar& z) {
    std::vector<Scalar> za;
    for (const Scalar& x : a) za.push_back(z * x);
    Integer n = 0;
    for (const Scalar& x : za)
        for (const Scalar& y : za)
            for (const Scalar& w : za) n += (x * y == w);
    return n;
}

} // namespace

TEST(Dyadic, SelectsTheHeaviestBand) {
    // One value with r = 3 and nine with r = 1, k = 3: the t = 2 band carries
    // 27 of the 36 moment while |P| t^k prefers t = 1 (9 > 8).
    std::vector<Count> counts(10, 1);
    counts[4] = 3;
    const DyadicBand b = dyadic_band(histogram_of(counts), 3);
    EXPECT_EQ(b.t, 2u);
    EXPECT_EQ(b.mass, 27);
    EXPECT_EQ(b.moment, 36);
    EXPECT_EQ(b.P, (RatSet{4}));
    EXPECT_EQ(b.log_factor(), 3u);
    EXPECT_TRUE(b.pigeonhole_holds());
    // The smaller-|P| t^k choice would fail the guarantee: 9 * 3 < 36.
    EXPECT_LT(9 * 3, 36);
}

TEST(Dyadic, TiesGoToTheSmallerT) {
    // Band t = 1 has mass 4 (four ones), band t = 2 has mass 4 (one two), k = 2.
    const DyadicBand b = dyadic_band(histogram_of({1, 1, 2, 1, 1}), 2);
    EXPECT_EQ(b.t, 1u);
    EXPECT_EQ(b.P.size(), 4u);
}

TEST(Dyadic, PigeonholeOnRandomHistograms) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        std::vector<Count> counts(1 + rng() % 30);
        for (auto& c : counts) c = 1 + rng() % (1 + (rng() % 200));
        for (int k = 1; k <= 4; ++k) {
            const DyadicBand b = dyadic_band(histogram_of(counts), k);
            ASSERT_TRUE(b.pigeonhole_holds());
            // Recompute the band and its mass by hand.
            Integer mass = 0;
            std::size_t members = 0;
            for (Count c : counts) {
                if (c >= b.t && c < 2 * b.t) {
                    Integer t = 1;
                    for (int j = 0; j < k; ++j) t *= static_cast<unsigned long>(c);
                    mass += t;
                    ++members;
                }
            }
            ASSERT_EQ(mass, b.mass);
            ASSERT_EQ(members, b.P.size());
        }
    }
    EXPECT_THROW(dyadic_band(CountHistogram{}, 2), EmptyHistogram);
    EXPECT_THROW(dyadic_band(histogram_of({1}), 0), InvalidArgument);
}

TEST(Extractor, CertificatesVerify) {
    std::vector<RatSet> sets{generate(ApConfig{Scalar(1), Scalar(1), 16}), generate(GpConfig{Scalar(1), Scalar(2), 10}),
                             generate(GridExampleConfig{3, 3}), generate(RandomConfig{20, 100, 5}),
                             RatSet{make_scalar(1, 2), make_scalar(-3, 4), Scalar(5), Scalar(7)}};
    for (const RatSet& a : sets) {
        const ExtractionCertificate c = extract_mult_structured(a);
        const CertificateCheck v = verify_certificate(c);
        EXPECT_TRUE(v.ok) << (v.failures.empty() ? "" : v.failures.front());
        EXPECT_FALSE(c.output().empty());
        EXPECT_TRUE(is_subset(c.output(), a));
        EXPECT_EQ(c.E3_input, oracle::energy(to_vec(a), to_vec(a), 3, oracle::Op::sub));
        EXPECT_EQ(c.Emul_output, oracle::energy(to_vec(c.output()), to_vec(c.output()), 2, oracle::Op::div));
    }
}

TEST(Extractor, ProgressionChain) {
    const RatSet a = generate(ApConfig{Scalar(1), Scalar(1), 16});
    const ExtractionCertificate c = extract_mult_structured(a);
    ASSERT_TRUE(verify_certificate(c).ok);
    // |A'| q and |P| t agree within 4 (⌈log2 16⌉ + 1)^2 = 100 either way.
    const Count out = c.output().size() * c.q();
    const Count pt = c.P.size() * c.t;
    EXPECT_LE(pt, 100 * out);
    EXPECT_LE(out, 100 * pt);
    // Chained identities from raw pairs: S_P = sum_P r_{A-A}.
    Count s = 0;
    for (const Scalar& x : a)
        for (const Scalar& y : a) s += c.P.contains(x - y);
    EXPECT_EQ(s, c.S_P);
}

TEST(Extractor, TamperedCertificateFails) {
    const ExtractionCertificate c = extract_mult_structured(generate(ApConfig{Scalar(1), Scalar(1), 12}));
    ASSERT_TRUE(verify_certificate(c).ok);
    auto bad = c;
    bad.t *= 2;
    EXPECT_FALSE(verify_certificate(bad).ok);
    bad = c;
    bad.m1 += 1;
    EXPECT_FALSE(verify_certificate(bad).ok);
    bad = c;
    bad.A2_pop = set_union(bad.A2_pop, RatSet{1000});
    bad.A1_pop = set_union(bad.A1_pop, RatSet{1000});
    EXPECT_FALSE(verify_certificate(bad).ok);
}

TEST(Extractor, InvalidInput) {
    EXPECT_THROW(extract_mult_structured(RatSet{1}), DegenerateInput);
    EXPECT_THROW(extract_mult_structured(from_ints({0, 1, 2})), InvalidArgument);
}

TEST(BalogWooley, Postconditions) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
        const RatSet a = small_set(rng, 24, 1, 60, 1 + i % 2);
        if (a.size() < 2) continue;
        const DecompositionResult r = bw_decompose(a);
        const RatSet& b = r.parts.at("B");
        const RatSet& c = r.parts.at("C");
        EXPECT_TRUE(are_disjoint(b, c));
        EXPECT_EQ(set_union(b, c), a);
        // E_3^+(B)^11 |A|^6 <= |A|^44
        const Integer e3 = oracle::energy(to_vec(b), to_vec(b), 3, oracle::Op::sub);
        Integer lhs = 1, rhs = 1;
        for (int j = 0; j < 11; ++j) lhs *= e3;
        const Integer n(static_cast<unsigned long>(a.size()));
        for (int j = 0; j < 6; ++j) lhs *= n;
        for (int j = 0; j < 44; ++j) rhs *= n;
        EXPECT_LE(lhs, rhs);
        EXPECT_TRUE(verify_decomposition(r).ok);
    }
}

TEST(BalogWooley, ExplicitThreshold) {
    const RatSet a = generate(GridExampleConfig{3, 3});
    const DecompositionResult r = bw_decompose(a, Scalar(static_cast<long>(a.size())));
    ASSERT_TRUE(r.M.has_value());
    const Integer e3 = oracle::energy(to_vec(r.parts.at("B")), to_vec(r.parts.at("B")), 3, oracle::Op::sub);
    // Exit guard: E_3^+(B) M <= |A|^4.
    EXPECT_LE(Scalar(e3) * *r.M, Scalar(Integer(81) * 81));
    EXPECT_TRUE(verify_decomposition(r).ok);
    EXPECT_THROW(bw_decompose(a, Scalar(0)), InvalidArgument);
    EXPECT_THROW(bw_decompose(a, Scalar(100000)), InvalidArgument);
    EXPECT_THROW(bw_decompose(from_ints({0, 1, 2})), InvalidArgument);
}

TEST(XY, Postconditions) {
    std::mt19937_64 rng(18);
    for (int i = 0; i < 20; ++i) {
        const RatSet a = small_set(rng, 24, 1, 50, 1 + i % 3);
        if (a.size() < 2) continue;
        const DecompositionResult r = xy_decompose(a);
        const RatSet& x = r.parts.at("X");
        const RatSet& y = r.parts.at("Y");
        EXPECT_EQ(set_union(x, y), a);
        EXPECT_GE(2 * x.size(), a.size());
        EXPECT_GE(2 * y.size(), a.size());
        EXPECT_TRUE(verify_decomposition(r).ok);
        for (const auto& c : r.certificates) EXPECT_TRUE(verify_certificate(c).ok);
    }
}

TEST(XY, TamperedResultFails) {
    DecompositionResult r = xy_decompose(generate(ApConfig{Scalar(1), Scalar(1), 12}));
    ASSERT_TRUE(verify_decomposition(r).ok);
    r.parts["Y"] = RatSet{1};
    EXPECT_FALSE(verify_decomposition(r).ok);
}

TEST(Regularize, Postconditions) {
    const std::vector<RatSet> sets{generate(ApConfig{Scalar(1), Scalar(1), 20}), generate(GpConfig{Scalar(1), Scalar(3), 8}),
                                   generate(RandomConfig{24, 200, 11}), generate(GridExampleConfig{4, 3})};
    for (const RatSet& a : sets) {
        for (int k : {2, 3}) {
            const RegTrace tr = regularize(a, k);
            const RegularizationCheck v = verify_regularization(a, tr);
            EXPECT_TRUE(v.ok) << (v.failures.empty() ? "" : v.failures.front());
            EXPECT_TRUE(is_subset(tr.B_dprime, tr.B_prime));
            EXPECT_TRUE(is_subset(tr.B_prime, tr.B));
            EXPECT_TRUE(is_subset(tr.B, a));
            EXPECT_LE(tr.steps.size(), tr.max_steps);
            EXPECT_LE(tr.eps_lo, tr.eps_hi);

            // Band and sandwich from scratch.
            std::map<Scalar, Count> diff;
            for (const Scalar& x : tr.B)
                for (const Scalar& y : tr.B) ++diff[x - y];
            Count g = 0;
            for (const auto& [x, c] : diff) {
                const bool in_band = c >= tr.t && c < 2 * tr.t;
                EXPECT_EQ(in_band, tr.P.contains(x));
                if (in_band) g += c;
            }
            EXPECT_EQ(g, tr.G);
            for (const Scalar& b : tr.B_dprime) {
                const Integer lhs = Integer(static_cast<unsigned long>(pop_naive(b, tr.P, tr.B))) * (1L << (k + 1)) *
                                    static_cast<unsigned long>(tr.B.size());
                EXPECT_GE(lhs, Integer(static_cast<unsigned long>(g)));
            }
        }
    }
}

TEST(Regularize, InvalidInput) {
    EXPECT_THROW(regularize(from_ints({1, 2, 3}), 2), DegenerateInput);
    EXPECT_THROW(regularize(from_ints({1, 2, 3, 4}), 1), InvalidArgument);
    EXPECT_THROW(regularize(from_ints({1, 2, 3, 4}), 9), InvalidArgument);
}

TEST(Regularize, TamperedTraceFails) {
    const RatSet a = generate(ApConfig{Scalar(1), Scalar(1), 16});
    RegTrace tr = regularize(a, 2);
    ASSERT_TRUE(verify_regularization(a, tr).ok);
    tr.G += 1;
    EXPECT_FALSE(verify_regularization(a, tr).ok);
}

TEST(BestZ, MatchesNaiveMaximum) {
    const std::vector<RatSet> sets{from_ints({1, 2, 4, 8}), from_ints({2, 3, 6}),
                                   RatSet{make_scalar(1, 2), Scalar(1), Scalar(2), Scalar(3)}};
    for (const RatSet& a : sets) {
        const RatSet cands = default_z_candidates(a);
        const BestZ b = best_z(a, cands);
        Integer best = -1;
        for (const Scalar& z : cands) best = std::max(best, dilate_naive(a, z));
        EXPECT_EQ(b.value, best);
        EXPECT_EQ(dilate_naive(a, b.z), best);
        EXPECT_EQ(b.all.size(), cands.size());
    }
    EXPECT_THROW(best_z(from_ints({1, 2}), RatSet{}), EmptyCandidateList);
    EXPECT_THROW(best_z(from_ints({1, 2}), RatSet{0}), ZeroScale);
    EXPECT_THROW(best_z(from_ints({0, 2}), RatSet{1}), InvalidArgument);
}
