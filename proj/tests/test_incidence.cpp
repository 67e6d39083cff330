#include <gtest/gtest.h>

#include <random>

#include "sumprod/incidence.hpp"
#include "support.hpp"

using namespace sumprod;

namespace {

std::vector<oracle::Pt> to_pts(const std::vector<PlanePoint>& ps) {
    std::vector<oracle::Pt> out;
    for (const auto& p : ps) out.push_back({p.x, p.y});
    return out;
}

std::vector<oracle::Ln> to_lns(const std::vector<LineKey>& ls) {
    std::vector<oracle::Ln> out;
    for (const auto& l : ls) out.push_back({l.a, l.b, l.c});
    return out;
}

Arrangement random_arrangement(std::mt19937_64& rng, int box, std::size_t np, std::size_t nl, long den) {
    std::uniform_int_distribution<long> coord(0, box);
    std::uniform_int_distribution<long> coef(-3, 3);
    std::vector<PlanePoint> pts;
    for (std::size_t i = 0; i < np; ++i) pts.push_back({oracle::q(coord(rng), den), oracle::q(coord(rng), den)});
    std::vector<LineKey> lines;
    for (std::size_t i = 0; i < nl; ++i) {
        const PlanePoint& p = pts[rng() % pts.size()];
        const PlanePoint& q = pts[rng() % pts.size()];
        if (!(p == q) && rng() % 3 != 0) {
            lines.push_back(line_through(p, q));
        } else {
            const long a = coef(rng), b = coef(rng);
            if (a == 0 && b == 0) continue;
            lines.push_back(make_line(a, b, coef(rng)));
        }
    }
    return Arrangement(std::move(pts), std::move(lines));
}

} // namespace

TEST(Incidence, SmallGrid) {
    const auto pts = grid_points(RatSet{0, 1});
    ASSERT_EQ(pts.size(), 4u);
    const Arrangement arr(pts, {make_line(1, 0, 0), make_line(1, -1, 0), make_line(1, 1, 5)});
    EXPECT_EQ(incidences(arr), 4u);
    // Four points in general position span six two-point lines.
    EXPECT_EQ(spanned_line_counts(pts).size(), 6u);
}

TEST(Incidence, MatchesOracle) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 200; ++i) {
        const Arrangement arr = random_arrangement(rng, 6, 1 + rng() % 40, 1 + rng() % 40, 1 + i % 2);
        const Count n = incidences(arr);
        EXPECT_EQ(n, oracle::incidences(to_pts(arr.points()), to_lns(arr.lines())));
        const StBoundReport st = st_bound_check(arr);
        EXPECT_EQ(st.ok, oracle::st_holds(n, arr.points().size(), arr.lines().size()));
        EXPECT_TRUE(st.ok);
        EXPECT_LE(st.bound_lo, st.bound_hi);
    }
}

TEST(Incidence, BigIntegerPathAgrees) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 30; ++i) {
        const Arrangement arr = random_arrangement(rng, 8, 30, 30, 3);
        const Count fast = incidences(arr);
        detail::force_big_integers() = true;
        const Count big = incidences(arr);
        const auto lines_big = spanned_line_counts(arr.points());
        detail::force_big_integers() = false;
        EXPECT_EQ(fast, big);
        EXPECT_EQ(lines_big, spanned_line_counts(arr.points()));
    }
}

TEST(Incidence, LinePairProperty) {
    // Every pair of distinct points spans a canonical line carrying both.
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> v(-50, 50);
    for (int i = 0; i < 1000; ++i) {
        const PlanePoint p{oracle::q(v(rng), 1 + i % 5), oracle::q(v(rng), 1 + i % 7)};
        const PlanePoint q{oracle::q(v(rng), 1 + i % 3), oracle::q(v(rng), 1)};
        if (p == q) continue;
        const LineKey l = line_through(p, q);
        ASSERT_TRUE(is_canonical(l));
        ASSERT_TRUE(on_line(l, p));
        ASSERT_TRUE(on_line(l, q));
        ASSERT_EQ(l, line_through(q, p));
    }
}

TEST(Incidence, RichLinesMatchOracle) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 40; ++i) {
        const RatSet a = testing_support::small_set(rng, 5, -3, 4);
        const auto pts = grid_points(a);
        for (std::size_t k = 2; k <= 4; ++k) {
            EXPECT_EQ(rich_lines(pts, k).size(), oracle::rich_lines(to_pts(pts), k));
        }
    }
    EXPECT_THROW(rich_lines({}, 1), InvalidArgument);
}

TEST(Incidence, RichPoints) {
    // The three lines x = 0, y = 0 and x + y = 0 meet only at the origin.
    const std::vector<LineKey> lines{make_line(1, 0, 0), make_line(0, 1, 0), make_line(1, 1, 0), make_line(1, 0, 2)};
    const auto p3 = rich_points(lines, 3);
    ASSERT_EQ(p3.size(), 1u);
    EXPECT_EQ(p3[0], (PlanePoint{0, 0}));
    EXPECT_EQ(rich_points(lines, 2).size(), 3u);
}

TEST(Incidence, RichLinesConstant) {
    EXPECT_EQ(rich_lines_constant(10, 8, 2), make_scalar(10, 12));
    EXPECT_EQ(rich_lines_constant(1, 0, 2), 0);
}

TEST(Incidence, LineMoments) {
    const RatSet a{1, 2, 3};
    const LineMomentReport r = line_moment_sums(a, a, a, 1);
    // Lines through three distinct grid points of {1,2,3}^2: 3 rows, 3 columns, 2 diagonals.
    EXPECT_EQ(r.family_size, 8u);
    EXPECT_EQ(r.sums[0], 24);
    const LineMomentReport all = line_moment_sums(a, a, a, 2, LineFamily::rich_in_grid);
    // The 9-point grid spans 20 lines: 8 with three points and 12 with two.
    EXPECT_EQ(all.sums[0], 8 * 9 + 12 * 4);
    EXPECT_THROW(line_moment_sums(a, a, a, 4), InvalidArgument);
}
