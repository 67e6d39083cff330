#pragma once

// Point-line incidences, rich lines and rich points, the explicit
// Szemeredi-Trotter bound I(P, L) <= 4 |P|^{2/3} |L|^{2/3} + 4 |P| + |L|, and
// moment sums of grid-line counts.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sumprod/core.hpp"
#include "sumprod/detail/gridlines.hpp"
#include "sumprod/detail/scaled.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/interval.hpp"
#include "sumprod/setgen.hpp"

namespace sumprod {

/// Deduplicated points and lines.
class Arrangement {
public:
    Arrangement() = default;
    Arrangement(std::vector<PlanePoint> points, std::vector<LineKey> lines)
        : points_(std::move(points)), lines_(std::move(lines)) {
        for (const LineKey& l : lines_) {
            if (!is_canonical(l)) throw InvalidArgument("arrangement line " + to_string(l) + " is not canonical");
        }
        std::sort(points_.begin(), points_.end());
        points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
        std::sort(lines_.begin(), lines_.end());
        lines_.erase(std::unique(lines_.begin(), lines_.end()), lines_.end());
    }

    const std::vector<PlanePoint>& points() const { return points_; }
    const std::vector<LineKey>& lines() const { return lines_; }

private:
    std::vector<PlanePoint> points_;
    std::vector<LineKey> lines_;
};

/// Points of the grid A x A, sorted.
inline std::vector<PlanePoint> grid_points(const RatSet& a) {
    std::vector<PlanePoint> out;
    out.reserve(a.size() * a.size());
    for (const Scalar& x : a) {
        for (const Scalar& y : a) out.push_back(PlanePoint{x, y});
    }
    return out;
}

namespace detail {

inline Integer point_scale(const std::vector<PlanePoint>& points) {
    Integer l(1);
    for (const PlanePoint& p : points) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.x.get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.y.get_den_mpz_t());
    }
    return l;
}

template <class Int>
struct IntPoints {
    Integer scale;
    std::vector<std::pair<Int, Int>> pts;
};

/// Calls fn(IntPoints<Int>) on the integer image of a point set.
template <class Fn>
decltype(auto) with_point_image(const std::vector<PlanePoint>& points, Fn&& fn) {
    const Integer scale = point_scale(points);
    std::vector<std::pair<Integer, Integer>> big;
    big.reserve(points.size());
    bool small = !force_big_integers();
    for (const PlanePoint& p : points) {
        Integer x = p.x.get_num() * (scale / p.x.get_den());
        Integer y = p.y.get_num() * (scale / p.y.get_den());
        if (abs(x) > kSmallLimit || abs(y) > kSmallLimit) small = false;
        big.emplace_back(std::move(x), std::move(y));
    }
    if (small) {
        IntPoints<std::int64_t> img{scale, {}};
        img.pts.reserve(big.size());
        for (const auto& [x, y] : big) img.pts.emplace_back(x.get_si(), y.get_si());
        return fn(img);
    }
    IntPoints<mpz_class> img{scale, std::move(big)};
    return fn(img);
}

/// Recovers m from the unordered pair count m(m-1)/2.
inline std::size_t members_from_pairs(Count pairs) {
    auto m = static_cast<std::size_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(pairs))) / 2.0);
    while (Count(m) * (m - 1) / 2 > pairs) --m;
    while (Count(m + 1) * m / 2 <= pairs) ++m;
    return m;
}

} // namespace detail

/// |{(p, l) : p on l}|.
inline Count incidences(const Arrangement& arr) {
    if (arr.points().empty() || arr.lines().empty()) return 0;
    // Image coordinates are scale * (x, y), so p lies on a x + b y = c iff
    // a X + b Y = scale * c.
    return detail::with_point_image(arr.points(), [&](const auto& img) -> Count {
        using Int = typename std::decay_t<decltype(img.pts)>::value_type::first_type;
        Count n = 0;
        for (const LineKey& l : arr.lines()) {
            const Integer sc = l.c * img.scale;
            const bool fits = std::is_same_v<Int, std::int64_t> && abs(l.a) <= detail::kSmallLimit &&
                              abs(l.b) <= detail::kSmallLimit && abs(sc) <= (Integer(1) << 60);
            if constexpr (std::is_same_v<Int, std::int64_t>) {
                if (fits) {
                    const std::int64_t a = l.a.get_si(), b = l.b.get_si(), c = sc.get_si();
                    for (const auto& [x, y] : img.pts) n += (a * x + b * y == c);
                    continue;
                }
            }
            for (const auto& [x, y] : img.pts) n += (l.a * detail::to_integer(x) + l.b * detail::to_integer(y) == sc);
        }
        return n;
    });
}

struct StBoundReport {
    Count count = 0;
    double bound_lo = 0;
    double bound_hi = 0;
    Verdict verdict = Verdict::inconclusive;
    bool ok = false;
};

/// Enclosure of 4 |P|^{2/3} |L|^{2/3} + 4 |P| + |L|.
inline Interval st_bound(std::size_t points, std::size_t lines, mpfr_prec_t prec = kIntervalPrecision) {
    const Integer p(static_cast<unsigned long>(points));
    const Integer l(static_cast<unsigned long>(lines));
    return Interval::of(4L, prec) * pow(Interval::of(Integer(p * l), prec), 2, 3) + Interval::of(Integer(4 * p + l), prec);
}

inline StBoundReport st_bound_check(const Arrangement& arr) {
    StBoundReport r;
    r.count = incidences(arr);
    const std::size_t np = arr.points().size();
    const std::size_t nl = arr.lines().size();
    r.verdict = integer_le_real(Integer(static_cast<unsigned long>(r.count)),
                                [&](mpfr_prec_t prec) { return st_bound(np, nl, prec); });
    const Interval b = st_bound(np, nl);
    r.bound_lo = b.lo_double();
    r.bound_hi = b.hi_double();
    r.ok = r.verdict == Verdict::yes;
    return r;
}

/// Lines spanned by at least one point pair with their number of points.
inline std::vector<std::pair<LineKey, std::size_t>> spanned_line_counts(const std::vector<PlanePoint>& points) {
    std::vector<PlanePoint> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return detail::with_point_image(pts, [](const auto& img) {
        using Int = typename std::decay_t<decltype(img.pts)>::value_type::first_type;
        std::vector<detail::IntLine<Int>> keys;
        const auto& p = img.pts;
        keys.reserve(p.size() * (p.size() > 0 ? p.size() - 1 : 0) / 2);
        for (std::size_t i = 0; i < p.size(); ++i) {
            for (std::size_t j = i + 1; j < p.size(); ++j) {
                keys.push_back(detail::int_line_through(p[i].first, p[i].second, p[j].first, p[j].second));
            }
        }
        std::vector<std::pair<LineKey, std::size_t>> out;
        for (auto& [l, pairs] : detail::run_lengths(keys)) {
            out.emplace_back(detail::to_line_key(l, img.scale), detail::members_from_pairs(pairs));
        }
        std::sort(out.begin(), out.end());
        return out;
    });
}

/// Lines containing at least k points of P.
inline std::vector<LineKey> rich_lines(const std::vector<PlanePoint>& points, std::size_t k) {
    if (k < 2) throw InvalidArgument("rich_lines needs k >= 2");
    std::vector<LineKey> out;
    for (auto& [l, m] : spanned_line_counts(points)) {
        if (m >= k) out.push_back(l);
    }
    return out;
}

/// Points lying on at least k of the given (pairwise distinct) lines.
inline std::vector<PlanePoint> rich_points(const std::vector<LineKey>& lines_in, std::size_t k) {
    if (k < 2) throw InvalidArgument("rich_points needs k >= 2");
    std::vector<LineKey> lines = lines_in;
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    std::unordered_map<PlanePoint, Count, PointHash> pairs;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            if (auto p = intersect(lines[i], lines[j])) ++pairs[*p];
        }
    }
    std::vector<PlanePoint> out;
    for (const auto& [p, c] : pairs) {
        if (detail::members_from_pairs(c) >= k) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// |rich_lines(P, k)| / (|P|^2 / k^3 + |P| / k): the observed constant of the rich-lines bound.
inline Scalar rich_lines_constant(std::size_t lines_found, std::size_t points, std::size_t k) {
    const Scalar n(static_cast<unsigned long>(points));
    const Scalar kk(static_cast<unsigned long>(k));
    const Scalar denom = n * n / (kk * kk * kk) + n / kk;
    if (denom == 0) return Scalar(0);
    return Scalar(static_cast<unsigned long>(lines_found)) / denom;
}

// ---------------------------------------------------------------------------
// Grid line statistics alpha_{i,l} = |l ∩ (A_i x A_i)|.

enum class LineFamily {
    /// Lines carrying three pairwise distinct points u_i in A_i x A_i.
    collinear_triples,
    /// For each i separately, all lines with alpha_{i,l} >= 2.
    rich_in_grid,
};

struct LineStats {
    /// line -> (alpha_1, alpha_2, alpha_3), sorted by line.
    std::vector<std::pair<LineKey, std::array<std::size_t, 3>>> lines;
};

/// The family of lines through three pairwise distinct points u_i in A_i x A_i.
inline LineStats collinear_line_family(const RatSet& a1, const RatSet& a2, const RatSet& a3) {
    return detail::with_integer_image({&a1, &a2, &a3}, [](const auto& img) {
        const auto family = detail::spanned_grid_lines<typename std::decay_t<decltype(img.sets[0])>::value_type>(
            {&img.sets[0], &img.sets[1], &img.sets[2]});
        LineStats out;
        for (const auto& [l, c] : family.lines) {
            if (!c.has_distinct_triple()) continue;
            out.lines.emplace_back(detail::to_line_key(l, img.scale), std::array<std::size_t, 3>{c.n1, c.n2, c.n3});
        }
        std::sort(out.lines.begin(), out.lines.end());
        return out;
    });
}

struct LineMomentReport {
    int p = 1;
    LineFamily family = LineFamily::collinear_triples;
    std::size_t family_size = 0;
    std::array<Integer, 3> sums;   ///< sum over family lines with alpha_i >= 2 of alpha_i^p
    std::array<Scalar, 3> ratios;  ///< sums[i] / (|A_1|^{3-p} |A_i|^{p+1})
};

/// Moment sums of alpha_{i,l} over lines with alpha_{i,l} >= 2. The bound
/// ratio assumes the caller ordered |A_1| <= |A_2| <= |A_3|.
inline LineMomentReport line_moment_sums(const RatSet& a1, const RatSet& a2, const RatSet& a3, int p,
                                         LineFamily family = LineFamily::collinear_triples) {
    if (p < 1 || p > 3) throw InvalidArgument("line_moment_sums needs p in [1, 3]");
    LineMomentReport r;
    r.p = p;
    r.family = family;
    const std::array<const RatSet*, 3> sets{&a1, &a2, &a3};
    for (auto& s : r.sums) s = 0;
    Integer t;
    if (family == LineFamily::collinear_triples) {
        const LineStats stats = collinear_line_family(a1, a2, a3);
        r.family_size = stats.lines.size();
        for (const auto& [l, alpha] : stats.lines) {
            for (std::size_t i = 0; i < 3; ++i) {
                if (alpha[i] < 2) continue;
                mpz_ui_pow_ui(t.get_mpz_t(), alpha[i], static_cast<unsigned long>(p));
                r.sums[i] += t;
            }
        }
    } else {
        for (std::size_t i = 0; i < 3; ++i) {
            const auto lines = spanned_line_counts(grid_points(*sets[i]));
            r.family_size += lines.size();
            for (const auto& [l, m] : lines) {
                mpz_ui_pow_ui(t.get_mpz_t(), m, static_cast<unsigned long>(p));
                r.sums[i] += t;
            }
        }
    }
    for (std::size_t i = 0; i < 3; ++i) {
        Integer d1, d2;
        mpz_ui_pow_ui(d1.get_mpz_t(), a1.size(), static_cast<unsigned long>(3 - p));
        mpz_ui_pow_ui(d2.get_mpz_t(), sets[i]->size(), static_cast<unsigned long>(p + 1));
        const Integer denom = d1 * d2;
        r.ratios[i] = denom == 0 ? Scalar(0) : make_scalar(r.sums[i], denom);
    }
    return r;
}

} // namespace sumprod
