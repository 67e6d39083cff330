#pragma once

// Line enumeration over grids A_i x A_i in integer coordinates.
//
// Every line that carries a collinear triple of pairwise distinct points
// u_i in A_i x A_i is spanned by a distinct pair taken from the two smallest
// grids, so enumerating those pairs and deduplicating the canonical keys
// yields the whole family. Per line, the number of grid points is recovered by
// walking the abscissae of a set and testing the ordinate for membership.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "sumprod/core.hpp"
#include "sumprod/detail/intops.hpp"

namespace sumprod::detail {

template <class Int>
struct IntLine {
    Int a, b, c;

    friend bool operator==(const IntLine& l, const IntLine& m) { return l.a == m.a && l.b == m.b && l.c == m.c; }
    friend bool operator<(const IntLine& l, const IntLine& m) {
        if (l.a != m.a) return l.a < m.a;
        if (l.b != m.b) return l.b < m.b;
        return l.c < m.c;
    }
};

/// Canonical line through two distinct integer points.
template <class Int>
IntLine<Int> int_line_through(const Int& x1, const Int& y1, const Int& x2, const Int& y2) {
    Int a = y2 - y1;
    Int b = x1 - x2;
    const Int g = gcd_abs(a, b);
    if (g != 1) {
        a /= g;
        b /= g;
    }
    if (sign_of(a) < 0 || (sign_of(a) == 0 && sign_of(b) < 0)) {
        a = -a;
        b = -b;
    }
    Int c = a * x1 + b * y1;
    return IntLine<Int>{std::move(a), std::move(b), std::move(c)};
}

/// |l ∩ (S x S)| for a sorted integer set S.
template <class Int>
std::size_t grid_count(const IntLine<Int>& l, const std::vector<Int>& s) {
    if (s.empty()) return 0;
    if (sign_of(l.b) == 0) {
        // a = 1 after normalization: the vertical line x = c.
        return std::binary_search(s.begin(), s.end(), l.c) ? s.size() : 0;
    }
    std::size_t n = 0;
    Int num;
    for (const Int& x : s) {
        num = l.c - l.a * x;
        if (!divides(l.b, num)) continue;
        num /= l.b;
        if (std::binary_search(s.begin(), s.end(), num)) ++n;
    }
    return n;
}

template <class Int>
std::vector<Int> sorted_intersection(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// Grid point counts of one line for A1, A2, A3 and their intersections.
struct LineCounts {
    std::size_t n1 = 0, n2 = 0, n3 = 0;
    std::size_t n12 = 0, n13 = 0, n23 = 0, n123 = 0;

    /// Ordered triples (u1, u2, u3) in the three grids on this line with u_i pairwise distinct.
    Count distinct_triples() const {
        const Count total = Count(n1) * n2 * n3;
        const Count coincide = Count(n12) * n3 + Count(n13) * n2 + Count(n23) * n1;
        return total + 2 * Count(n123) - coincide;
    }

    /// Pairwise-distinct representatives exist (Hall's condition for three sets).
    bool has_distinct_triple() const { return distinct_triples() > 0; }
};

template <class Int>
struct GridFamily {
    std::vector<std::pair<IntLine<Int>, LineCounts>> lines;
};

/// All lines spanned by a distinct pair from two of the three grids, with
/// their counts. Pairs are drawn from the two smallest sets.
template <class Int>
GridFamily<Int> spanned_grid_lines(const std::array<const std::vector<Int>*, 3>& sets) {
    std::array<std::size_t, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return sets[i]->size() < sets[j]->size(); });
    const std::vector<Int>& p = *sets[order[0]];
    const std::vector<Int>& q = *sets[order[1]];

    std::vector<IntLine<Int>> keys;
    keys.reserve(p.size() * p.size() * q.size() * q.size());
    for (const Int& x1 : p) {
        for (const Int& y1 : p) {
            for (const Int& x2 : q) {
                for (const Int& y2 : q) {
                    if (x1 == x2 && y1 == y2) continue;
                    keys.push_back(int_line_through(x1, y1, x2, y2));
                }
            }
        }
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    const std::vector<Int>& s1 = *sets[0];
    const std::vector<Int>& s2 = *sets[1];
    const std::vector<Int>& s3 = *sets[2];
    const auto s12 = sorted_intersection(s1, s2);
    const auto s13 = sorted_intersection(s1, s3);
    const auto s23 = sorted_intersection(s2, s3);
    const auto s123 = sorted_intersection(s12, s3);

    GridFamily<Int> out;
    out.lines.reserve(keys.size());
    for (auto& l : keys) {
        LineCounts c;
        c.n1 = grid_count(l, s1);
        c.n2 = grid_count(l, s2);
        c.n3 = grid_count(l, s3);
        c.n12 = s12.empty() ? 0 : grid_count(l, s12);
        c.n13 = s13.empty() ? 0 : grid_count(l, s13);
        c.n23 = s23.empty() ? 0 : grid_count(l, s23);
        c.n123 = s123.empty() ? 0 : grid_count(l, s123);
        out.lines.emplace_back(std::move(l), c);
    }
    return out;
}

/// Canonical rational line key for an integer-image line, where the image
/// coordinates are the true coordinates multiplied by `scale`.
template <class Int>
LineKey to_line_key(const IntLine<Int>& l, const Integer& scale) {
    return make_line(to_integer(l.a) * scale, to_integer(l.b) * scale, to_integer(l.c));
}

} // namespace sumprod::detail
