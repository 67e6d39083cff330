#pragma once

// Constrained ratio-of-sums counts.
//
//   r(z) = #{(a1, a1', a2, a2') in A1^2 x A2^2 : a1' + a2' = z (a1 + a2)}
//   R(Z; A1, A2) = sum_{z in Z} r(z)^2
//
// r is taken in equation form, so zero sums on both sides are counted for
// every z; the profile reports how many tuples that affects.

#include <algorithm>
#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sumprod/core.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/interval.hpp"
#include "sumprod/setgen.hpp"

namespace sumprod {

namespace detail {

using SumIndex = std::unordered_map<Scalar, Count, ScalarHash>;

inline SumIndex sum_index(const CountHistogram& h) {
    SumIndex idx;
    idx.reserve(h.size() * 2);
    for (const auto& [s, c] : h) idx.emplace(s, c);
    return idx;
}

/// r(z) = sum_s h(s) h(z s) over the sum histogram h = r_{A1+A2}.
inline Count r_from_sums(const Scalar& z, const CountHistogram& h, const SumIndex& idx) {
    Count n = 0;
    Scalar t;
    for (const auto& [s, c] : h) {
        t = z * s;
        auto it = idx.find(t);
        if (it != idx.end()) n += c * it->second;
    }
    return n;
}

} // namespace detail

inline Count r_of_z(const Scalar& z, const RatSet& a1, const RatSet& a2) {
    const CountHistogram h = rep_histogram(a1, a2, SetOp::sum);
    return detail::r_from_sums(z, h, detail::sum_index(h));
}

struct RatioProfile {
    RatSet Z;
    std::vector<std::pair<Scalar, Count>> r; ///< r(z) for every z in Z, in Z order
    Integer R;                               ///< sum r(z)^2
    Integer sum_r;                           ///< sum r(z)
    Count zero_sum_pairs = 0;                ///< #{(a1, a2) : a1 + a2 = 0}
    Integer zero_sum_tuples;                 ///< tuples of r(z) with both sums zero, summed over Z
    RatioInterval sum_ratio;                 ///< sum_r / (|Z|^{1/2} n1^{5/3} n2^{4/3} + |Z|^{2/3} n1^{4/3} n2^{4/3} + |Z| n1^2)
    RatioInterval energy_ratio;            ///< R / (n1^{10/3} n2^{8/3})
};

/// Enclosure of |Z|^{1/2} n1^{5/3} n2^{4/3} + |Z|^{2/3} n1^{4/3} n2^{4/3} + |Z| n1^2.
inline Interval ratio_sum_bound(std::size_t z, std::size_t n1, std::size_t n2, mpfr_prec_t prec = kIntervalPrecision) {
    auto I = [](std::size_t v) { return Integer(static_cast<unsigned long>(v)); };
    return monomial({{I(z), 1, 2}, {I(n1), 5, 3}, {I(n2), 4, 3}}, prec) +
           monomial({{I(z), 2, 3}, {I(n1), 4, 3}, {I(n2), 4, 3}}, prec) + monomial({{I(z), 1, 1}, {I(n1), 2, 1}}, prec);
}

inline Interval ratio_energy_bound(std::size_t n1, std::size_t n2, mpfr_prec_t prec = kIntervalPrecision) {
    auto I = [](std::size_t v) { return Integer(static_cast<unsigned long>(v)); };
    return monomial({{I(n1), 10, 3}, {I(n2), 8, 3}}, prec);
}

inline RatioProfile ratio_profile(const RatSet& z, const RatSet& a1, const RatSet& a2) {
    RatioProfile p;
    p.Z = z;
    const CountHistogram h = rep_histogram(a1, a2, SetOp::sum);
    const auto idx = detail::sum_index(h);
    p.R = 0;
    p.sum_r = 0;
    for (const Scalar& v : z) {
        const Count c = detail::r_from_sums(v, h, idx);
        p.r.emplace_back(v, c);
        const Integer ci(static_cast<unsigned long>(c));
        p.R += ci * ci;
        p.sum_r += ci;
    }
    p.zero_sum_pairs = h.count(Scalar(0));
    p.zero_sum_tuples = Integer(static_cast<unsigned long>(p.zero_sum_pairs)) * static_cast<unsigned long>(p.zero_sum_pairs) *
                        static_cast<unsigned long>(z.size());
    const std::size_t n1 = std::min(a1.size(), a2.size());
    const std::size_t n2 = std::max(a1.size(), a2.size());
    p.sum_ratio = ratio_interval(p.sum_r, ratio_sum_bound(z.size(), n1, n2));
    p.energy_ratio = ratio_interval(p.R, ratio_energy_bound(n1, n2));
    return p;
}

/// Profile over the full ratio set Z = S/S of S = A1 + A2, built from pairs of
/// sums: r(s'/s) collects h(s) h(s') for every ordered pair of nonzero sums.
/// Requires 0 not in S.
inline RatioProfile ratio_profile_full(const RatSet& a1, const RatSet& a2) {
    const CountHistogram h = rep_histogram(a1, a2, SetOp::sum);
    if (h.count(Scalar(0)) != 0) throw DivisionByZero("ratio set of A1 + A2 with 0 in A1 + A2");
    std::unordered_map<Scalar, Count, ScalarHash> r;
    r.reserve(h.size() * h.size());
    for (const auto& [s, c] : h) {
        for (const auto& [sp, cp] : h) r[sp / s] += c * cp;
    }
    std::vector<std::pair<Scalar, Count>> rows(r.begin(), r.end());
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

    RatioProfile p;
    std::vector<Scalar> zs;
    zs.reserve(rows.size());
    p.R = 0;
    p.sum_r = 0;
    for (const auto& [z, c] : rows) {
        zs.push_back(z);
        const Integer ci(static_cast<unsigned long>(c));
        p.R += ci * ci;
        p.sum_r += ci;
    }
    p.Z = RatSet(std::move(zs));
    p.r = std::move(rows);
    p.zero_sum_pairs = 0;
    p.zero_sum_tuples = 0;
    const std::size_t n1 = std::min(a1.size(), a2.size());
    const std::size_t n2 = std::max(a1.size(), a2.size());
    p.sum_ratio = ratio_interval(p.sum_r, ratio_sum_bound(p.Z.size(), n1, n2));
    p.energy_ratio = ratio_interval(p.R, ratio_energy_bound(n1, n2));
    return p;
}

/// Z_t = {z in Z : r(z) >= t}.
inline RatSet level_set(const RatSet& z, const RatSet& a1, const RatSet& a2, Count t) {
    if (t < 1) throw InvalidArgument("level_set needs t >= 1");
    const CountHistogram h = rep_histogram(a1, a2, SetOp::sum);
    const auto idx = detail::sum_index(h);
    std::vector<Scalar> out;
    for (const Scalar& v : z) {
        if (detail::r_from_sums(v, h, idx) >= t) out.push_back(v);
    }
    return RatSet(std::move(out));
}

/// sum_{z in Z} r(z) through the point-line correspondence
/// a1' - z a1 = z a2 - a2' = y: for each z, pair the line families
/// {a1' - z a1} and {z a2 - a2'} by their common value y.
inline Integer sum_r_point_line(const RatSet& z, const RatSet& a1, const RatSet& a2) {
    Integer total(0);
    for (const Scalar& v : z) {
        std::unordered_map<Scalar, Count, ScalarHash> r1;
        for (const Scalar& x : a1) {
            for (const Scalar& xp : a1) ++r1[xp - v * x];
        }
        Count n = 0;
        for (const Scalar& x : a2) {
            for (const Scalar& xp : a2) {
                auto it = r1.find(v * x - xp);
                if (it != r1.end()) n += it->second;
            }
        }
        total += Integer(static_cast<unsigned long>(n));
    }
    return total;
}

} // namespace sumprod
