#pragma once

// Collinear triple counts.
//
//   T(A, B, C)     = #{(a1, a2, b1, b2, c1, c2) : (b1 - a1)(c2 - a2) = (c1 - a1)(b2 - a2)}
//   T^o(A1, A2, A3) = #{(u1, u2, u3) ordered, u_i in A_i x A_i, pairwise distinct, collinear}
//
// T^o counts ORDERED triples: the 3x3 grid {0,1,2}^2 has 8 lines with three
// points each and T^o = 8 * 3! = 48.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sumprod/core.hpp"
#include "sumprod/detail/gridlines.hpp"
#include "sumprod/detail/scaled.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/interval.hpp"
#include "sumprod/setgen.hpp"

namespace sumprod {

/// Default work limits (tuple checks for brute force, sum |A_i|^4 for line hashing).
inline constexpr Count kDefaultBruteBudget = 1'000'000'000ULL;
inline constexpr Count kDefaultLinehashBudget = 60'000'000ULL;

enum class TripleMode { brute, linehash };

inline const char* to_string(TripleMode m) { return m == TripleMode::brute ? "brute" : "linehash"; }

namespace detail {

inline Count sq(std::size_t n) { return Count(n) * n; }

inline void require_budget(long double work, Count budget, const std::string& what) {
    if (work > static_cast<long double>(budget)) {
        throw BudgetExceeded(what + ": " + std::to_string(static_cast<unsigned long long>(work)) +
                             " work units exceed budget " + std::to_string(budget));
    }
}

struct BruteTripleSplit {
    Count total = 0;            ///< all solutions, T
    Count distinct = 0;         ///< u1, u2, u3 pairwise distinct
    Count shared_abscissa = 0;  ///< a1 = b1, a1 = c1 or b1 = c1
};

template <class Int>
BruteTripleSplit brute_triples(const std::vector<Int>& a, const std::vector<Int>& b, const std::vector<Int>& c) {
    BruteTripleSplit s;
    Int dx, dy;
    for (const Int& a1 : a) {
        for (const Int& a2 : a) {
            for (const Int& b1 : b) {
                for (const Int& b2 : b) {
                    dx = b1 - a1;
                    dy = b2 - a2;
                    const bool u12 = a1 == b1 && a2 == b2;
                    for (const Int& c1 : c) {
                        for (const Int& c2 : c) {
                            if (dx * (c2 - a2) != (c1 - a1) * dy) continue;
                            ++s.total;
                            const bool u13 = a1 == c1 && a2 == c2;
                            const bool u23 = b1 == c1 && b2 == c2;
                            if (!u12 && !u13 && !u23) ++s.distinct;
                            if (a1 == b1 || a1 == c1 || b1 == c1) ++s.shared_abscissa;
                        }
                    }
                }
            }
        }
    }
    return s;
}

inline BruteTripleSplit brute_split(const RatSet& a, const RatSet& b, const RatSet& c, Count budget) {
    require_budget(static_cast<long double>(sq(a.size())) * sq(b.size()) * sq(c.size()), budget, "T brute force");
    return with_integer_image({&a, &b, &c}, [](const auto& img) {
        return brute_triples(img.sets[0], img.sets[1], img.sets[2]);
    });
}

} // namespace detail

/// T(A, B, C) by enumerating all 6-tuples.
inline Count t_count_brute(const RatSet& a, const RatSet& b, const RatSet& c, Count budget = kDefaultBruteBudget) {
    return detail::brute_split(a, b, c, budget).total;
}

/// T^o(A1, A2, A3), ordered pairwise-distinct collinear triples.
inline Count t_o_count(const RatSet& a1, const RatSet& a2, const RatSet& a3, TripleMode mode, Count budget = 0) {
    if (mode == TripleMode::brute) {
        return detail::brute_split(a1, a2, a3, budget ? budget : kDefaultBruteBudget).distinct;
    }
    const long double work = static_cast<long double>(detail::sq(detail::sq(a1.size()))) +
                             static_cast<long double>(detail::sq(detail::sq(a2.size()))) +
                             static_cast<long double>(detail::sq(detail::sq(a3.size())));
    detail::require_budget(work, budget ? budget : kDefaultLinehashBudget, "T^o line hashing");
    return detail::with_integer_image({&a1, &a2, &a3}, [](const auto& img) {
        using Int = typename std::decay_t<decltype(img.sets[0])>::value_type;
        const auto family = detail::spanned_grid_lines<Int>({&img.sets[0], &img.sets[1], &img.sets[2]});
        Count n = 0;
        for (const auto& [l, c] : family.lines) n += c.distinct_triples();
        return n;
    });
}

struct TripleCountReport {
    Count T = 0;
    Count T_o = 0;
    Count degenerate_terms = 0;  ///< solutions of the T equation with two equal points
    Count shared_abscissa = 0;   ///< solutions with a1 = b1, a1 = c1 or b1 = c1
    RatioInterval ratio_vs_bound; ///< T^o / (n1 n2^{5/3} n3^{4/3}), sizes sorted ascending
    RatioInterval T_ratio_vs_bound; ///< T / (n1 n2^{5/3} n3^{4/3} + n1^2 n3^2)
};

/// Enclosure of n1 n2^{5/3} n3^{4/3} for the sizes sorted ascending.
inline Interval triple_bound(std::size_t s1, std::size_t s2, std::size_t s3, mpfr_prec_t prec = kIntervalPrecision) {
    std::array<std::size_t, 3> n{s1, s2, s3};
    std::sort(n.begin(), n.end());
    auto I = [](std::size_t v) { return Integer(static_cast<unsigned long>(v)); };
    return monomial({{I(n[0]), 1, 1}, {I(n[1]), 5, 3}, {I(n[2]), 4, 3}}, prec);
}

inline TripleCountReport t_report(const RatSet& a1, const RatSet& a2, const RatSet& a3, Count budget = kDefaultBruteBudget) {
    TripleCountReport r;
    const auto split = detail::brute_split(a1, a2, a3, budget);
    r.T = split.total;
    r.T_o = t_o_count(a1, a2, a3, TripleMode::linehash);
    r.degenerate_terms = split.total - split.distinct;
    r.shared_abscissa = split.shared_abscissa;
    const Interval bound = triple_bound(a1.size(), a2.size(), a3.size());
    r.ratio_vs_bound = ratio_interval(Integer(static_cast<unsigned long>(r.T_o)), bound);
    std::array<std::size_t, 3> n{a1.size(), a2.size(), a3.size()};
    std::sort(n.begin(), n.end());
    const Interval t_bound = bound + Interval::of(Integer(static_cast<unsigned long>(n[0] * n[0] * n[2] * n[2])));
    r.T_ratio_vs_bound = ratio_interval(Integer(static_cast<unsigned long>(r.T)), t_bound);
    return r;
}

/// Collinear triples (u, p, p') with u in A x A and p, p' in C x D, by brute force.
inline Count collinear_mixed_grid_count(const RatSet& a, const RatSet& c, const RatSet& d, Count budget = kDefaultBruteBudget) {
    detail::require_budget(static_cast<long double>(detail::sq(a.size())) * detail::sq(c.size()) * detail::sq(d.size()), budget,
                           "mixed-grid collinear count");
    return detail::with_integer_image({&a, &c, &d}, [](const auto& img) {
        Count n = 0;
        const auto& as = img.sets[0];
        const auto& cs = img.sets[1];
        const auto& ds = img.sets[2];
        for (const auto& a1 : as) {
            for (const auto& a2 : as) {
                for (const auto& c1 : cs) {
                    for (const auto& d1 : ds) {
                        for (const auto& c2 : cs) {
                            for (const auto& d2 : ds) {
                                n += ((c1 - a1) * (d2 - a2) == (c2 - a1) * (d1 - a2));
                            }
                        }
                    }
                }
            }
        }
        return n;
    });
}

struct IdentityReport {
    Integer lhs;          ///< sum over a1, a2 in A of E^x_prod(C - a1, D - a2)
    Count rhs = 0;        ///< T(A, C, D)
    bool ok = false;      ///< lhs == T(A, C, D)
    Count grid_rhs = 0;   ///< collinear triples with u in A x A and p, p' in C x D
    bool grid_ok = false; ///< lhs == grid_rhs
};

/// Compares the shifted product-form energy sum with T(A, C, D).
///
/// The sum counts collinear triples (u, p, p') with u in A x A and p, p' in
/// the grid C x D, which equals T(A, C, D) when C = D but differs in general
/// (A = {1,2}, C = {1,2,4}, D = {1,3}: sum 52, T 42). Both comparisons are
/// reported; `grid_ok` is the identity that always holds.
inline IdentityReport t_identity_check(const RatSet& a, const RatSet& c, const RatSet& d, Count budget = kDefaultBruteBudget) {
    IdentityReport r;
    r.rhs = t_count_brute(a, c, d, budget);
    r.grid_rhs = collinear_mixed_grid_count(a, c, d, budget);
    r.lhs = 0;
    for (const Scalar& a1 : a) {
        const RatSet cs = affine(c, Scalar(1), -a1);
        for (const Scalar& a2 : a) r.lhs += energy_mul_product_form(cs, affine(d, Scalar(1), -a2));
    }
    r.ok = r.lhs == Integer(static_cast<unsigned long>(r.rhs));
    r.grid_ok = r.lhs == Integer(static_cast<unsigned long>(r.grid_rhs));
    return r;
}

} // namespace sumprod
