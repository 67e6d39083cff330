#pragma once

// Representation functions r_{A o B}, energies E_k^+ / E_k^x and the certified
// lower estimate for d_k.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sumprod/core.hpp"
#include "sumprod/detail/scaled.hpp"
#include "sumprod/interval.hpp"
#include "sumprod/setgen.hpp"

namespace sumprod {

inline constexpr int kMaxMoment = 8;

enum class Flavor { additive, multiplicative };

inline const char* to_string(Flavor f) { return f == Flavor::additive ? "additive" : "multiplicative"; }

/// Value -> positive multiplicity, sorted by value.
class CountHistogram {
public:
    using Entry = std::pair<Scalar, Count>;

    CountHistogram() = default;

    /// Entries must be sorted by value, unique, with positive counts.
    explicit CountHistogram(std::vector<Entry> entries) : entries_(std::move(entries)) {}

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }
    const std::vector<Entry>& entries() const { return entries_; }

    Count count(const Scalar& x) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                                   [](const Entry& e, const Scalar& v) { return e.first < v; });
        return (it != entries_.end() && it->first == x) ? it->second : 0;
    }

    Count total() const {
        Count s = 0;
        for (const auto& e : entries_) s += e.second;
        return s;
    }

    Count max_count() const {
        Count m = 0;
        for (const auto& e : entries_) m = std::max(m, e.second);
        return m;
    }

    /// Sum over values of count^k.
    Integer moment(unsigned k) const {
        Integer s(0), t;
        for (const auto& e : entries_) {
            mpz_ui_pow_ui(t.get_mpz_t(), e.second, k);
            s += t;
        }
        return s;
    }

    RatSet support() const {
        std::vector<Scalar> v;
        v.reserve(entries_.size());
        for (const auto& e : entries_) v.push_back(e.first);
        return RatSet(std::move(v));
    }

    friend bool operator==(const CountHistogram& a, const CountHistogram& b) { return a.entries_ == b.entries_; }

private:
    std::vector<Entry> entries_;
};

namespace detail {

template <class Key>
std::vector<std::pair<Key, Count>> run_lengths(std::vector<Key>& keys) {
    std::sort(keys.begin(), keys.end());
    std::vector<std::pair<Key, Count>> out;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        out.emplace_back(keys[i], static_cast<Count>(j - i));
        i = j;
    }
    return out;
}

template <class Int>
CountHistogram additive_histogram(const IntImage<Int>& img, SetOp op) {
    const auto& a = img.sets[0];
    const auto& b = img.sets[1];
    std::vector<Int> keys;
    keys.reserve(a.size() * b.size());
    for (const Int& x : a) {
        for (const Int& y : b) {
            if (op == SetOp::diff) keys.push_back(x - y);
            else if (op == SetOp::sum) keys.push_back(x + y);
            else keys.push_back(x * y);
        }
    }
    const Integer denom = op == SetOp::prod ? Integer(img.scale * img.scale) : img.scale;
    std::vector<CountHistogram::Entry> entries;
    for (auto& [k, c] : run_lengths(keys)) entries.emplace_back(make_scalar(to_integer(k), denom), c);
    return CountHistogram(std::move(entries));
}

template <class Int>
CountHistogram ratio_histogram(const IntImage<Int>& img) {
    const auto& a = img.sets[0];
    const auto& b = img.sets[1];
    std::vector<std::pair<Int, Int>> keys;
    keys.reserve(a.size() * b.size());
    for (const Int& x : a) {
        for (const Int& y : b) {
            Int p = x, q = y;
            if (sign_of(q) < 0) {
                p = -p;
                q = -q;
            }
            const Int g = gcd_abs(p, q);
            if (g != 1) {
                p /= g;
                q /= g;
            }
            keys.emplace_back(std::move(p), std::move(q));
        }
    }
    auto runs = run_lengths(keys);
    std::sort(runs.begin(), runs.end(), [](const auto& l, const auto& r) {
        return l.first.first * r.first.second < r.first.first * l.first.second;
    });
    std::vector<CountHistogram::Entry> entries;
    entries.reserve(runs.size());
    for (auto& [k, c] : runs) entries.emplace_back(make_scalar(to_integer(k.first), to_integer(k.second)), c);
    return CountHistogram(std::move(entries));
}

inline void check_moment(int k) {
    if (k < 2 || k > kMaxMoment) {
        throw InvalidArgument("energy moment k must lie in [2, " + std::to_string(kMaxMoment) + "]");
    }
}

} // namespace detail

/// r_{A o B}(x) = #{(a, b) in A x B : a o b = x}, for every representable x.
inline CountHistogram rep_histogram(const RatSet& a, const RatSet& b, SetOp op) {
    if (op == SetOp::ratio && b.has_zero()) {
        throw DivisionByZero("r_{A/B} with 0 in B");
    }
    return detail::with_integer_image({&a, &b}, [op](const auto& img) {
        return op == SetOp::ratio ? detail::ratio_histogram(img) : detail::additive_histogram(img, op);
    });
}

/// E_k^+(A, B) = sum r_{A-B}^k or E_k^x(A, B) = sum r_{A/B}^k.
inline Integer energy(const RatSet& a, const RatSet& b, int k, Flavor flavor) {
    detail::check_moment(k);
    const SetOp op = flavor == Flavor::additive ? SetOp::diff : SetOp::ratio;
    return rep_histogram(a, b, op).moment(static_cast<unsigned>(k));
}

inline Integer energy(const RatSet& a, int k, Flavor flavor) { return energy(a, a, k, flavor); }

inline Integer additive_energy(const RatSet& a, int k = 2) { return energy(a, a, k, Flavor::additive); }

/// E_k^x(A); the empty set has energy 0.
inline Integer multiplicative_energy(const RatSet& a, int k = 2) {
    if (a.empty()) return Integer(0);
    return energy(a, a, k, Flavor::multiplicative);
}

/// #{(x1, x2, y1, y2) in X^2 x Y^2 : x1 y2 = x2 y1}; zero is allowed.
///
/// Pairs (x, y) are vectors in the plane and the condition says two of them
/// are parallel. The zero vector is parallel to everything; nonzero vectors
/// group by direction x/y (or "vertical" when y = 0).
inline Integer energy_mul_product_form(const RatSet& xs, const RatSet& ys) {
    const bool zero_vector = xs.has_zero() && ys.has_zero();
    const Integer total = Integer(static_cast<unsigned long>(xs.size())) * static_cast<unsigned long>(ys.size());
    std::unordered_map<Scalar, Count, ScalarHash> direction;
    Count horizontal = 0; // y = 0, x != 0
    for (const Scalar& x : xs) {
        for (const Scalar& y : ys) {
            if (y == 0) {
                if (x != 0) ++horizontal;
            } else {
                ++direction[x / y];
            }
        }
    }
    Integer sum(0);
    for (const auto& [dir, c] : direction) sum += Integer(static_cast<unsigned long>(c)) * static_cast<unsigned long>(c);
    sum += Integer(static_cast<unsigned long>(horizontal)) * static_cast<unsigned long>(horizontal);
    if (zero_vector) {
        // The zero vector pairs with every vector, in both orders, and with itself once.
        sum += 2 * (total - 1) + 1;
    }
    return sum;
}

struct DLowerEstimate {
    int k = 2;
    Flavor flavor = Flavor::additive;
    Scalar value;          ///< E_k(A, witness) / (|A| |witness|^(k-1)), exact
    RatSet witness;
    std::size_t witness_index = 0;
};

/// Lower bound for d_k(A) as the best ratio over the supplied candidates B.
/// The true d_k is a supremum over all finite B and is never claimed.
inline DLowerEstimate d_lower(const RatSet& a, int k, Flavor flavor, std::span<const RatSet> candidates) {
    detail::check_moment(k);
    if (candidates.empty()) throw EmptyCandidateList("d_lower: no candidate sets");
    if (a.empty()) throw InvalidArgument("d_lower: empty A");
    std::optional<DLowerEstimate> best;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const RatSet& b = candidates[i];
        if (b.empty()) throw InvalidArgument("d_lower: empty candidate set");
        const Integer e = energy(a, b, k, flavor);
        Integer denom;
        mpz_ui_pow_ui(denom.get_mpz_t(), b.size(), static_cast<unsigned long>(k - 1));
        denom *= static_cast<unsigned long>(a.size());
        Scalar value = make_scalar(e, denom);
        if (!best || value > best->value) best = DLowerEstimate{k, flavor, std::move(value), b, i};
    }
    return *best;
}

// ---------------------------------------------------------------------------
// Exact inequalities between energies.

/// E^+(A)^2 <= |A|^2 E_3^+(A), the squared form of E^+ <= |A| E_3^{1/2}.
inline bool cauchy_schwarz_ladder_holds(const RatSet& a) {
    if (a.empty()) return true;
    const Integer e2 = additive_energy(a, 2);
    const Integer e3 = additive_energy(a, 3);
    const Integer n(static_cast<unsigned long>(a.size()));
    return e2 * e2 <= n * n * e3;
}

/// E^x(Y) |Y o Y| >= |Y|^4 for o in {prod, ratio}.
inline bool product_set_energy_bound_holds(const RatSet& y, SetOp op) {
    if (y.empty()) return true;
    if (y.has_zero()) throw DivisionByZero("multiplicative energy bound needs 0 not in Y");
    const Integer e = multiplicative_energy(y, 2);
    const Integer s(static_cast<unsigned long>(set_op(y, y, op).size()));
    Integer n4;
    mpz_ui_pow_ui(n4.get_mpz_t(), y.size(), 4);
    return e * s >= n4;
}

struct L4Check {
    Integer union_energy;
    std::vector<Integer> part_energies;
    Verdict verdict = Verdict::inconclusive;
    double bound_lo = 0; ///< enclosure of (sum_i E^x(A_i)^{1/4})^4
    double bound_hi = 0;
};

/// E^x(union)^{1/4} <= sum_i E^x(A_i)^{1/4} for pairwise disjoint parts,
/// decided as E^x(union) <= (sum_i E^x(A_i)^{1/4})^4 with outward intervals.
inline L4Check l4_union_check(std::span<const RatSet> parts) {
    L4Check out;
    RatSet all;
    std::size_t total = 0;
    for (const RatSet& p : parts) {
        if (p.has_zero()) throw DivisionByZero("l4 check needs 0 not in the parts");
        all = set_union(all, p);
        total += p.size();
        out.part_energies.push_back(multiplicative_energy(p, 2));
    }
    if (all.size() != total) throw InvalidArgument("l4 check: parts are not pairwise disjoint");
    out.union_energy = multiplicative_energy(all, 2);

    // Perfect fourth powers make the right side an exact integer.
    Integer exact_sum(0);
    bool exact = true;
    for (const Integer& e : out.part_energies) {
        Integer r;
        if (mpz_root(r.get_mpz_t(), e.get_mpz_t(), 4) == 0) {
            exact = false;
            break;
        }
        exact_sum += r;
    }
    auto bound = [&](mpfr_prec_t prec) {
        Interval s = Interval::of(0L, prec);
        for (const Integer& e : out.part_energies) s = s + pow(Interval::of(e, prec), 1, 4);
        return pow(s, 4UL);
    };
    if (exact) {
        Integer b;
        mpz_pow_ui(b.get_mpz_t(), exact_sum.get_mpz_t(), 4);
        out.verdict = out.union_energy <= b ? Verdict::yes : Verdict::no;
    } else {
        out.verdict = integer_le_real(out.union_energy, bound);
    }
    const Interval b = bound(kIntervalPrecision);
    out.bound_lo = b.lo_double();
    out.bound_hi = b.hi_double();
    return out;
}

} // namespace sumprod
