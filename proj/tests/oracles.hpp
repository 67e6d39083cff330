#pragma once

// Brute-force reference implementations. They share nothing with the library
// beyond the GMP types: plain vectors, nested loops, std::map tallies.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Z = mpz_class;
using Vec = std::vector<Q>;

inline Vec unique_sorted(Vec v) {
    std::set<Q> s(v.begin(), v.end());
    return Vec(s.begin(), s.end());
}

inline Q q(long p, long d = 1) {
    Q v(p, d);
    v.canonicalize();
    return v;
}

inline Vec vec(std::initializer_list<long> xs) {
    Vec v;
    for (long x : xs) v.push_back(Q(x));
    return unique_sorted(v);
}

// (b - a) x (c - a) == 0 for plane points a, b, c.
inline bool collinear(const Q& ax, const Q& ay, const Q& bx, const Q& by, const Q& cx, const Q& cy) {
    return (bx - ax) * (cy - ay) == (by - ay) * (cx - ax);
}

/// All 6-tuples (a, a', b, b', c, c') with (a,a'), (b,b'), (c,c') collinear.
inline std::uint64_t T(const Vec& A, const Vec& B, const Vec& C) {
    std::uint64_t n = 0;
    for (const Q& a : A)
        for (const Q& a2 : A)
            for (const Q& b : B)
                for (const Q& b2 : B)
                    for (const Q& c : C)
                        for (const Q& c2 : C) n += collinear(a, a2, b, b2, c, c2);
    return n;
}

/// Same, restricted to pairwise distinct points.
inline std::uint64_t T_o(const Vec& A, const Vec& B, const Vec& C) {
    std::uint64_t n = 0;
    for (const Q& a : A)
        for (const Q& a2 : A)
            for (const Q& b : B)
                for (const Q& b2 : B) {
                    if (a == b && a2 == b2) continue;
                    for (const Q& c : C)
                        for (const Q& c2 : C) {
                            if ((a == c && a2 == c2) || (b == c && b2 == c2)) continue;
                            n += collinear(a, a2, b, b2, c, c2);
                        }
                }
    return n;
}

enum class Op { sub, div };

/// sum_x #{(a, b) : a op b = x}^k, skipping b = 0 for division.
inline Z energy(const Vec& A, const Vec& B, int k, Op op) {
    std::map<Q, std::uint64_t> r;
    for (const Q& a : A)
        for (const Q& b : B) {
            if (op == Op::div && b == 0) continue;
            ++r[op == Op::sub ? Q(a - b) : Q(a / b)];
        }
    Z s = 0;
    for (const auto& [x, c] : r) {
        Z t = 1;
        for (int i = 0; i < k; ++i) t *= static_cast<unsigned long>(c);
        s += t;
    }
    return s;
}

/// #{(x1, x2, y1, y2) : x1 y2 = x2 y1}.
inline Z product_form(const Vec& X, const Vec& Y) {
    Z n = 0;
    for (const Q& x1 : X)
        for (const Q& x2 : X)
            for (const Q& y1 : Y)
                for (const Q& y2 : Y) n += (x1 * y2 == x2 * y1);
    return n;
}

inline Vec shift(const Vec& A, const Q& s) {
    Vec out;
    for (const Q& a : A) out.push_back(a + s);
    return unique_sorted(out);
}

/// #{(a1, a2, a1', a2') : a1' + a2' = z (a1 + a2)}.
inline std::uint64_t r(const Q& z, const Vec& A1, const Vec& A2) {
    std::uint64_t n = 0;
    for (const Q& a : A1)
        for (const Q& b : A2)
            for (const Q& a2 : A1)
                for (const Q& b2 : A2) n += (a2 + b2 == z * (a + b));
    return n;
}

struct Pt {
    Q x, y;
};

struct Ln {
    Z a, b, c; // a x + b y = c
};

inline std::uint64_t incidences(const std::vector<Pt>& P, const std::vector<Ln>& L) {
    std::uint64_t n = 0;
    for (const auto& p : P)
        for (const auto& l : L) n += (Q(l.a) * p.x + Q(l.b) * p.y == Q(l.c));
    return n;
}

/// I <= 4 (PL)^{2/3} + 4P + L, decided with integers: (I - 4P - L)^3 <= 64 (PL)^2.
inline bool st_holds(std::uint64_t I, std::uint64_t P, std::uint64_t L) {
    const Z lhs = Z(static_cast<unsigned long>(I)) - 4 * Z(static_cast<unsigned long>(P)) - Z(static_cast<unsigned long>(L));
    if (lhs <= 0) return true;
    const Z pl = Z(static_cast<unsigned long>(P)) * Z(static_cast<unsigned long>(L));
    return lhs * lhs * lhs <= 64 * pl * pl;
}

/// Number of maximal collinear subsets of size >= k of distinct points,
/// found as index sets.
inline std::size_t rich_lines(const std::vector<Pt>& P, std::size_t k) {
    std::set<std::vector<std::size_t>> found;
    for (std::size_t i = 0; i < P.size(); ++i)
        for (std::size_t j = i + 1; j < P.size(); ++j) {
            std::vector<std::size_t> members;
            for (std::size_t m = 0; m < P.size(); ++m) {
                if (collinear(P[i].x, P[i].y, P[j].x, P[j].y, P[m].x, P[m].y)) members.push_back(m);
            }
            if (members.size() >= k) found.insert(members);
        }
    return found.size();
}

/// #{(a, b, p, p') : a, b in A, p, p' in C x D, (a, b), p, p' collinear}.
inline std::uint64_t mixed_grid(const Vec& A, const Vec& C, const Vec& D) {
    std::uint64_t n = 0;
    for (const Q& a : A)
        for (const Q& b : A)
            for (const Q& c : C)
                for (const Q& d : D)
                    for (const Q& c2 : C)
                        for (const Q& d2 : D) n += collinear(a, b, c, d, c2, d2);
    return n;
}

} // namespace oracle
