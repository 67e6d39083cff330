#pragma once

// Exact scalars, plane points, canonical lines and the collinearity predicate.
//
// Every quantity in the library is computed over Q. Scalars are GMP rationals
// kept in canonical form (gcd(num, den) = 1, den > 0); lines are stored as a
// reduced integer triple (a, b, c) describing a*x + b*y = c.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <regex>
#include <string>
#include <string_view>

#include "sumprod/detail/intops.hpp"
#include "sumprod/errors.hpp"

namespace sumprod {

using Integer = mpz_class;
using Scalar = mpq_class;
using Count = std::uint64_t;

inline Scalar make_scalar(const Integer& num, const Integer& den) {
    if (den == 0) {
        throw DivisionByZero("rational with zero denominator");
    }
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

/// Renders "p" for integers and "p/q" otherwise.
inline std::string to_string(const Scalar& v) {
    if (v.get_den() == 1) {
        return v.get_num().get_str();
    }
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

inline std::string to_string(const Integer& v) { return v.get_str(); }

/// Parses an integer literal or "p/q" with q > 0. Surrounding blanks are ignored.
inline Scalar parse_scalar(std::string_view text) {
    static const std::regex pattern(R"(^\s*([+-]?[0-9]+)(?:\s*/\s*([0-9]+))?\s*$)");
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_match(text.begin(), text.end(), m, pattern)) {
        throw ParseError("not a rational literal: '" + std::string(text) + "'");
    }
    std::string num_text = m[1].str();
    if (num_text.front() == '+') num_text.erase(0, 1); // GMP rejects a leading '+'
    Integer num(num_text);
    Integer den(1);
    if (m[2].matched) {
        den = Integer(m[2].str());
        if (den == 0) {
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        }
    }
    return make_scalar(num, den);
}

struct ScalarHash {
    std::size_t operator()(const Scalar& v) const { return detail::hash_value(v); }
};

struct PlanePoint {
    Scalar x;
    Scalar y;

    friend bool operator==(const PlanePoint& p, const PlanePoint& q) { return p.x == q.x && p.y == q.y; }
    friend bool operator<(const PlanePoint& p, const PlanePoint& q) {
        return p.x < q.x || (p.x == q.x && p.y < q.y);
    }
};

struct PointHash {
    std::size_t operator()(const PlanePoint& p) const {
        return detail::hash_combine(detail::hash_value(p.x), detail::hash_value(p.y));
    }
};

/// The line a*x + b*y = c in canonical form: (a, b) != (0, 0),
/// gcd(|a|, |b|, |c|) = 1 and the first nonzero of (a, b) is positive.
struct LineKey {
    Integer a;
    Integer b;
    Integer c;

    friend bool operator==(const LineKey& l, const LineKey& m) { return l.a == m.a && l.b == m.b && l.c == m.c; }
    friend bool operator<(const LineKey& l, const LineKey& m) {
        if (l.a != m.a) return l.a < m.a;
        if (l.b != m.b) return l.b < m.b;
        return l.c < m.c;
    }
};

struct LineKeyHash {
    std::size_t operator()(const LineKey& l) const {
        using detail::hash_combine;
        using detail::hash_value;
        return hash_combine(hash_combine(hash_value(l.a), hash_value(l.b)), hash_value(l.c));
    }
};

namespace detail {

/// Divides out the content and fixes the sign of an integer line triple.
template <class Int>
void normalize_line(Int& a, Int& b, Int& c) {
    Int g = gcd_abs(gcd_abs(a, b), c);
    if (g != 0 && g != 1) {
        a /= g;
        b /= g;
        c /= g;
    }
    if (sign_of(a) < 0 || (sign_of(a) == 0 && sign_of(b) < 0)) {
        a = -a;
        b = -b;
        c = -c;
    }
}

} // namespace detail

inline bool is_canonical(const LineKey& l) {
    if (l.a == 0 && l.b == 0) return false;
    Integer g = detail::gcd_abs(detail::gcd_abs(l.a, l.b), l.c);
    if (g != 1) return false;
    return l.a > 0 || (l.a == 0 && l.b > 0);
}

inline LineKey make_line(Integer a, Integer b, Integer c) {
    if (a == 0 && b == 0) {
        throw InvalidArgument("line with a = b = 0");
    }
    detail::normalize_line(a, b, c);
    return LineKey{std::move(a), std::move(b), std::move(c)};
}

/// Canonical key of the line through two distinct points.
inline LineKey line_through(const PlanePoint& p, const PlanePoint& q) {
    if (p == q) {
        throw DegeneratePair("line_through: coincident points");
    }
    const Scalar a = q.y - p.y;
    const Scalar b = p.x - q.x;
    const Scalar c = a * p.x + b * p.y;
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    const Scalar sa = a * l;
    const Scalar sb = b * l;
    const Scalar sc = c * l;
    return make_line(sa.get_num(), sb.get_num(), sc.get_num());
}

inline bool on_line(const LineKey& l, const PlanePoint& p) { return l.a * p.x + l.b * p.y == l.c; }

/// (q.x - p.x)(r.y - p.y) == (r.x - p.x)(q.y - p.y); coincident points count as collinear.
inline bool collinear3(const PlanePoint& p, const PlanePoint& q, const PlanePoint& r) {
    return (q.x - p.x) * (r.y - p.y) == (r.x - p.x) * (q.y - p.y);
}

/// Intersection point of two lines, or nullopt for parallel or coincident lines.
inline std::optional<PlanePoint> intersect(const LineKey& l, const LineKey& m) {
    const Integer det = l.a * m.b - m.a * l.b;
    if (det == 0) {
        return std::nullopt;
    }
    return PlanePoint{make_scalar(l.c * m.b - m.c * l.b, det), make_scalar(l.a * m.c - m.a * l.c, det)};
}

inline std::string to_string(const LineKey& l) {
    return "(" + l.a.get_str() + "," + l.b.get_str() + "," + l.c.get_str() + ")";
}

} // namespace sumprod
