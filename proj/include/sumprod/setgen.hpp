#pragma once

// Finite rational sets, the generator families used by the test corpus, and
// exact set algebra (A+B, A-B, AB, A/B, affine images).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "sumprod/core.hpp"

namespace sumprod {

/// Sorted, duplicate-free finite set of rationals.
class RatSet {
public:
    using value_type = Scalar;
    using const_iterator = std::vector<Scalar>::const_iterator;

    RatSet() = default;

    explicit RatSet(std::vector<Scalar> elems) : elems_(std::move(elems)) {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }

    RatSet(std::initializer_list<Scalar> elems) : RatSet(std::vector<Scalar>(elems)) {}

    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    const_iterator begin() const { return elems_.begin(); }
    const_iterator end() const { return elems_.end(); }
    const Scalar& operator[](std::size_t i) const { return elems_[i]; }
    const std::vector<Scalar>& elements() const { return elems_; }

    bool contains(const Scalar& v) const { return std::binary_search(elems_.begin(), elems_.end(), v); }
    bool has_zero() const { return contains(Scalar(0)); }

    friend bool operator==(const RatSet& a, const RatSet& b) { return a.elems_ == b.elems_; }

private:
    std::vector<Scalar> elems_;
};

inline RatSet set_union(const RatSet& a, const RatSet& b) {
    std::vector<Scalar> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return RatSet(std::move(out));
}

inline RatSet set_difference(const RatSet& a, const RatSet& b) {
    std::vector<Scalar> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return RatSet(std::move(out));
}

inline RatSet set_intersection(const RatSet& a, const RatSet& b) {
    std::vector<Scalar> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return RatSet(std::move(out));
}

inline bool is_subset(const RatSet& sub, const RatSet& super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

inline bool are_disjoint(const RatSet& a, const RatSet& b) { return set_intersection(a, b).empty(); }

// ---------------------------------------------------------------------------
// Generators

struct ApConfig {
    Scalar start;
    Scalar step;
    std::size_t n = 0;
};

struct GpConfig {
    Scalar start;
    Scalar ratio;
    std::size_t n = 0;
};

/// {(2m-1) 2^j : 1 <= m <= S, 1 <= j <= P}.
struct GridExampleConfig {
    std::size_t S = 0;
    std::size_t P = 0;
};

/// `size` distinct integers drawn uniformly from [1, range].
struct RandomConfig {
    std::size_t size = 0;
    std::uint64_t range = 0;
    std::uint64_t seed = 0;
};

struct LiteralConfig {
    std::vector<Scalar> elements;
};

using GeneratorConfig = std::variant<ApConfig, GpConfig, GridExampleConfig, RandomConfig, LiteralConfig>;

/// Uniform integer in [0, bound) from a 64-bit Mersenne Twister, by rejection
/// of the top partial block. Unlike std::uniform_int_distribution the output
/// is identical across standard library implementations.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound); // largest multiple of bound
    for (;;) {
        const std::uint64_t u = rng();
        if (u < limit) return u % bound;
    }
}

inline RatSet generate(const GeneratorConfig& config) {
    return std::visit(
        [](const auto& c) -> RatSet {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, ApConfig>) {
                if (c.n < 1) throw InvalidConfig("AP length must be >= 1");
                std::vector<Scalar> v;
                v.reserve(c.n);
                for (std::size_t i = 0; i < c.n; ++i) v.push_back(c.start + c.step * static_cast<long>(i));
                return RatSet(std::move(v));
            } else if constexpr (std::is_same_v<C, GpConfig>) {
                if (c.n < 1) throw InvalidConfig("GP length must be >= 1");
                if (c.ratio == 0) throw InvalidConfig("GP ratio must be nonzero");
                std::vector<Scalar> v;
                v.reserve(c.n);
                Scalar term = c.start;
                for (std::size_t i = 0; i < c.n; ++i) {
                    v.push_back(term);
                    term *= c.ratio;
                }
                return RatSet(std::move(v));
            } else if constexpr (std::is_same_v<C, GridExampleConfig>) {
                if (c.S < 1 || c.P < 1) throw InvalidConfig("GridExample needs S >= 1 and P >= 1");
                std::vector<Scalar> v;
                v.reserve(c.S * c.P);
                for (std::size_t m = 1; m <= c.S; ++m) {
                    Integer term(static_cast<unsigned long>(2 * m - 1));
                    for (std::size_t j = 1; j <= c.P; ++j) {
                        term *= 2;
                        v.emplace_back(term);
                    }
                }
                return RatSet(std::move(v));
            } else if constexpr (std::is_same_v<C, RandomConfig>) {
                if (c.size < 1) throw InvalidConfig("Random size must be >= 1");
                if (c.range < c.size) throw InvalidConfig("Random range smaller than requested size");
                std::mt19937_64 rng(c.seed);
                std::set<std::uint64_t> seen;
                std::vector<Scalar> v;
                v.reserve(c.size);
                while (seen.size() < c.size) {
                    const std::uint64_t x = uniform_below(rng, c.range) + 1;
                    if (seen.insert(x).second) v.emplace_back(Integer(static_cast<unsigned long>(x)));
                }
                return RatSet(std::move(v));
            } else {
                if (c.elements.empty()) throw InvalidConfig("Literal set must be nonempty");
                return RatSet(c.elements);
            }
        },
        config);
}

inline std::string describe(const GeneratorConfig& config) {
    return std::visit(
        [](const auto& c) -> std::string {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, ApConfig>) {
                return "AP(start=" + to_string(c.start) + ",step=" + to_string(c.step) + ",n=" + std::to_string(c.n) + ")";
            } else if constexpr (std::is_same_v<C, GpConfig>) {
                return "GP(start=" + to_string(c.start) + ",ratio=" + to_string(c.ratio) + ",n=" + std::to_string(c.n) + ")";
            } else if constexpr (std::is_same_v<C, GridExampleConfig>) {
                return "GridExample(S=" + std::to_string(c.S) + ",P=" + std::to_string(c.P) + ")";
            } else if constexpr (std::is_same_v<C, RandomConfig>) {
                return "Random(size=" + std::to_string(c.size) + ",range=" + std::to_string(c.range) +
                       ",seed=" + std::to_string(c.seed) + ")";
            } else {
                return "Literal(n=" + std::to_string(c.elements.size()) + ")";
            }
        },
        config);
}

// ---------------------------------------------------------------------------
// Set algebra

enum class SetOp { sum, diff, prod, ratio };

inline const char* to_string(SetOp op) {
    switch (op) {
    case SetOp::sum: return "sum";
    case SetOp::diff: return "diff";
    case SetOp::prod: return "prod";
    case SetOp::ratio: return "ratio";
    }
    return "?";
}

inline Scalar apply(SetOp op, const Scalar& a, const Scalar& b) {
    switch (op) {
    case SetOp::sum: return a + b;
    case SetOp::diff: return a - b;
    case SetOp::prod: return a * b;
    case SetOp::ratio: return a / b;
    }
    return Scalar(0);
}

/// A o B = {a o b : a in A, b in B}.
inline RatSet set_op(const RatSet& a, const RatSet& b, SetOp op) {
    if (op == SetOp::ratio && b.has_zero()) {
        throw DivisionByZero("ratio set with 0 in the denominator set");
    }
    std::vector<Scalar> out;
    out.reserve(a.size() * b.size());
    for (const Scalar& x : a) {
        for (const Scalar& y : b) out.push_back(apply(op, x, y));
    }
    return RatSet(std::move(out));
}

/// {scale * a + shift : a in A}.
inline RatSet affine(const RatSet& a, const Scalar& scale, const Scalar& shift) {
    if (scale == 0) throw ZeroScale("affine map with zero scale");
    std::vector<Scalar> out;
    out.reserve(a.size());
    for (const Scalar& x : a) out.push_back(scale * x + shift);
    return RatSet(std::move(out));
}

// ---------------------------------------------------------------------------
// Set file format: one element per line, integer or p/q; '#' starts a comment line.

inline RatSet parse_set_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Scalar> elems;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            elems.push_back(parse_scalar(line));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return RatSet(std::move(elems));
}

inline std::string format_set_text(const RatSet& a) {
    std::string out;
    for (const Scalar& x : a) {
        out += to_string(x);
        out += '\n';
    }
    return out;
}

inline RatSet read_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open set file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_set_text(buf.str());
}

inline void write_set_file(const std::string& path, const RatSet& a) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write set file '" + path + "'");
    out << format_set_text(a);
}

} // namespace sumprod
