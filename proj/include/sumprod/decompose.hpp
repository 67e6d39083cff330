#pragma once

// Constructive decompositions.
//
//   dyadic_band              pigeonhole a k-th moment into one level set [t, 2t)
//   extract_mult_structured  popular-difference extractor (three dyadic selections)
//   bw_decompose             A = B ⊔ C, B additively poor, C multiplicatively poor
//   xy_decompose             A = X ∪ Y, both halves at least |A|/2
//   regularize               B'' ⊆ B' ⊆ B ⊆ A with uniform r_{P+B} on B''
//   best_z                   dilate maximizing sum_{x in zA} |zA ∩ x zA|
//
// Every "comparable up to logs" step is stored as a pair of exact integer
// inequalities whose loss factor is a power of two times a band count.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sumprod/core.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/errors.hpp"
#include "sumprod/interval.hpp"
#include "sumprod/setgen.hpp"

namespace sumprod {

// ---------------------------------------------------------------------------
// Dyadic bands

struct DyadicBand {
    int k = 1;
    Count t = 1;          ///< power of two
    RatSet P;             ///< {x : t <= r(x) < 2t}
    Integer mass;         ///< sum_{x in P} r(x)^k
    Integer moment;       ///< sum_x r(x)^k over the whole histogram
    Count r_max = 0;
    std::size_t bands = 0; ///< nonempty bands in the histogram

    /// ⌈log2 r_max⌉ + 1
    unsigned log_factor() const {
        unsigned l = 0;
        while ((Count(1) << l) < r_max) ++l;
        return l + 1;
    }

    /// mass * (⌈log2 r_max⌉ + 1) >= moment
    bool pigeonhole_holds() const { return mass * log_factor() >= moment; }
};

namespace detail {

/// Running tally of the pigeonhole guarantee over every band ever selected.
struct DyadicAudit {
    Count checked = 0;
    Count failed = 0;
};

inline DyadicAudit& dyadic_audit() {
    static DyadicAudit audit;
    return audit;
}

inline unsigned floor_log2(Count v) {
    unsigned j = 0;
    while (v >>= 1) ++j;
    return j;
}

inline Integer pow_count(Count base, unsigned k) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, k);
    return r;
}

} // namespace detail

/// Selects the band [2^j, 2^{j+1}) carrying the largest share of the k-th
/// moment, ties toward the smaller t. The largest share is at least the
/// moment divided by the number of nonempty bands.
inline DyadicBand dyadic_band(const CountHistogram& h, int k) {
    if (h.empty()) throw EmptyHistogram("dyadic_band: empty histogram");
    if (k < 1) throw InvalidArgument("dyadic_band needs k >= 1");
    const unsigned ku = static_cast<unsigned>(k);

    std::map<unsigned, Integer> mass;
    DyadicBand out;
    out.k = k;
    out.moment = 0;
    for (const auto& [x, c] : h) {
        const Integer ck = detail::pow_count(c, ku);
        mass[detail::floor_log2(c)] += ck;
        out.moment += ck;
        out.r_max = std::max(out.r_max, c);
    }
    out.bands = mass.size();

    unsigned best = mass.begin()->first;
    for (const auto& [j, m] : mass) {
        if (m > mass[best]) best = j;
    }
    out.t = Count(1) << best;
    out.mass = mass[best];
    std::vector<Scalar> p;
    for (const auto& [x, c] : h) {
        if (c >= out.t && c < 2 * out.t) p.push_back(x);
    }
    out.P = RatSet(std::move(p));
    auto& audit = detail::dyadic_audit();
    ++audit.checked;
    if (!out.pigeonhole_holds()) ++audit.failed;
    return out;
}

// ---------------------------------------------------------------------------
// Extractor

enum class Branch { abscissae, ordinates };

inline const char* to_string(Branch b) { return b == Branch::abscissae ? "abscissae" : "ordinates"; }

struct ExtractionCertificate {
    RatSet source;
    Count t = 0, q1 = 0, q2 = 0;
    RatSet P, A1_pop, A2_pop;
    Branch branch = Branch::ordinates;
    Integer E3_input;     ///< E_3^+(source)
    Integer Emul_output;  ///< E^x(A')

    // Chained counts. S_P = sum_{x in P} r_{A-A}(x) = sum_{a in A} r_{P+A}(a);
    // m1 = sum_{a in A1} r_{P+A}(a) = sum_{b in A} r_{A1-P}(b); m2 = sum_{b in A2} r_{A1-P}(b).
    Integer P_mass3;      ///< sum_{x in P} r_{A-A}(x)^3
    Count S_P = 0;
    Count m1 = 0;
    Count m2 = 0;
    unsigned L0 = 0, L1 = 0, L2 = 0; ///< ⌈log2 r_max⌉ + 1 of the three histograms

    RatioInterval energy_ratio; ///< E_3^+(A)^4 E^x(A')^3 / (|A'|^12 |A|^10)
    RatioInterval size_ratio;  ///< |A'| |A| / E_3^+(A)^{1/2}

    const RatSet& output() const { return branch == Branch::ordinates ? A2_pop : A1_pop; }
    Count q() const { return branch == Branch::ordinates ? q2 : q1; }
};

namespace detail {

/// a -> r_{P+A}(a) for a in A with r > 0.
inline CountHistogram popularity_in(const RatSet& a, const RatSet& p, SetOp op, const RatSet& left) {
    const CountHistogram h = rep_histogram(left, p, op);
    std::vector<CountHistogram::Entry> e;
    for (const auto& [x, c] : h) {
        if (a.contains(x)) e.emplace_back(x, c);
    }
    return CountHistogram(std::move(e));
}

inline Count sum_over(const CountHistogram& h, const RatSet& s) {
    Count n = 0;
    for (const Scalar& x : s) n += h.count(x);
    return n;
}


inline bool band_exact(const CountHistogram& h, const RatSet& s, Count t) {
    std::vector<Scalar> want;
    for (const auto& [x, c] : h) {
        if (c >= t && c < 2 * t) want.push_back(x);
    }
    return RatSet(std::move(want)) == s;
}

inline bool is_power_of_two(Count t) { return t != 0 && (t & (t - 1)) == 0; }

inline Integer size_int(std::size_t n) { return Integer(static_cast<unsigned long>(n)); }

} // namespace detail

/// Shrinks A to a multiplicatively structured piece A' with
/// E_3^+(A)^4 E^x(A')^3 ≲ |A'|^12 |A|^10.
inline ExtractionCertificate extract_mult_structured(const RatSet& a) {
    if (a.size() < 2) throw DegenerateInput("extractor needs |A| >= 2");
    if (a.has_zero()) throw InvalidArgument("extractor needs 0 not in A");

    ExtractionCertificate c;
    c.source = a;

    const CountHistogram diff = rep_histogram(a, a, SetOp::diff);
    const DyadicBand band = dyadic_band(diff, 3);
    c.t = band.t;
    c.P = band.P;
    c.P_mass3 = band.mass;
    c.E3_input = band.moment;
    c.S_P = detail::sum_over(diff, c.P);
    c.L0 = band.log_factor();

    // r_{P+A}(a) = #{(x, b) in P x A : x + b = a}
    const CountHistogram pop1 = detail::popularity_in(a, c.P, SetOp::sum, a);
    const DyadicBand b1 = dyadic_band(pop1, 1);
    c.q1 = b1.t;
    c.A1_pop = b1.P;
    c.m1 = detail::sum_over(pop1, c.A1_pop);
    c.L1 = b1.log_factor();

    // r_{A1-P}(b) = #{(a, x) in A1 x P : a - x = b}
    const CountHistogram pop2 = detail::popularity_in(a, c.P, SetOp::diff, c.A1_pop);
    const DyadicBand b2 = dyadic_band(pop2, 1);
    c.q2 = b2.t;
    c.A2_pop = b2.P;
    c.m2 = detail::sum_over(pop2, c.A2_pop);
    c.L2 = b2.log_factor();

    c.branch = c.q2 <= c.A2_pop.size() ? Branch::ordinates : Branch::abscissae;
    const RatSet& out = c.output();
    c.Emul_output = multiplicative_energy(out, 2);

    const Integer na = detail::size_int(a.size());
    const Integer no = detail::size_int(out.size());
    c.energy_ratio = ratio_interval(Interval::of(Integer(c.E3_input * c.E3_input * c.E3_input * c.E3_input *
                                                         c.Emul_output * c.Emul_output * c.Emul_output)),
                                   monomial({{no, 12, 1}, {na, 10, 1}}));
    c.size_ratio = ratio_interval(Interval::of(Integer(no * na)), monomial({{c.E3_input, 1, 2}}));
    return c;
}

struct CertificateCheck {
    bool ok = true;
    std::vector<std::string> failures;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
};

/// Recomputes every histogram from the source set and checks the stored data.
inline CertificateCheck verify_certificate(const ExtractionCertificate& c) {
    CertificateCheck v;
    const RatSet& a = c.source;
    v.require(a.size() >= 2 && !a.has_zero(), "source set admissible");
    if (!v.ok) return v;

    const CountHistogram diff = rep_histogram(a, a, SetOp::diff);
    v.require(detail::is_power_of_two(c.t), "t is a power of two");
    v.require(!c.P.empty() && detail::band_exact(diff, c.P, c.t), "P = {x : t <= r_{A-A}(x) < 2t}");
    v.require(diff.moment(3) == c.E3_input, "E3_input = E_3^+(A)");
    Integer m3(0);
    for (const Scalar& x : c.P) m3 += detail::pow_count(diff.count(x), 3);
    v.require(m3 == c.P_mass3, "stored P mass");
    v.require(c.P_mass3 * c.L0 >= c.E3_input, "P mass * L0 >= E_3^+(A)");

    const Count sp = detail::sum_over(diff, c.P);
    v.require(sp == c.S_P, "S_P = sum_P r_{A-A}");
    const Integer np = detail::size_int(c.P.size());
    v.require(np * c.t <= c.S_P && c.S_P < np * 2 * c.t, "|P| t <= S_P < 2 |P| t");

    const CountHistogram pop1 = detail::popularity_in(a, c.P, SetOp::sum, a);
    v.require(pop1.total() == c.S_P, "sum_A r_{P+A} = S_P");
    v.require(detail::is_power_of_two(c.q1), "q1 is a power of two");
    v.require(!c.A1_pop.empty() && detail::band_exact(pop1, c.A1_pop, c.q1), "A1 = {a : q1 <= r_{P+A}(a) < 2 q1}");
    v.require(detail::sum_over(pop1, c.A1_pop) == c.m1, "m1 = sum_A1 r_{P+A}");
    const Integer n1 = detail::size_int(c.A1_pop.size());
    v.require(n1 * c.q1 <= c.m1 && c.m1 < n1 * 2 * c.q1, "q1 |A1| <= m1 < 2 q1 |A1|");
    v.require(Integer(static_cast<unsigned long>(c.m1)) * dyadic_band(pop1, 1).log_factor() >= c.S_P &&
                  dyadic_band(pop1, 1).log_factor() == c.L1,
              "m1 * L1 >= S_P");

    const CountHistogram pop2 = detail::popularity_in(a, c.P, SetOp::diff, c.A1_pop);
    v.require(pop2.total() == c.m1, "sum_A r_{A1-P} = m1");
    v.require(detail::is_power_of_two(c.q2), "q2 is a power of two");
    v.require(!c.A2_pop.empty() && detail::band_exact(pop2, c.A2_pop, c.q2), "A2 = {b : q2 <= r_{A1-P}(b) < 2 q2}");
    v.require(is_subset(c.A2_pop, a), "A2 ⊆ A");
    v.require(detail::sum_over(pop2, c.A2_pop) == c.m2, "m2 = sum_A2 r_{A1-P}");
    const Integer n2 = detail::size_int(c.A2_pop.size());
    v.require(n2 * c.q2 <= c.m2 && c.m2 < n2 * 2 * c.q2, "q2 |A2| <= m2 < 2 q2 |A2|");
    v.require(Integer(static_cast<unsigned long>(c.m2)) * dyadic_band(pop2, 1).log_factor() >= c.m1 &&
                  dyadic_band(pop2, 1).log_factor() == c.L2,
              "m2 * L2 >= m1");

    // Chained two-sided bounds against |P| t:
    //   |P| t < 2 L1 |A1| q1      and  |A1| q1 <= m1 <= S_P < 2 |P| t
    //   |P| t < 2 L1 L2 |A2| q2   and  |A2| q2 <= m2 <= m1 < 2 |P| t
    const Integer pt = np * c.t;
    v.require(pt < 2 * c.L1 * n1 * c.q1 && n1 * c.q1 < 2 * pt, "|A1| q1 within 2 L1 of |P| t");
    v.require(pt < 2 * c.L1 * c.L2 * n2 * c.q2 && n2 * c.q2 < 2 * pt, "|A2| q2 within 2 L1 L2 of |P| t");

    const Branch want = c.q2 <= c.A2_pop.size() ? Branch::ordinates : Branch::abscissae;
    v.require(c.branch == want, "branch rule q2 <= |A2|");
    v.require(multiplicative_energy(c.output(), 2) == c.Emul_output, "Emul_output = E^x(A')");
    return v;
}

// ---------------------------------------------------------------------------
// Decompositions

enum class DecompositionKind { balog_wooley, xy };

inline const char* to_string(DecompositionKind k) { return k == DecompositionKind::balog_wooley ? "balog_wooley" : "xy"; }

struct DecompositionResult {
    DecompositionKind kind = DecompositionKind::balog_wooley;
    RatSet input;
    std::map<std::string, RatSet> parts;       ///< {B, C} or {X, Y}
    std::vector<RatSet> pieces;                ///< D_j or A_j in extraction order
    std::vector<ExtractionCertificate> certificates;
    std::map<std::string, Integer> energies;   ///< E+(B), Ex(C) or E3+(X), Ex(Y)
    std::optional<Scalar> M;                   ///< explicit threshold; empty for |A|^{6/11}
    RatioInterval target_ratio;
    L4Check l4;                                ///< E^x(⊔ pieces)^{1/4} <= sum E^x(piece)^{1/4}
    bool l4_checked = false;
};

namespace detail {

inline Integer pow_int(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

/// E_3^+(B) > |A|^4 / M. For the automatic M = |A|^{6/11} this is
/// E_3^+(B)^11 |A|^6 > |A|^44 in integers.
inline bool bw_guard(const Integer& e3, std::size_t n, const std::optional<Scalar>& m) {
    const Integer na = size_int(n);
    if (!m) return pow_int(e3, 11) * pow_int(na, 6) > pow_int(na, 44);
    return e3 * m->get_num() > pow_int(na, 4) * m->get_den();
}

inline void require_no_zero(const RatSet& a, const char* what) {
    if (a.has_zero()) throw InvalidArgument(std::string(what) + " needs 0 not in A");
}

inline void attach_l4(DecompositionResult& r) {
    if (r.pieces.empty()) return;
    r.l4 = l4_union_check(std::span<const RatSet>(r.pieces));
    r.l4_checked = true;
}

} // namespace detail

/// B_1 = A; while E_3^+(B_j) > |A|^4/M, extract D_j from B_j and remove it.
/// Returns B = final B_j and C = ⊔ D_j.
inline DecompositionResult bw_decompose(const RatSet& a, const std::optional<Scalar>& m = std::nullopt) {
    detail::require_no_zero(a, "bw_decompose");
    if (m && (sgn(*m) <= 0 || *m > Scalar(detail::pow_int(detail::size_int(a.size()), 4)))) {
        throw InvalidArgument("bw_decompose needs 0 < M <= |A|^4");
    }
    DecompositionResult r;
    r.kind = DecompositionKind::balog_wooley;
    r.input = a;
    r.M = m;

    RatSet b = a, c;
    std::size_t iterations = 0;
    while (detail::bw_guard(additive_energy(b, 3), a.size(), m)) {
        if (++iterations > a.size()) throw NonTermination("bw_decompose ran more than |A| extractions");
        ExtractionCertificate cert = extract_mult_structured(b);
        const RatSet d = cert.output();
        b = set_difference(b, d);
        c = set_union(c, d);
        r.pieces.push_back(d);
        r.certificates.push_back(std::move(cert));
    }
    r.parts["B"] = b;
    r.parts["C"] = c;
    r.energies["E+(B)"] = additive_energy(b, 2);
    r.energies["Ex(C)"] = multiplicative_energy(c, 2);
    const Integer top = std::max(r.energies["E+(B)"], r.energies["Ex(C)"]);
    r.target_ratio = ratio_interval(top, monomial({{detail::size_int(a.size()), 30, 11}}));
    detail::attach_l4(r);
    return r;
}

/// Extracts A_1, A_2, ... from the remainder until 2 |A_1 ∪ ... ∪ A_J| >= |A|.
/// X is the remainder before the last extraction and Y the union.
inline DecompositionResult xy_decompose(const RatSet& a) {
    detail::require_no_zero(a, "xy_decompose");
    if (a.size() < 2) throw DegenerateInput("xy_decompose needs |A| >= 2");
    DecompositionResult r;
    r.kind = DecompositionKind::xy;
    r.input = a;

    RatSet y, x = a;
    std::size_t iterations = 0;
    while (2 * y.size() < a.size()) {
        if (++iterations > a.size()) throw NonTermination("xy_decompose ran more than |A| extractions");
        x = set_difference(a, y);
        ExtractionCertificate cert = extract_mult_structured(x);
        const RatSet piece = cert.output();
        y = set_union(y, piece);
        r.pieces.push_back(piece);
        r.certificates.push_back(std::move(cert));
    }
    r.parts["X"] = x;
    r.parts["Y"] = y;
    r.energies["E3+(X)"] = additive_energy(x, 3);
    r.energies["Ex(Y)"] = multiplicative_energy(y, 2);
    const Integer& e3 = r.energies["E3+(X)"];
    const Integer& em = r.energies["Ex(Y)"];
    r.target_ratio = ratio_interval(Integer(detail::pow_int(e3, 4) * detail::pow_int(em, 3)),
                                    monomial({{detail::size_int(a.size()), 22, 1}}));
    detail::attach_l4(r);
    return r;
}

struct DecompositionCheck {
    bool ok = true;
    std::vector<std::string> failures;
};

/// Exact postconditions of either decomposition, including every certificate.
inline DecompositionCheck verify_decomposition(const DecompositionResult& r) {
    DecompositionCheck v;
    auto require = [&](bool cond, const std::string& what) {
        if (!cond) {
            v.ok = false;
            v.failures.push_back(what);
        }
    };
    const std::size_t n = r.input.size();
    RatSet pieces_union;
    std::size_t pieces_total = 0;
    for (const RatSet& p : r.pieces) {
        pieces_union = set_union(pieces_union, p);
        pieces_total += p.size();
        require(!p.empty(), "extracted piece nonempty");
    }
    if (r.kind == DecompositionKind::balog_wooley) {
        const RatSet& b = r.parts.at("B");
        const RatSet& c = r.parts.at("C");
        require(are_disjoint(b, c), "B ∩ C = ∅");
        require(set_union(b, c) == r.input, "B ∪ C = A");
        require(pieces_union.size() == pieces_total, "D_j pairwise disjoint");
        require(pieces_union == c, "C = ⊔ D_j");
        require(!detail::bw_guard(additive_energy(b, 3), n, r.M), "exit guard E_3^+(B) <= |A|^4 / M");
    } else {
        const RatSet& x = r.parts.at("X");
        const RatSet& y = r.parts.at("Y");
        require(set_union(x, y) == r.input, "X ∪ Y = A");
        require(2 * x.size() >= n, "2|X| >= |A|");
        require(2 * y.size() >= n, "2|Y| >= |A|");
        require(pieces_union.size() == pieces_total, "A_j pairwise disjoint");
        require(pieces_union == y, "Y = ∪ A_j");
    }
    for (std::size_t i = 0; i < r.certificates.size(); ++i) {
        const CertificateCheck c = verify_certificate(r.certificates[i]);
        for (const auto& f : c.failures) require(false, "certificate " + std::to_string(i) + ": " + f);
        require(r.certificates[i].output() == r.pieces[i], "certificate " + std::to_string(i) + " output matches piece");
    }
    if (r.l4_checked) require(r.l4.verdict != Verdict::no, "l4 recombination");
    return v;
}

// ---------------------------------------------------------------------------
// Regularization

struct RegStep {
    std::size_t size = 0;   ///< |A_i|
    Count t = 0;
    std::size_t P_size = 0;
    Count G = 0;            ///< |G_i| = #{(a, b) in A_i^2 : a - b in P_i}
    Count G_prime = 0;      ///< #{(a, b) in G_i : a in A_i'}
    bool kept = false;      ///< the process stopped here, B = A_i
    std::size_t removed = 0; ///< |A_i \ A_i'|
    Integer Ek;             ///< E_k^+(A_i)
    std::size_t bands = 0;  ///< nonempty dyadic bands of r_{A_i - A_i}
    std::size_t undecided = 0; ///< elements kept in A_i' because the cap comparison stayed undecided
};

struct RegTrace {
    int k = 2;
    std::size_t input_size = 0;
    Scalar eps_lo, eps_hi;  ///< rational enclosure of ε = ln 2 / (k 2^{k+1} ln^2 |A|)
    Count max_steps = 0;    ///< ⌈1/ε⌉
    std::vector<RegStep> steps;
    RatSet B, B_prime, B_dprime;
    Count t = 0;
    RatSet P;
    Count G = 0;

    /// Number of shrinking steps before the stop, so |B| = |A_I|.
    std::size_t iterations() const { return steps.empty() ? 0 : steps.size() - 1; }
};

namespace detail {

inline Interval reg_epsilon(std::size_t n, int k, mpfr_prec_t prec) {
    const Interval ln = log(Interval::of(size_int(n), prec));
    const Interval den = Interval::of(static_cast<long>(k) << (k + 1), prec) * ln * ln;
    return Interval::ln2(prec) / den;
}

/// ⌈1/ε⌉, widening precision until the ceiling is pinned; falls back to the
/// ceiling of the upper endpoint.
inline Count reg_max_steps(std::size_t n, int k) {
    for (mpfr_prec_t prec = kIntervalPrecision; prec <= kMaxIntervalPrecision; prec *= 2) {
        const Interval inv = Interval::of(1L, prec) / reg_epsilon(n, k, prec);
        const Scalar lo = inv.lo_rational(), hi = inv.hi_rational();
        Integer clo, chi;
        mpz_cdiv_q(clo.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
        mpz_cdiv_q(chi.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
        if (clo == chi || prec == kMaxIntervalPrecision) return chi.get_ui();
    }
    return 0;
}

/// r ε |A| <= G, decided with outward intervals; undecided counts as true.
inline bool within_cap(Count r, std::size_t n, Count g, std::size_t base, int k, bool& undecided) {
    const Verdict v = decide([&](mpfr_prec_t prec) {
        const Interval lhs = Interval::of(Integer(static_cast<unsigned long>(r)), prec) * reg_epsilon(base, k, prec) *
                             Interval::of(size_int(n), prec);
        return certainly_le(lhs, Interval::of(Integer(static_cast<unsigned long>(g)), prec));
    });
    undecided = v == Verdict::inconclusive;
    return v != Verdict::no;
}

/// r_{P+A}(a) for every a in A, zero where absent.
inline CountHistogram pop_histogram(const RatSet& a, const RatSet& p) { return popularity_in(a, p, SetOp::sum, a); }

} // namespace detail

inline RegTrace regularize(const RatSet& a, int k) {
    if (a.size() < 4) throw DegenerateInput("regularize needs |A| >= 4");
    if (k < 2 || k > kMaxMoment) throw InvalidArgument("regularize needs k in [2, 8]");

    RegTrace tr;
    tr.k = k;
    tr.input_size = a.size();
    {
        const Interval eps = detail::reg_epsilon(a.size(), k, kIntervalPrecision);
        tr.eps_lo = eps.lo_rational();
        tr.eps_hi = eps.hi_rational();
    }
    tr.max_steps = detail::reg_max_steps(a.size(), k);

    RatSet cur = a;
    for (;;) {
        if (tr.steps.size() >= tr.max_steps) {
            throw IterationOverflow("regularize exceeded ⌈1/ε⌉ steps");
        }
        const CountHistogram diff = rep_histogram(cur, cur, SetOp::diff);
        const DyadicBand band = dyadic_band(diff, k);
        RegStep st;
        st.size = cur.size();
        st.t = band.t;
        st.P_size = band.P.size();
        st.Ek = band.moment;
        st.bands = band.bands;
        st.G = detail::sum_over(diff, band.P);

        const CountHistogram pop = detail::pop_histogram(cur, band.P);
        std::vector<Scalar> kept;
        for (const Scalar& x : cur) {
            bool undecided = false;
            const Count r = pop.count(x);
            if (detail::within_cap(r, cur.size(), st.G, a.size(), k, undecided)) {
                kept.push_back(x);
                st.G_prime += r;
                st.undecided += undecided;
            }
        }
        RatSet next(std::move(kept));
        st.removed = cur.size() - next.size();

        // Continue while |G'| < |G| / 2^k.
        if ((Integer(static_cast<unsigned long>(st.G_prime)) << k) < Integer(static_cast<unsigned long>(st.G))) {
            tr.steps.push_back(st);
            cur = std::move(next);
            continue;
        }
        st.kept = true;
        tr.steps.push_back(st);
        tr.B = cur;
        tr.B_prime = next;
        tr.t = band.t;
        tr.P = band.P;
        tr.G = st.G;
        std::vector<Scalar> dd;
        for (const Scalar& x : tr.B_prime) {
            // r_{P+B}(x) 2^{k+1} |B| >= |G|
            const Integer lhs = (Integer(static_cast<unsigned long>(pop.count(x))) << (k + 1)) * detail::size_int(cur.size());
            if (lhs >= Integer(static_cast<unsigned long>(st.G))) dd.push_back(x);
        }
        tr.B_dprime = RatSet(std::move(dd));
        return tr;
    }
}

struct RegularizationCheck {
    bool ok = true;
    std::vector<std::string> failures;
    std::size_t undecided_caps = 0; ///< B'' elements whose cap comparison stayed undecided
};

/// Re-derives the trace's claims from A and the stored sets.
inline RegularizationCheck verify_regularization(const RatSet& a, const RegTrace& tr) {
    RegularizationCheck v;
    auto require = [&](bool cond, const std::string& what) {
        if (!cond) {
            v.ok = false;
            v.failures.push_back(what);
        }
    };
    require(is_subset(tr.B_dprime, tr.B_prime), "B'' ⊆ B'");
    require(is_subset(tr.B_prime, tr.B), "B' ⊆ B");
    require(is_subset(tr.B, a), "B ⊆ A");
    require(!tr.steps.empty() && tr.steps.size() <= tr.max_steps, "steps <= ⌈1/ε⌉");
    require(tr.max_steps == detail::reg_max_steps(a.size(), tr.k), "⌈1/ε⌉ recomputed");

    const CountHistogram diff = rep_histogram(tr.B, tr.B, SetOp::diff);
    require(detail::band_exact(diff, tr.P, tr.t) && detail::is_power_of_two(tr.t), "P = {x in B - B : t <= r < 2t}");
    require(detail::sum_over(diff, tr.P) == tr.G, "|G| = sum_P r_{B-B}");
    const CountHistogram pop = detail::pop_histogram(tr.B, tr.P);
    require(pop.total() == tr.G, "sum_B r_{P+B} = |G|");

    for (const RatSet::value_type& x : tr.B_dprime) {
        const Count r = pop.count(x);
        const Integer lhs = (Integer(static_cast<unsigned long>(r)) << (tr.k + 1)) * detail::size_int(tr.B.size());
        require(lhs >= Integer(static_cast<unsigned long>(tr.G)), "lower sandwich at " + to_string(x));
        bool undecided = false;
        require(detail::within_cap(r, tr.B.size(), tr.G, a.size(), tr.k, undecided), "cap at " + to_string(x));
        v.undecided_caps += undecided;
    }

    // |A_{i+1}| > (1 - ε)|A_i| every step, so (1 - ε)^I |A| <= |B|; checked
    // with the lower rational endpoint of ε, which only strengthens it.
    const std::size_t iters = tr.iterations();
    Scalar f(1);
    const Scalar base = Scalar(1) - tr.eps_lo;
    for (std::size_t i = 0; i < iters; ++i) f *= base;
    require(f * Scalar(detail::size_int(a.size())) <= Scalar(detail::size_int(tr.B.size())), "(1-ε)^I |A| <= |B|");

    for (const RegStep& s : tr.steps) {
        // |P| t^k <= E_k < bands |P| (2t)^k
        const Integer np = detail::size_int(s.P_size);
        require(np * detail::pow_count(s.t, tr.k) <= s.Ek, "band lower inequality");
        require(s.Ek < detail::size_int(s.bands) * np * detail::pow_count(2 * s.t, tr.k), "band upper inequality");
        require(np * s.t <= s.G && s.G < 2 * np * s.t, "|P| t <= |G| < 2 |P| t");
    }
    return v;
}

// ---------------------------------------------------------------------------
// Dilates

struct BestZ {
    Scalar z;
    Integer value;                                ///< sum_{x in zA} |zA ∩ x zA|
    Scalar ratio;                                 ///< value |A| / E^x(A)
    std::vector<std::pair<Scalar, Integer>> all;  ///< every candidate in order
};

inline Integer dilate_value(const RatSet& a, const Scalar& z) {
    const RatSet za = affine(a, z, Scalar(0));
    Integer n(0);
    for (const Scalar& x : za) {
        unsigned long c = 0;
        for (const Scalar& y : za) c += za.contains(x * y);
        n += c;
    }
    return n;
}

/// {1} ∪ {1/a : a in A}
inline RatSet default_z_candidates(const RatSet& a) {
    std::vector<Scalar> v{Scalar(1)};
    for (const Scalar& x : a) {
        if (sgn(x) != 0) v.push_back(Scalar(1) / x);
    }
    return RatSet(std::move(v));
}

/// Maximizes over the supplied candidates only; ties go to the first candidate.
inline BestZ best_z(const RatSet& a, const RatSet& candidates) {
    if (candidates.empty()) throw EmptyCandidateList("best_z: no candidates");
    if (a.has_zero()) throw InvalidArgument("best_z needs 0 not in A");
    if (candidates.has_zero()) throw ZeroScale("best_z: candidate z = 0");
    if (a.empty()) throw InvalidArgument("best_z: empty A");
    BestZ out;
    bool first = true;
    for (const Scalar& z : candidates) {
        Integer v = dilate_value(a, z);
        out.all.emplace_back(z, v);
        if (first || v > out.value) {
            out.z = z;
            out.value = v;
            first = false;
        }
    }
    const Integer e = multiplicative_energy(a, 2);
    out.ratio = make_scalar(out.value * detail::size_int(a.size()), e);
    return out;
}

} // namespace sumprod
