#pragma once

// JSON encoding of sets, configs, reports, certificates and traces.
//
// Conventions (schema "spctl-report/1", see docs/json-schema.md):
//   * exact rationals and big integers are decimal strings ("3/4", "123456789012345678901")
//   * small counts (fit in 64 bits by construction) are JSON numbers
//   * ratio enclosures are {"lo": double, "hi": double}
//   * object keys are emitted sorted, so equal inputs give identical bytes

#include "json.hpp" // nlohmann/json, vendored

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sumprod/collinear.hpp"
#include "sumprod/core.hpp"
#include "sumprod/decompose.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/errors.hpp"
#include "sumprod/incidence.hpp"
#include "sumprod/interval.hpp"
#include "sumprod/ratios.hpp"
#include "sumprod/setgen.hpp"

namespace sumprod::harness {

using json = nlohmann::json;

inline constexpr const char* kReportSchema = "spctl-report/1";
inline constexpr const char* kCorpusSchema = "spctl-corpus/1";

inline json to_json(const Scalar& v) { return to_string(v); }
inline json to_json(const Integer& v) { return v.get_str(); }
inline json to_json(const RatioInterval& r) { return json{{"lo", r.lo}, {"hi", r.hi}}; }

inline json to_json(const RatSet& a) {
    json out = json::array();
    for (const Scalar& x : a) out.push_back(to_string(x));
    return out;
}

inline json to_json(const PlanePoint& p) { return json::array({to_string(p.x), to_string(p.y)}); }
inline json to_json(const LineKey& l) { return json::array({l.a.get_str(), l.b.get_str(), l.c.get_str()}); }

inline json to_json(const CountHistogram& h) {
    json out = json::array();
    for (const auto& [x, c] : h) out.push_back(json::array({to_string(x), c}));
    return out;
}

// ---------------------------------------------------------------------------
// Parsing helpers

inline Scalar scalar_from_json(const json& j) {
    if (j.is_string()) return parse_scalar(j.get<std::string>());
    if (j.is_number_integer()) return Scalar(Integer(j.get<long>()));
    throw ParseError("expected a rational string or an integer, got " + j.dump());
}

inline RatSet set_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of elements");
    std::vector<Scalar> v;
    for (const auto& e : j) v.push_back(scalar_from_json(e));
    return RatSet(std::move(v));
}

inline Integer integer_from_json(const json& j) {
    const Scalar s = scalar_from_json(j);
    if (s.get_den() != 1) throw ParseError("expected an integer, got " + j.dump());
    return s.get_num();
}

namespace detail {

inline std::uint64_t u64_field(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    const json& v = j.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw ParseError(std::string("field \"") + key + "\" must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

inline Scalar scalar_field(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return scalar_from_json(j.at(key));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Generator configs

inline json to_json(const GeneratorConfig& config) {
    return std::visit(
        [](const auto& c) -> json {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, ApConfig>) {
                return {{"kind", "AP"}, {"start", to_string(c.start)}, {"step", to_string(c.step)}, {"n", c.n}};
            } else if constexpr (std::is_same_v<C, GpConfig>) {
                return {{"kind", "GP"}, {"start", to_string(c.start)}, {"ratio", to_string(c.ratio)}, {"n", c.n}};
            } else if constexpr (std::is_same_v<C, GridExampleConfig>) {
                return {{"kind", "GridExample"}, {"S", c.S}, {"P", c.P}};
            } else if constexpr (std::is_same_v<C, RandomConfig>) {
                return {{"kind", "Random"}, {"size", c.size}, {"range", c.range}, {"seed", c.seed}};
            } else {
                json e = json::array();
                for (const Scalar& x : c.elements) e.push_back(to_string(x));
                return {{"kind", "Literal"}, {"elements", e}};
            }
        },
        config);
}

inline GeneratorConfig config_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ParseError("generator config needs a \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "AP") {
        return ApConfig{detail::scalar_field(j, "start"), detail::scalar_field(j, "step"), detail::u64_field(j, "n")};
    }
    if (kind == "GP") {
        return GpConfig{detail::scalar_field(j, "start"), detail::scalar_field(j, "ratio"), detail::u64_field(j, "n")};
    }
    if (kind == "GridExample") return GridExampleConfig{detail::u64_field(j, "S"), detail::u64_field(j, "P")};
    if (kind == "Random") {
        if (!j.contains("seed")) throw InvalidConfig("Random config needs an explicit seed");
        return RandomConfig{detail::u64_field(j, "size"), detail::u64_field(j, "range"), detail::u64_field(j, "seed")};
    }
    if (kind == "Literal") {
        if (!j.contains("elements")) throw ParseError("Literal config needs \"elements\"");
        LiteralConfig c;
        for (const auto& e : j.at("elements")) c.elements.push_back(scalar_from_json(e));
        return c;
    }
    throw ParseError("unknown generator kind \"" + kind + "\"");
}

/// Accepts a bare array of configs or {"schema": ..., "items": [...]}.
inline std::vector<GeneratorConfig> corpus_from_json(const json& j) {
    const json* items = &j;
    if (j.is_object()) {
        if (!j.contains("items")) throw ParseError("corpus object needs \"items\"");
        items = &j.at("items");
    }
    if (!items->is_array()) throw ParseError("corpus must be an array of generator configs");
    std::vector<GeneratorConfig> out;
    for (const auto& e : *items) out.push_back(config_from_json(e));
    return out;
}

inline json corpus_to_json(const std::vector<GeneratorConfig>& corpus) {
    json items = json::array();
    for (const auto& c : corpus) items.push_back(to_json(c));
    return {{"schema", kCorpusSchema}, {"items", items}};
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << j.dump(2) << '\n';
}

/// Arrangement file: {"points": [[x, y], ...], "lines": [[a, b, c], ...]}.
inline Arrangement arrangement_from_json(const json& j) {
    std::vector<PlanePoint> pts;
    std::vector<LineKey> lines;
    if (j.contains("points")) {
        for (const auto& p : j.at("points")) {
            if (!p.is_array() || p.size() != 2) throw ParseError("point must be [x, y]");
            pts.push_back(PlanePoint{scalar_from_json(p[0]), scalar_from_json(p[1])});
        }
    }
    if (j.contains("lines")) {
        for (const auto& l : j.at("lines")) {
            if (!l.is_array() || l.size() != 3) throw ParseError("line must be [a, b, c]");
            // Rational coefficients are allowed in files; the key is canonicalized.
            const Scalar a = scalar_from_json(l[0]), b = scalar_from_json(l[1]), c = scalar_from_json(l[2]);
            const Integer den = lcm(lcm(a.get_den(), b.get_den()), c.get_den());
            lines.push_back(make_line(Integer(a * den), Integer(b * den), Integer(c * den)));
        }
    }
    return Arrangement(std::move(pts), std::move(lines));
}

inline json to_json(const Arrangement& arr) {
    json p = json::array(), l = json::array();
    for (const auto& x : arr.points()) p.push_back(to_json(x));
    for (const auto& x : arr.lines()) l.push_back(to_json(x));
    return {{"points", p}, {"lines", l}};
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const StBoundReport& r) {
    return {{"count", r.count}, {"bound", {{"lo", r.bound_lo}, {"hi", r.bound_hi}}},
            {"verdict", to_string(r.verdict)}, {"ok", r.ok}};
}

inline json to_json(const TripleCountReport& r) {
    return {{"T", r.T},
            {"T_o", r.T_o},
            {"degenerate_terms", r.degenerate_terms},
            {"shared_abscissa", r.shared_abscissa},
            {"ratio_vs_bound", to_json(r.ratio_vs_bound)},
            {"T_ratio_vs_bound", to_json(r.T_ratio_vs_bound)}};
}

inline json to_json(const IdentityReport& r) {
    return {{"lhs", to_json(r.lhs)}, {"rhs", r.rhs}, {"ok", r.ok}, {"grid_rhs", r.grid_rhs}, {"grid_ok", r.grid_ok}};
}

inline json to_json(const RatioProfile& p) {
    json r = json::array();
    for (const auto& [z, c] : p.r) r.push_back(json::array({to_string(z), c}));
    return {{"Z", to_json(p.Z)},
            {"r", r},
            {"R", to_json(p.R)},
            {"sum_r", to_json(p.sum_r)},
            {"zero_sum_pairs", p.zero_sum_pairs},
            {"zero_sum_tuples", to_json(p.zero_sum_tuples)},
            {"sum_ratio", to_json(p.sum_ratio)},
            {"energy_ratio", to_json(p.energy_ratio)}};
}

inline json to_json(const DLowerEstimate& d) {
    return {{"k", d.k}, {"flavor", to_string(d.flavor)}, {"value", to_json(d.value)}, {"witness", to_json(d.witness)},
            {"witness_index", d.witness_index}};
}

inline json to_json(const L4Check& c) {
    json parts = json::array();
    for (const auto& e : c.part_energies) parts.push_back(e.get_str());
    return {{"union_energy", to_json(c.union_energy)},
            {"part_energies", parts},
            {"verdict", to_string(c.verdict)},
            {"bound", {{"lo", c.bound_lo}, {"hi", c.bound_hi}}}};
}

inline json to_json(const LineMomentReport& r) {
    json sums = json::array(), ratios = json::array();
    for (const auto& s : r.sums) sums.push_back(s.get_str());
    for (const auto& s : r.ratios) ratios.push_back(to_string(s));
    return {{"p", r.p},
            {"family", r.family == LineFamily::collinear_triples ? "collinear_triples" : "rich_in_grid"},
            {"family_size", r.family_size},
            {"sums", sums},
            {"ratios", ratios}};
}

inline json to_json(const DyadicBand& b) {
    return {{"k", b.k}, {"t", b.t}, {"P", to_json(b.P)}, {"mass", to_json(b.mass)}, {"moment", to_json(b.moment)},
            {"r_max", b.r_max}, {"bands", b.bands}, {"log_factor", b.log_factor()}};
}

inline json to_json(const ExtractionCertificate& c) {
    return {{"source", to_json(c.source)},
            {"t", c.t},
            {"q1", c.q1},
            {"q2", c.q2},
            {"P", to_json(c.P)},
            {"A1_pop", to_json(c.A1_pop)},
            {"A2_pop", to_json(c.A2_pop)},
            {"branch", to_string(c.branch)},
            {"E3_input", to_json(c.E3_input)},
            {"Emul_output", to_json(c.Emul_output)},
            {"P_mass3", to_json(c.P_mass3)},
            {"S_P", c.S_P},
            {"m1", c.m1},
            {"m2", c.m2},
            {"L0", c.L0},
            {"L1", c.L1},
            {"L2", c.L2},
            {"energy_ratio", to_json(c.energy_ratio)},
            {"size_ratio", to_json(c.size_ratio)}};
}

/// Inverse of to_json(ExtractionCertificate), used to re-verify stored certificates.
inline ExtractionCertificate certificate_from_json(const json& j) {
    ExtractionCertificate c;
    c.source = set_from_json(j.at("source"));
    c.t = j.at("t").get<Count>();
    c.q1 = j.at("q1").get<Count>();
    c.q2 = j.at("q2").get<Count>();
    c.P = set_from_json(j.at("P"));
    c.A1_pop = set_from_json(j.at("A1_pop"));
    c.A2_pop = set_from_json(j.at("A2_pop"));
    const std::string br = j.at("branch").get<std::string>();
    if (br != "abscissae" && br != "ordinates") throw ParseError("unknown branch " + br);
    c.branch = br == "abscissae" ? Branch::abscissae : Branch::ordinates;
    c.E3_input = integer_from_json(j.at("E3_input"));
    c.Emul_output = integer_from_json(j.at("Emul_output"));
    c.P_mass3 = integer_from_json(j.at("P_mass3"));
    c.S_P = j.at("S_P").get<Count>();
    c.m1 = j.at("m1").get<Count>();
    c.m2 = j.at("m2").get<Count>();
    c.L0 = j.at("L0").get<unsigned>();
    c.L1 = j.at("L1").get<unsigned>();
    c.L2 = j.at("L2").get<unsigned>();
    return c;
}

inline json to_json(const DecompositionResult& r) {
    json parts = json::object(), energies = json::object(), pieces = json::array(), certs = json::array();
    for (const auto& [k, v] : r.parts) parts[k] = to_json(v);
    for (const auto& [k, v] : r.energies) energies[k] = to_json(v);
    for (const auto& p : r.pieces) pieces.push_back(to_json(p));
    for (const auto& c : r.certificates) certs.push_back(to_json(c));
    json out = {{"kind", to_string(r.kind)},
                {"input", to_json(r.input)},
                {"parts", parts},
                {"pieces", pieces},
                {"certificates", certs},
                {"energies", energies},
                {"target_ratio", to_json(r.target_ratio)}};
    if (r.kind == DecompositionKind::balog_wooley) out["M"] = r.M ? json(to_string(*r.M)) : json("auto");
    if (r.l4_checked) out["l4"] = to_json(r.l4);
    return out;
}

inline json to_json(const RegTrace& t) {
    json steps = json::array();
    for (const RegStep& s : t.steps) {
        steps.push_back({{"size", s.size},
                         {"t", s.t},
                         {"P_size", s.P_size},
                         {"G", s.G},
                         {"G_prime", s.G_prime},
                         {"kept", s.kept},
                         {"removed", s.removed},
                         {"Ek", to_json(s.Ek)},
                         {"bands", s.bands},
                         {"undecided", s.undecided}});
    }
    return {{"k", t.k},
            {"input_size", t.input_size},
            {"epsilon", {{"lo", to_string(t.eps_lo)}, {"hi", to_string(t.eps_hi)}}},
            {"max_steps", t.max_steps},
            {"iterations", t.iterations()},
            {"steps", steps},
            {"B", to_json(t.B)},
            {"B_prime", to_json(t.B_prime)},
            {"B_dprime", to_json(t.B_dprime)},
            {"t", t.t},
            {"P", to_json(t.P)},
            {"G", t.G}};
}

inline json to_json(const BestZ& b) {
    json all = json::array();
    for (const auto& [z, v] : b.all) all.push_back(json::array({to_string(z), v.get_str()}));
    return {{"z", to_json(b.z)}, {"value", to_json(b.value)}, {"ratio", to_json(b.ratio)}, {"candidates", all}};
}

/// {"schema": "spctl-report/1", "command": ..., "input": ..., "result": ...}
inline json envelope(const std::string& command, json input, json result) {
    return {{"schema", kReportSchema}, {"command", command}, {"input", std::move(input)}, {"result", std::move(result)}};
}

} // namespace sumprod::harness
