// spctl: command-line front end for the sumprod library.
//
// Exit status: 0 on success, 1 when an exact check fails, 2 on bad input.

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sumprod/collinear.hpp"
#include "sumprod/decompose.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/harness/corpus.hpp"
#include "sumprod/harness/serialize.hpp"
#include "sumprod/harness/report.hpp"
#include "sumprod/harness/suites.hpp"
#include "sumprod/incidence.hpp"
#include "sumprod/ratios.hpp"
#include "sumprod/setgen.hpp"

using namespace sumprod;
using harness::json;

namespace {

struct Common {
    std::string set_file;
    std::string json_out;
    std::uint64_t seed = 1;
    std::uint64_t budget = 0;
    int k = 2;
};

void add_common(CLI::App* cmd, Common& c, bool needs_set) {
    auto* opt = cmd->add_option("--set", c.set_file, "set file (one rational per line, '#' comments)");
    if (needs_set) opt->required();
    cmd->add_option("--json", c.json_out, "write the JSON report to this file ('-' for stdout)");
    cmd->add_option("--seed", c.seed, "PRNG seed");
    cmd->add_option("--budget", c.budget, "work budget for brute-force kernels");
    cmd->add_option("--k", c.k, "moment / band exponent");
}

void emit(const Common& c, const json& report) {
    if (c.json_out.empty()) return;
    if (c.json_out == "-") {
        std::cout << report.dump(2) << '\n';
    } else {
        harness::write_json_file(c.json_out, report);
    }
}

RatSet load(const std::string& path) { return read_set_file(path); }

Count budget_or(const Common& c, Count fallback) { return c.budget ? c.budget : fallback; }

// ---------------------------------------------------------------------------

struct GenArgs {
    std::string kind;
    std::string start = "1", step = "1", ratio = "2";
    std::size_t n = 8, S = 2, P = 2, size = 8;
    std::uint64_t range = 64;
    std::vector<std::string> elements;
    std::string out;
};

int run_gen(const Common& c, const GenArgs& g) {
    GeneratorConfig config;
    if (g.kind == "AP") config = ApConfig{parse_scalar(g.start), parse_scalar(g.step), g.n};
    else if (g.kind == "GP") config = GpConfig{parse_scalar(g.start), parse_scalar(g.ratio), g.n};
    else if (g.kind == "GridExample") config = GridExampleConfig{g.S, g.P};
    else if (g.kind == "Random") config = RandomConfig{g.size, g.range, c.seed};
    else {
        LiteralConfig lit;
        for (const auto& e : g.elements) lit.elements.push_back(parse_scalar(e));
        config = lit;
    }
    const RatSet a = generate(config);
    if (g.out.empty() || g.out == "-") {
        std::cout << format_set_text(a);
    } else {
        write_set_file(g.out, a);
        std::cerr << describe(config) << ": " << a.size() << " elements -> " << g.out << '\n';
    }
    emit(c, harness::envelope("gen", harness::to_json(config), {{"size", a.size()}, {"set", harness::to_json(a)}}));
    return 0;
}

int run_energy(const Common& c, const std::string& second, const std::string& flavor_name) {
    const RatSet a = load(c.set_file);
    const RatSet b = second.empty() ? a : load(second);
    const Flavor flavor = flavor_name == "multiplicative" ? Flavor::multiplicative : Flavor::additive;
    const Integer e = energy(a, b, c.k, flavor);
    const CountHistogram h = rep_histogram(a, b, flavor == Flavor::additive ? SetOp::diff : SetOp::ratio);
    std::cout << "E_" << c.k << (flavor == Flavor::additive ? "^+" : "^x") << " = " << e << '\n';
    json result = {{"k", c.k}, {"flavor", to_string(flavor)}, {"energy", e.get_str()}, {"support", h.size()},
                   {"histogram", harness::to_json(h)}};
    if (second.empty()) {
        std::vector<RatSet> candidates{a};
        if (flavor == Flavor::additive) candidates.push_back(set_op(a, a, SetOp::diff));
        else candidates.push_back(set_op(a, a, SetOp::ratio));
        const DLowerEstimate d = d_lower(a, c.k, flavor, candidates);
        std::cout << "d_" << c.k << " >= " << d.value << " (witness " << d.witness_index << ")\n";
        result["d_lower"] = harness::to_json(d);
    }
    emit(c, harness::envelope("energy", {{"A", harness::to_json(a)}, {"B", harness::to_json(b)}}, result));
    return 0;
}

int run_triples(const Common& c, const std::string& s2, const std::string& s3, const std::string& mode) {
    const RatSet a1 = load(c.set_file);
    const RatSet a2 = s2.empty() ? a1 : load(s2);
    const RatSet a3 = s3.empty() ? a1 : load(s3);
    json result;
    if (mode == "report") {
        const TripleCountReport r = t_report(a1, a2, a3, budget_or(c, kDefaultBruteBudget));
        std::cout << "T = " << r.T << ", T^o = " << r.T_o << ", degenerate = " << r.degenerate_terms << '\n';
        result = harness::to_json(r);
    } else {
        const TripleMode m = mode == "brute" ? TripleMode::brute : TripleMode::linehash;
        const Count n = t_o_count(a1, a2, a3, m, c.budget);
        std::cout << "T^o = " << n << " (" << to_string(m) << ")\n";
        result = {{"T_o", n}, {"mode", to_string(m)}};
    }
    emit(c, harness::envelope("triples", {{"A1", harness::to_json(a1)}, {"A2", harness::to_json(a2)}, {"A3", harness::to_json(a3)}},
                              result));
    return 0;
}

int run_ratios(const Common& c, const std::string& s2, const std::string& zfile, std::optional<Count> level) {
    const RatSet a1 = load(c.set_file);
    const RatSet a2 = s2.empty() ? a1 : load(s2);
    const RatioProfile p = zfile.empty() ? ratio_profile_full(a1, a2) : ratio_profile(load(zfile), a1, a2);
    std::cout << "|Z| = " << p.Z.size() << ", sum r = " << p.sum_r << ", R = " << p.R << '\n';
    json result = harness::to_json(p);
    if (level) {
        const RatSet zt = level_set(p.Z, a1, a2, *level);
        std::cout << "|Z_" << *level << "| = " << zt.size() << '\n';
        result["level_set"] = {{"t", *level}, {"Z_t", harness::to_json(zt)}};
    }
    emit(c, harness::envelope("ratios", {{"A1", harness::to_json(a1)}, {"A2", harness::to_json(a2)}}, result));
    return 0;
}

int run_incidence(const Common& c, const std::string& arrangement_file) {
    Arrangement arr;
    std::vector<PlanePoint> points;
    if (!arrangement_file.empty()) {
        arr = harness::arrangement_from_json(harness::read_json_file(arrangement_file));
        points = arr.points();
    } else if (!c.set_file.empty()) {
        points = grid_points(load(c.set_file));
        std::vector<LineKey> lines;
        for (const auto& [l, m] : spanned_line_counts(points)) lines.push_back(l);
        arr = Arrangement(points, lines);
    } else {
        throw InvalidArgument("incidence needs --arrangement or --set");
    }
    const StBoundReport st = st_bound_check(arr);
    std::cout << "I(P, L) = " << st.count << " <= " << st.bound_hi << " : " << (st.ok ? "ok" : "VIOLATED") << '\n';
    const std::size_t k = static_cast<std::size_t>(std::max(2, c.k));
    const auto rl = rich_lines(points, k);
    // Rich points cost one intersection per pair of lines.
    const long double line_pairs = static_cast<long double>(arr.lines().size()) * arr.lines().size() / 2;
    const bool points_run = line_pairs <= static_cast<long double>(budget_or(c, 20'000'000ULL));
    std::vector<PlanePoint> rp;
    if (points_run) rp = rich_points(arr.lines(), k);
    std::cout << k << "-rich lines: " << rl.size() << ", " << k << "-rich points: ";
    if (points_run) std::cout << rp.size() << '\n';
    else std::cout << "skipped (" << arr.lines().size() << " lines, raise --budget)\n";
    json lines = json::array(), pts = points_run ? json::array() : json(nullptr);
    for (const auto& l : rl) lines.push_back(harness::to_json(l));
    for (const auto& p : rp) pts.push_back(harness::to_json(p));
    emit(c, harness::envelope("incidence", harness::to_json(arr),
                              {{"st_bound", harness::to_json(st)},
                               {"k", k},
                               {"rich_lines", lines},
                               {"rich_lines_constant", to_string(rich_lines_constant(rl.size(), points.size(), k))},
                               {"rich_points", pts}}));
    return st.ok ? 0 : 1;
}

int run_decompose(const Common& c, const std::string& method, const std::string& m_text) {
    const RatSet a = load(c.set_file);
    json result;
    bool ok = true;
    if (method == "extract") {
        const ExtractionCertificate cert = extract_mult_structured(a);
        const CertificateCheck v = verify_certificate(cert);
        ok = v.ok;
        std::cout << "A' (" << to_string(cert.branch) << "): " << cert.output().size() << " elements, t = " << cert.t
                  << ", q1 = " << cert.q1 << ", q2 = " << cert.q2 << ", certificate " << (v.ok ? "verified" : "FAILED") << '\n';
        result = {{"certificate", harness::to_json(cert)}, {"verified", v.ok}, {"failures", v.failures}};
    } else if (method == "bestz") {
        const BestZ b = best_z(a, default_z_candidates(a));
        std::cout << "z = " << b.z << ", value = " << b.value << ", value |A| / Ex(A) = " << b.ratio << '\n';
        result = harness::to_json(b);
    } else {
        std::optional<Scalar> m;
        if (!m_text.empty() && m_text != "auto") m = parse_scalar(m_text);
        const DecompositionResult r = method == "xy" ? xy_decompose(a) : bw_decompose(a, m);
        const DecompositionCheck v = verify_decomposition(r);
        ok = v.ok;
        for (const auto& [name, part] : r.parts) std::cout << name << ": " << part.size() << " elements\n";
        for (const auto& [name, e] : r.energies) std::cout << name << " = " << e << '\n';
        std::cout << "ratio vs bound in [" << r.target_ratio.lo << ", " << r.target_ratio.hi << "], postconditions "
                  << (v.ok ? "hold" : "FAILED") << '\n';
        result = harness::to_json(r);
        result["verified"] = v.ok;
        result["failures"] = v.failures;
    }
    for (const auto& line : result.value("failures", std::vector<std::string>{})) std::cerr << "  " << line << '\n';
    emit(c, harness::envelope("decompose", {{"A", harness::to_json(a)}, {"method", method}}, result));
    return ok ? 0 : 1;
}

int run_regularize(const Common& c) {
    const RatSet a = load(c.set_file);
    const RegTrace tr = regularize(a, c.k);
    const RegularizationCheck v = verify_regularization(a, tr);
    std::cout << "steps " << tr.steps.size() << " (cap " << tr.max_steps << "), |B| = " << tr.B.size() << ", |B'| = "
              << tr.B_prime.size() << ", |B''| = " << tr.B_dprime.size() << ", t = " << tr.t << ", |P| = " << tr.P.size()
              << ", checks " << (v.ok ? "hold" : "FAILED") << '\n';
    for (const auto& f : v.failures) std::cerr << "  " << f << '\n';
    json result = harness::to_json(tr);
    result["verified"] = v.ok;
    result["failures"] = v.failures;
    emit(c, harness::envelope("regularize", {{"A", harness::to_json(a)}, {"k", c.k}}, result));
    return v.ok ? 0 : 1;
}

std::vector<GeneratorConfig> corpus_or(const std::string& file, std::vector<GeneratorConfig> fallback) {
    if (file.empty()) return fallback;
    return harness::corpus_from_json(harness::read_json_file(file));
}

void print_suite(const harness::VerifySuiteResult& r) {
    using harness::Status;
    using harness::Tier;
    for (const auto& c : r.checks) {
        if (c.tier == Tier::exact && c.status == Status::fail) {
            std::cout << "FAIL " << c.check << " [" << c.item << "] " << c.detail << '\n';
        }
    }
    std::cout << r.suite << ": " << r.count(Tier::exact, Status::pass) << " exact checks passed, " << r.exact_failures()
              << " failed, " << r.count(Tier::exact, Status::skipped) << " skipped, "
              << r.count(Tier::asymptotic, Status::report) << " ratio reports\n";
    for (const auto& f : r.fits) {
        std::cout << "  fit " << f.family << ": slope " << f.slope << " (target " << f.target << ")\n";
    }
    for (const auto& w : r.warnings) std::cout << "WARNING " << w << '\n';
}

int run_verify(const Common& c, const std::string& suite, const std::string& corpus_file, const std::string& baseline,
               const std::string& write_corpus) {
    const harness::SuiteName name = harness::suite_from_string(suite);
    auto fallback = name == harness::SuiteName::reports ? harness::grid_family(2, 5) : harness::default_corpus();
    const auto corpus = corpus_or(corpus_file, fallback);
    if (!write_corpus.empty()) harness::write_json_file(write_corpus, harness::corpus_to_json(corpus));
    harness::VerifySuiteResult r = harness::run_suite(name, corpus);
    if (!baseline.empty()) harness::compare_with_baseline(r, harness::read_json_file(baseline));
    print_suite(r);
    emit(c, harness::to_json(r));
    return r.ok() ? 0 : 1;
}

int run_report(const Common& c, const std::string& corpus_file, const std::string& baseline, const std::string& write_baseline,
               const std::string& alpha, const std::string& beta) {
    if (!alpha.empty() || !beta.empty()) {
        const RatSet a = load(c.set_file);
        const auto r = harness::shift_product_report(a, parse_scalar(alpha.empty() ? "1" : alpha),
                                                     parse_scalar(beta.empty() ? "1" : beta), budget_or(c, 200'000'000ULL));
        std::cout << "K = " << r.K << ", |(A+a)(A+b)| = " << r.shifted_product << " (ratio " << r.product_ratio
                  << "), |A+aA+bA| = " << r.three_sum << " (ratio " << r.sum_ratio << ")\n";
        if (r.identity_run) {
            std::cout << "shifted energy sum " << r.identity.lhs << ", T " << r.identity.rhs << ", mixed-grid count "
                      << r.identity.grid_rhs << '\n';
        }
        emit(c, harness::envelope("report", {{"A", harness::to_json(a)}}, harness::to_json(r)));
        return (!r.identity_run || r.identity.grid_ok) ? 0 : 1;
    }
    harness::VerifySuiteResult r = harness::run_suite(harness::SuiteName::reports, corpus_or(corpus_file, harness::grid_family(2, 5)));
    if (!baseline.empty()) harness::compare_with_baseline(r, harness::read_json_file(baseline));
    print_suite(r);
    if (!write_baseline.empty()) {
        json maxima = json::object();
        for (const auto& [k, v] : r.max_ratios()) maxima[k] = v;
        harness::write_json_file(write_baseline, {{"schema", harness::kReportSchema}, {"suite", "reports"}, {"max_ratios", maxima}});
    }
    emit(c, harness::to_json(r));
    return r.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spctl: exact sum-product counts, decompositions and verification suites"};
    app.require_subcommand(1);
    Common common;

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate a set");
    add_common(gen_cmd, common, false);
    gen_cmd->add_option("--kind", gen.kind, "AP, GP, GridExample, Random or Literal")
        ->required()
        ->check(CLI::IsMember({"AP", "GP", "GridExample", "Random", "Literal"}));
    gen_cmd->add_option("--start", gen.start);
    gen_cmd->add_option("--step", gen.step);
    gen_cmd->add_option("--ratio", gen.ratio);
    gen_cmd->add_option("--n", gen.n, "AP/GP length");
    gen_cmd->add_option("--S", gen.S);
    gen_cmd->add_option("--P", gen.P);
    gen_cmd->add_option("--size", gen.size, "Random size");
    gen_cmd->add_option("--range", gen.range, "Random values are drawn from [1, range]");
    gen_cmd->add_option("--elements", gen.elements, "Literal elements");
    gen_cmd->add_option("--out", gen.out, "set file to write (default stdout)");

    std::string second, third, flavor = "additive", mode = "linehash", zfile, arrangement, method = "bw", m_text = "auto";
    std::optional<Count> level;
    auto* energy_cmd = app.add_subcommand("energy", "additive or multiplicative energy");
    add_common(energy_cmd, common, true);
    energy_cmd->add_option("--set2", second, "second set B for E_k(A, B)");
    energy_cmd->add_option("--flavor", flavor)->check(CLI::IsMember({"additive", "multiplicative"}));

    auto* triples_cmd = app.add_subcommand("triples", "collinear triple counts T and T^o");
    add_common(triples_cmd, common, true);
    triples_cmd->add_option("--set2", second);
    triples_cmd->add_option("--set3", third);
    triples_cmd->add_option("--mode", mode)->check(CLI::IsMember({"brute", "linehash", "report"}));

    auto* ratios_cmd = app.add_subcommand("ratios", "r(z), R(Z; A1, A2) and level sets");
    add_common(ratios_cmd, common, true);
    ratios_cmd->add_option("--set2", second);
    ratios_cmd->add_option("--z", zfile, "set file for Z (default (A1+A2)/(A1+A2))");
    ratios_cmd->add_option("--level", level, "also print Z_t for this t");

    auto* incidence_cmd = app.add_subcommand("incidence", "incidences and the explicit Szemeredi-Trotter bound");
    add_common(incidence_cmd, common, false);
    incidence_cmd->add_option("--arrangement", arrangement, "JSON arrangement file");

    auto* decompose_cmd = app.add_subcommand("decompose", "extractor, Balog-Wooley and X/Y decompositions, best z");
    add_common(decompose_cmd, common, true);
    decompose_cmd->add_option("--method", method)->check(CLI::IsMember({"bw", "xy", "extract", "bestz"}));
    decompose_cmd->add_option("--M", m_text, "threshold M for bw (rational or 'auto')");

    auto* regularize_cmd = app.add_subcommand("regularize", "regularization trace B'' in B' in B in A");
    add_common(regularize_cmd, common, true);

    std::string suite, corpus_file, baseline, write_baseline, write_corpus, alpha, beta;
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    add_common(verify_cmd, common, false);
    verify_cmd->add_option("--suite", suite)
        ->required()
        ->check(CLI::IsMember({"exact", "oracle", "incidence", "decomposition", "regularization", "reports"}));
    verify_cmd->add_option("--corpus", corpus_file, "corpus JSON (default: built-in corpus)");
    verify_cmd->add_option("--baseline", baseline, "baseline ratio file");
    verify_cmd->add_option("--write-corpus", write_corpus, "save the corpus used by this run");

    auto* report_cmd = app.add_subcommand("report", "ratio tables and exponent fits, or the shifted product report");
    add_common(report_cmd, common, false);
    report_cmd->add_option("--corpus", corpus_file);
    report_cmd->add_option("--baseline", baseline);
    report_cmd->add_option("--write-baseline", write_baseline, "store the max ratios of this run");
    report_cmd->add_option("--alpha", alpha, "shift alpha (selects the shifted product report)");
    report_cmd->add_option("--beta", beta, "shift beta");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*gen_cmd) return run_gen(common, gen);
        if (*energy_cmd) return run_energy(common, second, flavor);
        if (*triples_cmd) return run_triples(common, second, third, mode);
        if (*ratios_cmd) return run_ratios(common, second, zfile, level);
        if (*incidence_cmd) return run_incidence(common, arrangement);
        if (*decompose_cmd) return run_decompose(common, method, m_text);
        if (*regularize_cmd) return run_regularize(common);
        if (*verify_cmd) return run_verify(common, suite, corpus_file, baseline, write_corpus);
        if (*report_cmd) return run_report(common, corpus_file, baseline, write_baseline, alpha, beta);
    } catch (const Error& e) {
        std::cerr << "spctl: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
