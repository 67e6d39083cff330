#include <gtest/gtest.h>

#include <cmath>

#include "sumprod/harness/corpus.hpp"
#include "sumprod/harness/report.hpp"
#include "sumprod/harness/serialize.hpp"
#include "sumprod/harness/suites.hpp"

using namespace sumprod;
using namespace sumprod::harness;

TEST(Json, ScalarsAreStrings) {
    EXPECT_EQ(to_json(make_scalar(-3, 6)).get<std::string>(), "-1/2");
    EXPECT_EQ(scalar_from_json(json("10/4")), make_scalar(5, 2));
    EXPECT_EQ(scalar_from_json(json(7)), Scalar(7));
    EXPECT_THROW(scalar_from_json(json(1.5)), ParseError);
    EXPECT_EQ(set_from_json(to_json(RatSet{1, make_scalar(2, 3)})), (RatSet{1, make_scalar(2, 3)}));
}

TEST(Json, CorpusRoundTrip) {
    const auto corpus = default_corpus();
    const json j = corpus_to_json(corpus);
    EXPECT_EQ(j.at("schema"), kCorpusSchema);
    const auto back = corpus_from_json(j);
    ASSERT_EQ(back.size(), corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) EXPECT_EQ(generate(back[i]), generate(corpus[i])) << describe(corpus[i]);
    EXPECT_EQ(corpus_from_json(j.at("items")).size(), corpus.size());
}

TEST(Json, ConfigErrors) {
    EXPECT_THROW(config_from_json(json{{"kind", "Random"}, {"size", 4}, {"range", 10}}), InvalidConfig);
    EXPECT_THROW(config_from_json(json{{"kind", "Spiral"}}), ParseError);
    EXPECT_THROW(config_from_json(json::array()), ParseError);
    EXPECT_THROW(corpus_from_json(json{{"schema", kCorpusSchema}}), ParseError);
}

TEST(Json, ArrangementLinesAreCleared) {
    json j;
    j["points"] = json::array({json::array({"0", "0"}), json::array({"1/2", "1"})});
    j["lines"] = json::array({json::array({"1/2", "-1/4", "0"}), json::array({"0", "3", "3"})});
    const Arrangement a = arrangement_from_json(j);
    ASSERT_EQ(a.lines().size(), 2u);
    EXPECT_EQ(a.lines()[0], make_line(0, 1, 1));
    EXPECT_EQ(a.lines()[1], make_line(2, -1, 0));
    // 2x - y = 0 carries both points, y = 1 only the second.
    EXPECT_EQ(incidences(a), 3u);
}

TEST(Json, CertificateRoundTrip) {
    const ExtractionCertificate c = extract_mult_structured(generate(GpConfig{Scalar(1), Scalar(2), 8}));
    const ExtractionCertificate back = certificate_from_json(to_json(c));
    EXPECT_TRUE(verify_certificate(back).ok);
    EXPECT_EQ(back.output(), c.output());
    EXPECT_EQ(to_json(back).at("P"), to_json(c).at("P"));
}

TEST(Fit, ExactPowerLaw) {
    std::vector<std::pair<std::size_t, Integer>> pts;
    for (std::size_t n : {2, 4, 8, 16}) pts.emplace_back(n, Integer(static_cast<unsigned long>(3 * n * n * n)));
    const ExponentFit f = fit_exponent("cube", pts, 3);
    EXPECT_NEAR(f.slope, 3.0, 1e-12);
    EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-9);
    for (double r : f.residuals) EXPECT_NEAR(r, 0.0, 1e-12);
    EXPECT_THROW(fit_exponent("short", {{1, Integer(1)}, {2, Integer(2)}}), InsufficientPoints);
    EXPECT_THROW(fit_exponent("order", {{2, Integer(1)}, {2, Integer(2)}, {3, Integer(3)}}), InvalidArgument);
    EXPECT_NEAR(log_integer(Integer(1) << 2000), 2000 * std::log(2.0), 1e-9);
}

TEST(ShiftReport, SmallSet) {
    const RatSet a{1, 2, 4};
    const ShiftProductReport r = shift_product_report(a, Scalar(1), Scalar(2));
    EXPECT_EQ(r.K_mul, make_scalar(5, 3));
    EXPECT_EQ(r.K_div, make_scalar(5, 3));
    EXPECT_EQ(r.shifted_product, set_op(affine(a, Scalar(1), Scalar(1)), affine(a, Scalar(1), Scalar(2)), SetOp::prod).size());
    ASSERT_TRUE(r.identity_run);
    EXPECT_TRUE(r.identity.grid_ok);
    EXPECT_THROW(shift_product_report(a, Scalar(0), Scalar(1)), ZeroShift);
    EXPECT_THROW(shift_product_report(RatSet{0, 1}, Scalar(1), Scalar(1)), DivisionByZero);
}

TEST(Suites, Names) {
    for (const char* s : {"exact", "oracle", "incidence", "decomposition", "regularization", "reports"}) {
        EXPECT_STREQ(to_string(suite_from_string(s)), s);
    }
    EXPECT_THROW(suite_from_string("fast"), InvalidArgument);
    EXPECT_THROW(run_suite(SuiteName::exact, {}), InvalidArgument);
}

TEST(Suites, SmallCorpusPasses) {
    for (SuiteName s : {SuiteName::exact, SuiteName::oracle, SuiteName::decomposition, SuiteName::regularization}) {
        const VerifySuiteResult r = run_suite(s, small_exact_corpus());
        EXPECT_TRUE(r.ok()) << to_string(s);
        EXPECT_GT(r.count(Tier::exact, Status::pass), 0u) << to_string(s);
    }
}

TEST(Suites, ReportsAreDeterministic) {
    const auto a = to_json(run_suite(SuiteName::reports, grid_family(2, 4))).dump();
    const auto b = to_json(run_suite(SuiteName::reports, grid_family(2, 4))).dump();
    EXPECT_EQ(a, b);
    EXPECT_NE(a.find("\"schema\":\"spctl-report/1\""), std::string::npos);
}

TEST(Suites, BaselineWarnings) {
    VerifySuiteResult r = run_suite(SuiteName::reports, grid_family(2, 4));
    json low = json::object();
    for (const auto& [k, v] : r.max_ratios()) low[k] = v / 10;
    compare_with_baseline(r, {{"max_ratios", low}});
    EXPECT_EQ(r.warnings.size(), r.max_ratios().size());
}
