#include "sumident/io.hpp"
#include "sumident/sweep.hpp"

#include <gtest/gtest.h>

using namespace sumident;

TEST(ParseList, Forms) {
    const auto xs = parse_rational_list("1,2/3,0.5,-4", "xs");
    ASSERT_EQ(xs.size(), 4u);
    EXPECT_EQ(xs[1], Rational(2, 3));
    EXPECT_EQ(xs[2], Rational(1, 2));
    EXPECT_EQ(xs[3], Rational(-4));
    try {
        parse_rational_list("1,x7,3", "lambda");
        FAIL() << "expected UsageError";
    } catch (const UsageError& e) {
        EXPECT_NE(std::string(e.what()).find("'x7'"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("--lambda"), std::string::npos);
    }
    EXPECT_THROW(parse_rational_list("1,,2", "xs"), UsageError);
    EXPECT_THROW(parse_rational_list("", "xs"), UsageError);
}

TEST(Csv, EscapingAndHeader) {
    EXPECT_EQ(csv_escape("plain"), "plain");
    EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
    const auto text = reports_csv({verify_stirling_explicit(2, 3)});
    EXPECT_EQ(text, "identity,params,verdict,abs_gap,J\nstirling,\"{\"\"m\"\":2,\"\"n\"\":3}\",pass,0,\n");
    EXPECT_EQ(reports_csv({}), "identity,params,verdict,abs_gap,J\n");
}

TEST(DensityJson, Families) {
    const RateParams rates({Rational(1), Rational(2)});
    const auto e = density_json(rates, hypoexp_density(rates));
    EXPECT_EQ(e["family"], "exp");
    EXPECT_EQ(e["atoms"][1]["weight"], "-2");

    const UniformParams a({Rational(1), Rational(2)});
    const auto u = density_json(a, general_uniform_density(a));
    EXPECT_EQ(u["family"], "uniform");
    EXPECT_EQ(u["pieces"].size(), 3u);
    EXPECT_EQ(u["pieces"][0]["coefficients"][1], "1/2");

    const GammaParams g{{Rational(1), Rational(1)}, {Rational(1), Rational(2)}};
    const auto s = density_json(g, gamma_series(g, 1e-6, 100));
    EXPECT_EQ(s["family"], "gamma");
    EXPECT_EQ(s["series"]["rho"], "1/2");
    EXPECT_EQ(s["series"]["deltas"][2], "1/4");
}

TEST(SweepConfig, GridExpansionOrder) {
    const auto config = parse_sweep_config(Json::parse(R"({
        "runs": [{"identity": "stirling", "grid": {"m": {"from": 0, "to": 2}, "n": [1, 2]}}]
    })"));
    ASSERT_EQ(config.points.size(), 6u);
    // Last axis fastest: (m,n) = (0,1), (0,2), (1,1), ...
    EXPECT_EQ(*config.points[0].args.m, 0u);
    EXPECT_EQ(*config.points[0].args.n, 1u);
    EXPECT_EQ(*config.points[1].args.n, 2u);
    EXPECT_EQ(*config.points[2].args.m, 1u);
    EXPECT_EQ(config.verify.mode, Mode::exact);
}

TEST(SweepConfig, ListOfGridsConcatenates) {
    const auto config = parse_sweep_config(Json::parse(R"({
        "mode": "float", "tolerance": 1e-7,
        "runs": [{"identity": "gamma-mean", "grid": [
            {"alpha": [["1", "2"]], "beta": [["1", "3"]]},
            {"alpha": [["1"]], "beta": [["2"], ["1/2"]]}
        ]}]
    })"));
    ASSERT_EQ(config.points.size(), 3u);
    EXPECT_EQ(config.verify.mode, Mode::floating);
    EXPECT_EQ(config.verify.tolerance, 1e-7);
    EXPECT_EQ((*config.points[2].args.beta)[0], Rational(1, 2));
}

TEST(SweepConfig, Rejections) {
    for (const char* bad : {
             R"([])",
             R"({})",
             R"({"runs": []})",
             R"({"runs": [{"identity": "nope", "grid": {"m": [1]}}]})",
             R"({"runs": [{"identity": "good"}]})",
             R"({"runs": [{"identity": "good", "grid": {"xs": []}}]})",
             R"({"runs": [{"identity": "good", "grid": {}}]})",
             R"({"runs": [{"identity": "good", "grid": []}]})",
             R"({"runs": [{"identity": "good", "grid": {"ys": [["1"]]}}]})",
             R"({"runs": [{"identity": "stirling", "grid": {"m": [-1], "n": [1]}}]})",
             R"({"runs": [{"identity": "good", "grid": {"xs": [["1", "q"]]}}]})",
             R"({"mode": "fuzzy", "runs": [{"identity": "stirling", "grid": {"m": [1], "n": [1]}}]})",
         }) {
        EXPECT_THROW(parse_sweep_config(Json::parse(bad)), std::invalid_argument) << bad;
    }
}

TEST(Sweep, RunsInGridOrderAndDeterministic) {
    const auto config = parse_sweep_config(Json::parse(R"({
        "runs": [
            {"identity": "good", "grid": {"xs": [["1", "2"], ["1", "2", "3"]]}},
            {"identity": "stirling", "grid": {"m": {"from": 0, "to": 4}, "n": [2, 3]}},
            {"identity": "gamma-moment", "grid": {"alpha": [["1", "2"]], "beta": [["1", "3"]], "m": [1, 2, 3]}}
        ]
    })"));
    const auto a = run_sweep(config);
    const auto b = run_sweep(config);
    ASSERT_EQ(a.size(), 15u);
    EXPECT_EQ(a[0].identity, "good");
    EXPECT_EQ(a[2].identity, "stirling");
    EXPECT_EQ(a[14].identity, "gamma-moment");
    for (const auto& r : a) EXPECT_TRUE(r.ok()) << to_json(r).dump();
    EXPECT_EQ(reports_json(a), reports_json(b));
    EXPECT_EQ(reports_csv(a), reports_csv(b));
}

TEST(Sweep, PerturbedRowFailsOthersPass) {
    const auto config = parse_sweep_config(Json::parse(R"({
        "runs": [
            {"identity": "stirling", "grid": {"m": [2], "n": [3]}},
            {"identity": "stirling", "grid": {"m": [2], "n": [3]}, "perturb_rhs": "1/1000"}
        ]
    })"));
    const auto reports = run_sweep(config);
    EXPECT_EQ(reports[0].verdict, Verdict::pass);
    EXPECT_EQ(reports[1].verdict, Verdict::fail);
}

TEST(Sweep, InvalidPointIsUsageError) {
    const auto config = parse_sweep_config(Json::parse(R"({
        "runs": [{"identity": "good", "grid": {"xs": [["1", "2"], ["3", "3"]]}}]
    })"));
    EXPECT_THROW(run_sweep(config), UsageError);
}
