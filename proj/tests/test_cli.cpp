#include <gtest/gtest.h>

#include <set>

#include "commands.hpp"

using namespace res2d::cli;

namespace
{

const char *kSpecial = R"({"kind":"special"})";

std::string scenario(const std::string &payload, const std::string &field = R"({"p":5,"precision":20})")
{
    return R"({"field":)" + field + R"(,"payload":)" + payload + "}";
}

// Balanced representative of the first coordinate.
std::string first_value(const json &element) { return element["coords"][0]["value"].get<std::string>(); }

} // namespace

TEST(Cli, ResidueExamples)
{
    auto r = run_scenario("residue", scenario(R"({"form":{"num":[1],"den":[-5,1]},"prime":)" + std::string(kSpecial) + "}"));
    ASSERT_EQ(r.exit_code, 0) << render(r.report);
    // 1/(t-5) = sum 5^k t^(-k-1), so a_(-1) = 1 and the residue at (pi) is -1
    EXPECT_EQ(first_value(r.report["result"]["residue"]), "-1");
    EXPECT_EQ(r.report["result"]["loss"], 0);

    r = run_scenario("residue", scenario(R"({"form":{"num":[1]},"prime":{"kind":"cluster","poly":[0,1]}})"));
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(first_value(r.report["result"]["residue"]), "0");

    // t dt / (t^2 - 5) = (1/2) dP / P
    r = run_scenario("residue",
                     scenario(R"({"form":{"num":[0,1],"den":[-5,0,1]},"prime":{"kind":"cluster","poly":[-5,0,1]}})"));
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(first_value(r.report["result"]["residue"]), "1");
}

TEST(Cli, ReciprocitySingle)
{
    const auto r = run_scenario("reciprocity", scenario(R"({"form":{"num":[1],"den":[-5,1]}})"));
    ASSERT_EQ(r.exit_code, 0) << render(r.report);
    const auto &res = r.report["result"];
    EXPECT_EQ(res["verdict"], "zero");
    std::multiset<std::string> values;
    for (const auto &x : res["residues"]) {
        values.insert(first_value(x["residue"]));
    }
    EXPECT_EQ(values, (std::multiset<std::string>{"1", "-1"}));
}

TEST(Cli, ReciprocityCorpus)
{
    const auto r = run_scenario("reciprocity",
                                R"({"field":{"p":5,"precision":20},"seed":7,"payload":{"corpus":{"count":100,"degree":4}}})");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.report["result"]["passed"], 100);
    EXPECT_EQ(r.report["result"]["failed"], 0);
    EXPECT_EQ(r.report["result"]["cases"].size(), 100u);
}

TEST(Cli, ReciprocityOfExplicitAdele)
{
    const std::string form = R"({"num":[1],"den":[-5,1]})";
    const std::string comps = R"({"adele":{"components":[{"prime":{"kind":"special"},"form":)" + form +
                              R"(},{"prime":{"kind":"cluster","poly":[-5,1]},"form":)" + form + "}]}}";
    auto r = run_scenario("reciprocity", scenario(comps));
    ASSERT_EQ(r.exit_code, 0) << render(r.report);
    EXPECT_EQ(r.report["result"]["verdict"], "zero");

    // dropping the cluster leaves the residue at (pi) alone
    r = run_scenario("reciprocity",
                     scenario(R"({"adele":{"components":[{"prime":{"kind":"special"},"form":)" + form + "}]}}"));
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_EQ(first_value(r.report["result"]["total"]), "-1");
}

TEST(Cli, ReconstructExamples)
{
    auto r = run_scenario("reconstruct",
                          scenario(R"({"form":{"num":[0,1]},"prime":{"kind":"cluster","poly":[-5,1]},"depth":1})"));
    ASSERT_EQ(r.exit_code, 0) << render(r.report);
    const auto &a = r.report["result"]["reconstructed"];
    EXPECT_EQ(first_value(a[0]["coords"][0]), "5");
    EXPECT_EQ(first_value(a[1]["coords"][0]), "1");
    EXPECT_TRUE(r.report["result"]["match"].get<bool>());

    r = run_scenario("reconstruct",
                     scenario(R"({"form":{"num":[0]},"prime":{"kind":"cluster","poly":[-5,1]},"depth":2})"));
    ASSERT_EQ(r.exit_code, 0);
    for (const auto &x : r.report["result"]["reconstructed"]) {
        EXPECT_EQ(first_value(x["coords"][0]), "0");
    }

    r = run_scenario("reconstruct",
                     scenario(R"({"form":{"num":[1]},"prime":{"kind":"cluster","poly":[-5,0,1]},"depth":0})"));
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.report["result"]["match"].get<bool>());

    // a pole at a cluster breaks the setting of the reconstruction
    r = run_scenario("reconstruct",
                     scenario(R"({"form":{"num":[1],"den":[-5,1]},"prime":{"kind":"cluster","poly":[-5,1]}})"));
    EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, WitnessExamples)
{
    const std::string base = R"({"form":{"num":[1],"den":[-5,1]},"depth":2,"grid":{"n_bar":1,"i_bar":3})";
    auto r = run_scenario("witness", scenario(base + "}"));
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_FALSE(r.report["result"]["found"].get<bool>());
    EXPECT_EQ(r.report["result"]["status"], "NoneFound");

    r = run_scenario("witness",
                     scenario(base + R"(,"perturb":[{"prime":{"kind":"cluster","poly":[-5,1]},"index":0,"delta":1}]})"));
    ASSERT_EQ(r.exit_code, 0);
    const auto &w = r.report["result"]["witness"];
    EXPECT_EQ(w["n"], 0);
    EXPECT_EQ(w["i"], 1);
    EXPECT_EQ(w["m"], 0);

    r = run_scenario("witness", scenario(R"({"adele":{"components":[]},"grid":{"n_bar":2,"i_bar":2}})"));
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_FALSE(r.report["result"]["found"].get<bool>());
}

TEST(Cli, WeierstrassAndExpand)
{
    auto r = run_scenario("weierstrass", scenario(R"({"series":[10,5,1,3,7,1]})", R"({"p":5,"tmax":12})"));
    ASSERT_EQ(r.exit_code, 0) << render(r.report);
    EXPECT_EQ(r.report["result"]["pi_power"], 0);
    EXPECT_EQ(r.report["result"]["distinguished"].size(), 3u);
    EXPECT_TRUE(r.report["result"]["roundtrip"]["ok"].get<bool>());

    r = run_scenario("weierstrass", scenario(R"({"series":[1,2,3],"exact":true,"divisor":[5,1]})"));
    ASSERT_EQ(r.exit_code, 0);
    // 1 + 2t + 3t^2 at t = -5
    EXPECT_EQ(first_value(r.report["result"]["remainder"][0]), "66");

    r = run_scenario("expand", scenario(R"({"function":{"num":[1],"den":[-5,1]},"prime":{"kind":"special"},"n_min":-3,"n_max":1})"));
    ASSERT_EQ(r.exit_code, 0);
    const auto &terms = r.report["result"]["expansion"]["terms"];
    ASSERT_EQ(terms.size(), 4u);
    EXPECT_EQ(first_value(terms[0]["coeff"]), "25");
    EXPECT_EQ(first_value(terms[2]["coeff"]), "1");
    EXPECT_EQ(first_value(terms[3]["coeff"]), "0");
}

TEST(Cli, ExitCodes)
{
    // 0: verdict zero, 1: violation
    EXPECT_EQ(run_scenario("reciprocity", scenario(R"({"form":{"num":[1],"den":[-5,1]}})")).exit_code, 0);
    EXPECT_EQ(run_scenario("reciprocity",
                           scenario(R"({"form":{"num":[1],"den":[-5,1]},"perturb":[{"prime":)" + std::string(kSpecial) +
                                    R"(,"index":-1,"delta":1}]})"))
                  .exit_code,
              1);
    // 2: schema and input errors
    EXPECT_EQ(run_scenario("reciprocity", scenario(R"({"form":{"num":[1],"den":[0]}})")).exit_code, 2);
    EXPECT_EQ(run_scenario("reciprocity", "not json").exit_code, 2);
    EXPECT_EQ(run_scenario("reciprocity", R"({"payload":{}})").exit_code, 2);
    EXPECT_EQ(run_scenario("reciprocity", scenario(R"({"form":{"num":[1]}})", R"({"p":6})")).exit_code, 2);
    EXPECT_EQ(run_scenario("residue", scenario(R"({"form":{"num":[1]},"prime":{"kind":"other"}})")).exit_code, 2);
    EXPECT_EQ(run_scenario("residue", scenario(R"({"form":{"num":["x"]},"prime":{"kind":"special"}})")).exit_code, 2);
    EXPECT_EQ(run_scenario("residue", scenario(R"({"form":{"num":[1]},"prime":{"kind":"cluster","poly":[0,0,1]}})"))
                  .exit_code,
              2);
    EXPECT_EQ(run_scenario("frobnicate", scenario("{}")).exit_code, 2);
    EXPECT_EQ(run_scenario("expand", R"({"command":"residue","field":{"p":5},"payload":{}})").exit_code, 2);
    EXPECT_EQ(run_scenario("reciprocity", scenario(R"({"form":{"num":[1]}})"), Overrides{{}, {}, {}, 5}).exit_code,
              2);
    // 3: arithmetic errors
    const auto z = run_scenario("weierstrass", scenario(R"({"series":[0,0,0,1]})", R"({"p":5,"tmax":3})"));
    EXPECT_EQ(z.exit_code, 3);
    EXPECT_EQ(z.report["error"]["kind"], "ZeroAtPrecision");
}

TEST(Cli, ReportEchoAndDeterminism)
{
    const std::string s = R"({"field":{"p":3},"seed":11,"payload":{"corpus":{"count":5,"degree":3,"pi_lo":-1,"pi_hi":1}}})";
    const auto a = run_scenario("reciprocity", s);
    const auto b = run_scenario("reciprocity", s);
    EXPECT_EQ(render(a.report), render(b.report));
    EXPECT_EQ(a.report["version"], res2d::kVersion);
    const auto &echo = a.report["scenario"];
    EXPECT_EQ(echo["field"]["precision"], 20);
    EXPECT_EQ(echo["field"]["tmax"], 32);
    EXPECT_EQ(echo["command"], "reciprocity");

    // the echo alone reproduces the run, overrides included
    const auto o = run_scenario("reciprocity", s, Overrides{30, {}, 4, 3});
    EXPECT_EQ(o.report["scenario"]["seed"], 4);
    EXPECT_EQ(o.report["result"]["count"], 3);
    const auto again = run_scenario("reciprocity", o.report["scenario"].dump());
    EXPECT_EQ(render(o.report), render(again.report));
}
