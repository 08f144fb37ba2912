#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "heatbound/scenario.hpp"

using namespace heatbound;

namespace {

std::string body_without_header(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line, body;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            first = false;  // timestamped header line
            continue;
        }
        body += line;
        body += '\n';
    }
    return body;
}

}  // namespace

TEST_CASE("scenario schema validation") {
    CHECK_THROWS_AS(Scenario::from_json(nlohmann::json::parse("[1,2]")), SchemaError);
    CHECK_THROWS_AS(Scenario::from_json(nlohmann::json::parse(R"({"checks": []})")), SchemaError);
    CHECK_THROWS_AS(Scenario::from_json(nlohmann::json::parse(
                        R"({"domain": {"shape": "disc", "params": {"radius": 1}},
                            "checks": ["not-a-check"]})")),
                    SchemaError);
    CHECK_THROWS_AS(Scenario::from_json(nlohmann::json::parse(
                        R"({"domain": {"shape": "disc", "params": {"radius": 1}},
                            "pairs": {"count": 5},
                            "checks": ["metric-identity"]})")),
                    SchemaError);
    CHECK_THROWS_AS(Scenario::from_file("/nonexistent/path.json"), SchemaError);
}

TEST_CASE("bundled scenarios parse and the catalog lists them") {
    for (const auto& [name, text] : bundled_scenarios()) {
        const Scenario s = Scenario::from_json(nlohmann::json::parse(text));
        CHECK(s.name == name);
    }
    const std::string catalog = catalog_text();
    CHECK(catalog.find("horseshoe") != std::string::npos);
    CHECK(catalog.find("sharpness-m2") != std::string::npos);
    CHECK(catalog == catalog_text());  // stable ordering
}

TEST_CASE("convex-identity scenario passes and is byte-reproducible") {
    const Scenario s =
        Scenario::from_json(nlohmann::json::parse(bundled_scenarios().at("convex-identity")));
    RunOptions opt;
    opt.out_dir = "scenario_out_a";
    const ScenarioResult a = run_scenario(s, opt);
    CHECK(a.exit_code == 0);
    REQUIRE(a.checks.size() == 1);
    CHECK(a.checks[0].pass);

    opt.out_dir = "scenario_out_b";
    const ScenarioResult b = run_scenario(s, opt);
    CHECK(body_without_header("scenario_out_a/convex-identity.csv") ==
          body_without_header("scenario_out_b/convex-identity.csv"));
    std::filesystem::remove_all("scenario_out_a");
    std::filesystem::remove_all("scenario_out_b");
}

TEST_CASE("small sandwich scenario end to end") {
    const auto j = nlohmann::json::parse(R"({
        "name": "mini-sandwich",
        "domain": {"shape": "horseshoe", "params": {"r_in": 1.0, "r_out": 2.0, "opening_angle": 0.3}},
        "grid": {"resolution": 40},
        "m": 2,
        "beta_multipliers": [4, 20],
        "pairs": {"count": 6, "seed": 99, "close_pairs": 2, "tip_pairs": 1},
        "checks": ["sandwich", "cor410iii"],
        "outputs": {"csv": "mini.csv"}
    })");
    RunOptions opt;
    opt.out_dir = "scenario_out_mini";
    opt.threads = 2;
    const ScenarioResult r = run_scenario(Scenario::from_json(j), opt);
    CHECK(r.exit_code == 0);
    REQUIRE(r.checks.size() == 2);
    CHECK(r.checks[0].pass);
    CHECK(r.checks[1].pass);
    const std::string body = body_without_header("scenario_out_mini/mini.csv");
    CHECK(body.find("horseshoe(1,2,0.3)") != std::string::npos);
    // column header row
    CHECK(body.find("domain,m,beta,x1,x2,y1,y2,d0,dg_lower,dg_upper,dmb_lower,"
                    "sandwich_factor,pass") != std::string::npos);
    std::filesystem::remove_all("scenario_out_mini");
}

TEST_CASE("eigensolver budget surfaces as a budget error") {
    const auto j = nlohmann::json::parse(R"({
        "name": "too-big",
        "domain": {"shape": "square", "params": {"side": 2.0}},
        "grid": {"h": 0.02},
        "m": 1,
        "checks": ["spectrum-export"]
    })");
    RunOptions opt;
    opt.out_dir = "scenario_out_big";
    CHECK_THROWS_AS(run_scenario(Scenario::from_json(j), opt), BudgetError);
    std::filesystem::remove_all("scenario_out_big");
}

TEST_CASE("spectrum export writes the documented schema") {
    const auto j = nlohmann::json::parse(R"({
        "name": "spectrum",
        "domain": {"shape": "interval", "params": {"a": 0.0, "b": 1.0}},
        "grid": {"h": 0.02},
        "m": 2,
        "checks": ["spectrum-export"]
    })");
    RunOptions opt;
    opt.out_dir = "scenario_out_spec";
    const ScenarioResult r = run_scenario(Scenario::from_json(j), opt);
    CHECK(r.exit_code == 0);
    std::ifstream in("scenario_out_spec/spectrum_spectrum.json");
    REQUIRE(in.good());
    nlohmann::json out;
    in >> out;
    CHECK(out.contains("eigenvalues"));
    CHECK(out["m"] == 2);
    CHECK(out["N"] == 1);
    std::filesystem::remove_all("scenario_out_spec");
}
