// Copyright 2026 The Ontoscope Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ontoscope/audit.hpp"
#include "ontoscope/errors.hpp"
#include "ontoscope/models.hpp"
#include "ontoscope/serialization.hpp"
#include "test_support.hpp"

using namespace ontoscope;
using ontoscope::testing::zx_scenario;

namespace {

/// Writes content to a unique temp file and returns the path.
std::string temp_file(const std::string& tag, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() /
                      ("ontoscope_serialization_" + tag + ".json");
    io::write_text_file(path.string(), content);
    return path.string();
}

} // namespace

TEST_CASE("doubles survive a text round trip unchanged") {
    for (const double value : {0.1, 1.0 / 3.0, 0.5, 1e-17, 2.0, 0.0,
                               0.7071067811865476, 123456.789}) {
        CHECK(std::stod(io::format_double(value)) == value);
    }
}

TEST_CASE("scenario files round trip through JSON") {
    io::ScenarioFile file{zx_scenario(512), std::string("z"), {"z", "x"}};
    const auto j = io::scenario_to_json(file);
    const auto back = io::scenario_from_json(j);

    CHECK(back.scenario.dim() == 2);
    CHECK(back.scenario.grid_size() == 512);
    CHECK(back.scenario.labels() == file.scenario.labels());
    REQUIRE(back.preparation.has_value());
    CHECK(*back.preparation == "z");
    CHECK(back.observable == std::vector<std::string>{"z", "x"});
    // Reparsing snaps each state back to unit norm, which can move an
    // amplitude by an ulp when the stored norm is not exactly 1.
    for (const auto& label : file.scenario.labels()) {
        const auto& want = file.scenario.state(label).amplitudes();
        const auto& got = back.scenario.state(label).amplitudes();
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(std::abs(got[i] - want[i]) <= 1e-15);
        }
    }

    const auto overridden = io::scenario_from_json(j, 4096);
    CHECK(overridden.scenario.grid_size() == 4096);
}

TEST_CASE("scenario parsing rejects malformed structure") {
    using nlohmann::json;
    const json good = io::scenario_to_json(io::ScenarioFile{zx_scenario(), {}, {}});

    auto mutate = [&](auto&& f) {
        json j = good;
        f(j);
        return j;
    };

    CHECK_THROWS_AS(io::scenario_from_json(json::array()), ValidationError);
    CHECK_THROWS_AS(io::scenario_from_json(mutate([](json& j) { j.erase("dim"); })),
                    ValidationError);
    CHECK_THROWS_AS(io::scenario_from_json(mutate([](json& j) { j["dim"] = "two"; })),
                    ValidationError);
    CHECK_THROWS_AS(io::scenario_from_json(mutate([](json& j) { j.erase("states"); })),
                    ValidationError);
    CHECK_THROWS_AS(
        io::scenario_from_json(mutate([](json& j) { j["states"][0].erase("label"); })),
        ValidationError);
    CHECK_THROWS_AS(io::scenario_from_json(mutate(
                        [](json& j) { j["states"][0]["amplitudes"][0] = 1.0; })),
                    ValidationError);
    // Norm slack is 1e-6: a 1e-3 deficit must be rejected, not snapped.
    CHECK_THROWS_AS(io::scenario_from_json(mutate([](json& j) {
                        j["states"][0]["amplitudes"] = {{0.999, 0.0}, {0.0, 0.0}};
                    })),
                    ValidationError);
    CHECK_THROWS_AS(io::scenario_from_json(mutate(
                        [](json& j) { j["preparation"] = "missing"; })),
                    ValidationError);
    CHECK_THROWS_AS(io::scenario_from_json(mutate(
                        [](json& j) { j["observable"] = {"z", "missing"}; })),
                    ValidationError);
}

TEST_CASE("slightly denormalized states are snapped to unit norm") {
    nlohmann::json j;
    j["dim"] = 2;
    j["states"] = {{{"label", "s"}, {"amplitudes", {{1.0 + 1e-8, 0.0}, {0.0, 0.0}}}}};
    const auto file = io::scenario_from_json(j);
    CHECK(file.scenario.state("s").amplitudes()[0].real() == 1.0);
}

TEST_CASE("parse errors carry the line and column of the defect") {
    const auto path = temp_file("broken", "{\n  \"dim\": 2,\n  \"states\": [!]\n}\n");
    try {
        io::parse_json_file(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() > 1);
    }
    std::remove(path.c_str());
    CHECK_THROWS_AS(io::parse_json_file("/nonexistent/ontoscope.json"), ParseError);
}

TEST_CASE("support patterns expand from index lists") {
    nlohmann::json j;
    j["allowed_support"] = {{0, 2}, {1}};
    j["required_core"] = {{0}, {1}};
    j["n_points"] = 3;

    const auto spec = io::pattern_from_json(j);
    REQUIRE(spec.n_points.has_value());
    CHECK(*spec.n_points == 3);

    const auto pattern = io::expand_pattern(spec, 2, 3);
    CHECK(pattern.allowed_support[0] == std::vector<bool>{true, false, true});
    CHECK(pattern.allowed_support[1] == std::vector<bool>{false, true, false});
    CHECK(pattern.required_core[0] == std::vector<bool>{true, false, false});
    CHECK_NOTHROW(pattern.validate(2, 3));

    // Out-of-range indices surface at expansion.
    CHECK_THROWS_AS(io::expand_pattern(spec, 2, 2), ValidationError);

    const auto round = io::pattern_from_json(io::pattern_to_json(pattern));
    CHECK(round.allowed_support == spec.allowed_support);
    CHECK(round.required_core == spec.required_core);
}

TEST_CASE("models round trip through JSON with their audits intact") {
    SUBCASE("atomic model") {
        const auto scenario = zx_scenario();
        const auto model = models::build_bb_ontic(scenario);
        const auto j = io::model_to_json(model);
        CHECK(j["kind"] == "atomic");
        const auto back = io::model_from_json(j);

        CHECK(back.dim() == model.dim());
        // JSON objects do not preserve insertion order, so the label set
        // survives the trip while the ordering may not.
        auto got_labels = back.labels();
        auto want_labels = model.labels();
        std::sort(got_labels.begin(), got_labels.end());
        std::sort(want_labels.begin(), want_labels.end());
        CHECK(got_labels == want_labels);
        for (const auto& psi : model.labels()) {
            for (const auto& phi : model.labels()) {
                CHECK(back.predicted_probability(psi, phi) ==
                      model.predicted_probability(psi, phi));
            }
        }
        const auto report = audit::classify(back, scenario);
        CHECK(report.classification == audit::Classification::psi_ontic);
    }
    SUBCASE("grid model") {
        models::Scenario scenario(2, {{"z", testing::basis_state(2, 0)}}, 200);
        const auto model = models::build_ks_qubit(scenario);
        const auto j = io::model_to_json(model);
        CHECK(j["kind"] == "grid");
        const auto back = io::model_from_json(j);
        CHECK(back.space()->kind() == ontic::OnticSpace::Kind::grid);
        CHECK(back.space()->size() == 200);
        CHECK(back.predicted_probability("z", "z") ==
              doctest::Approx(model.predicted_probability("z", "z")).epsilon(1e-12));
    }
    SUBCASE("atomic weights must be unit") {
        const auto j = nlohmann::json{{"kind", "atomic"},
                                      {"dim", 2},
                                      {"points", {"a", "b"}},
                                      {"weights", {1.0, 2.0}},
                                      {"preparations", {{"s", {1.0, 0.0}}}},
                                      {"responses", {{"s", {1.0, 0.0}}}}};
        CHECK_THROWS_AS(io::model_from_json(j), ValidationError);
    }
    SUBCASE("unknown kinds are rejected") {
        const auto j = nlohmann::json{{"kind", "continuum"}, {"dim", 2}};
        CHECK_THROWS_AS(io::model_from_json(j), ValidationError);
    }
    SUBCASE("custom tolerances are applied") {
        const auto scenario = zx_scenario();
        const auto j = io::model_to_json(models::build_bb_ontic(scenario));
        const auto model =
            io::model_from_json(j, ontic::ToleranceConfig{0.7, 0.2, 1e-10});
        CHECK(model.tolerances().eps_support == 0.7);
    }
}

TEST_CASE("reports serialize with a stable schema") {
    const auto scenario = testing::mixed_toy_scenario();
    const auto report = audit::classify(testing::mixed_toy_model(), scenario);
    const auto j = io::report_to_json(report);

    CHECK(j["model"] == "mixed-toy");
    CHECK(j["dim"] == 2);
    CHECK(j["classification"] == "mixed");
    CHECK(j["flags"]["certainty_all"] == true);
    CHECK(j["flags"]["classification_consistent"] == true);
    CHECK(j["bound_constant"] == 0.0);
    CHECK(j["omega_d_bound"] == 1.0);
    CHECK(j["tolerances"]["eps_residual"].get<double>() == 1e-10);
    CHECK(j["notes"].is_array());
    REQUIRE(j["pairs"].is_array());
    REQUIRE(j["pairs"].size() == 6);
    for (const char* key : {"psi", "phi", "i_q", "omega", "i_ont", "born_residual",
                            "decomposition_residual", "identity_residual", "lambda_r_size"}) {
        CHECK(j["pairs"][0].contains(key));
    }

    // Undefined omega entries must be JSON null, not omitted or zeroed.
    models::Scenario ortho(
        2, {{"z", testing::basis_state(2, 0)}, {"zbar", testing::basis_state(2, 1)}});
    const auto null_report = audit::classify(models::build_bb_ontic(ortho), ortho);
    const auto null_json = io::report_to_json(null_report);
    CHECK(null_json["pairs"][0]["omega"].is_null());
    CHECK(null_json["pairs"][0]["identity_residual"].is_null());
}

TEST_CASE("report CSV has the documented columns and blank undefined cells") {
    models::Scenario ortho(
        2, {{"z", testing::basis_state(2, 0)}, {"zbar", testing::basis_state(2, 1)}});
    const auto report = audit::classify(models::build_bb_ontic(ortho), ortho);
    const std::string csv = io::report_to_csv(report);

    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "psi,phi,i_q,omega,i_ont,born_residual,decomposition_residual,"
                    "identity_residual,lambda_r_size");
    std::string row;
    std::getline(lines, row);
    // omega and identity_residual are blank for the orthogonal pair.
    CHECK(row.find(",,") != std::string::npos);
    CHECK(row.substr(0, 7) == "z,zbar,");

    int rows = 1;
    while (std::getline(lines, row)) ++rows;
    CHECK(rows == 2);
}

TEST_CASE("serialization is deterministic across repeated audits") {
    const auto scenario = zx_scenario();
    const auto first = io::report_to_json(
        audit::classify(models::build_bb_ontic(scenario), scenario));
    const auto second = io::report_to_json(
        audit::classify(models::build_bb_ontic(scenario), scenario));
    CHECK(first.dump(2) == second.dump(2));
}
