// SPDX-License-Identifier: Apache-2.0
//
// aerial: analysis and simulation of multi-layer aerial networks
// Copyright (C) 2026 The aerial authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <string>

#include "aerial/scenario.hpp"

using namespace aerial;

namespace
{

const std::string minimal = R"(schema_version = 1
[[layers]]
altitude = 0
density_rx = 1e-5
[[layers]]
altitude = 100
density_tx = 1e-5
[association]
rule = "rs"
[targets]
beta = 0.7
)";

/// Line and column of the ParseError raised by `text`, or (0, 0).
std::pair<int, int> error_at(const std::string & text)
{
    try
    {
        parse_scenario(text);
    }
    catch (const ParseError & e)
    {
        return {e.line(), e.column()};
    }
    return {0, 0};
}

std::string error_text(const std::string & text)
{
    try
    {
        parse_scenario(text);
    }
    catch (const ParseError & e)
    {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("TOML subset")
{
    const auto doc = toml::parse(R"(# comment
a = 1_000.5   # trailing
b = "x\ty\"z"
"quoted key" = true
c = [1, [2, 3],
     4,]
d = -inf
e = +2e-3
[t]
x = false
[[arr]]
y = 1
[[arr]]
y = 2
)");
    CHECK(doc.root.at("a").number() == 1000.5);
    CHECK(doc.root.at("b").string() == "x\ty\"z");
    CHECK(doc.root.at("quoted key").boolean());
    const auto & c = doc.root.at("c").array();
    REQUIRE(c.size() == 3);
    CHECK(c[1].array()[1].number() == 3.0);
    CHECK(std::isinf(doc.root.at("d").number()));
    CHECK(doc.root.at("e").number() == 2e-3);
    CHECK(doc.table("t")->at("x").boolean() == false);
    CHECK(doc.arrays.at("arr").size() == 2);
    CHECK(doc.arrays.at("arr")[1].at("y").integer() == 2);
    CHECK(doc.root.at("b").line == 3);
    CHECK(doc.root.at("b").column == 5);
}

TEST_CASE("TOML errors carry line and column")
{
    auto where = [](const std::string & text) {
        try
        {
            toml::parse(text);
        }
        catch (const ParseError & e)
        {
            return std::pair{e.line(), e.column()};
        }
        return std::pair{0, 0};
    };
    CHECK(where("a = 1\na = 2\n") == std::pair{2, 1});
    CHECK(where("a = 1\nb = \"open\n") == std::pair{2, 5});
    CHECK(where("x.y = 1\n").first == 1);
    CHECK(where("[t]\n[t]\n").first == 2);
    CHECK(where("a = 1__0\n") == std::pair{1, 5});
    CHECK(where("a = [1, 2\n").first >= 1);
    CHECK(where("a = nope\n") == std::pair{1, 5});
    CHECK(where("a\n").first == 1);
}

TEST_CASE("minimal scenario")
{
    const Scenario s = parse_scenario(minimal);
    REQUIRE(s.network.layers.size() == 2);
    CHECK(s.network.layers[1].altitude == 100.0);
    CHECK(s.network.layers[1].density_tx == 1e-5);
    CHECK(s.network.layers[0].power == 1.0);
    CHECK(s.network.layers[0].name == "layer0");
    CHECK(s.rule == AssociationRule{Orientation::receiver, Criterion::strongest});
    CHECK(s.network.target_sinr.rows() == 2);
    CHECK((s.network.target_sinr.array() == 0.7).all());
    CHECK(s.network.environment.iota == 12.0910);
    CHECK(s.network.los_model == LosModel::approximate);
    CHECK(s.simulation.trials == 10000);
    CHECK_NOTHROW(validate(s.network));
}

TEST_CASE("scenario schema errors")
{
    CHECK(error_at(minimal + "[environment]\nmu = 0.5\nwidth = 3\n") == std::pair{14, 1});
    CHECK(error_text(minimal + "[environment]\nwidth = 3\n").find("unknown key 'width'") != std::string::npos);
    CHECK(error_text(minimal + "[weather]\n").find("unknown table [weather]") != std::string::npos);
    CHECK(error_text("schema_version = 2\n").find("unsupported schema_version") != std::string::npos);
    CHECK(error_text("name = \"x\"\n").find("missing key 'schema_version'") != std::string::npos);

    std::string text = minimal;
    text.replace(text.find("altitude = 100"), 14, "altitude = \"high\"");
    CHECK(error_at(text) == std::pair{6, 12});

    text = minimal;
    text.replace(text.find("rule = \"rs\""), 11, "rule = \"rz\"");
    CHECK(error_text(text).find("rule must be one of") != std::string::npos);

    CHECK(error_text(minimal + "[numerics]\nseries_terms = 2.5\n").find("expected") != std::string::npos);
    CHECK(error_text(minimal + "[simulation]\nseed = -1\n").find("seed must be non-negative") != std::string::npos);
}

TEST_CASE("association by orientation and criterion")
{
    std::string text = minimal;
    text.replace(text.find("rule = \"rs\""), 11, "orientation = \"transmitter\"\ncriterion = \"nearest\"");
    CHECK(parse_scenario(text).rule == AssociationRule{Orientation::transmitter, Criterion::nearest});
    text = minimal;
    text.replace(text.find("rule = \"rs\""), 11, "rule = \"rs\"\ncriterion = \"nearest\"");
    CHECK(error_text(text).find("give either rule or orientation/criterion") != std::string::npos);
}

TEST_CASE("target SINR matrix")
{
    std::string text = minimal;
    text.replace(text.find("beta = 0.7"), 10, "beta_matrix = [[0.5, 0.7],\n               [1.0, 2.0]]");
    const Scenario s = parse_scenario(text);
    CHECK(s.network.target_sinr(0, 1) == 0.7);
    CHECK(s.network.target_sinr(1, 0) == 1.0);

    text = minimal;
    text.replace(text.find("beta = 0.7"), 10, "beta_matrix = [[0.5, 0.7]]");
    CHECK(error_text(text).find("one row per layer") != std::string::npos);
    text = minimal;
    text.replace(text.find("beta = 0.7"), 10, "beta_matrix = [[0.5, 0.7], [1.0]]");
    CHECK(error_text(text).find("one column per layer") != std::string::npos);
    text = minimal;
    text.replace(text.find("beta = 0.7"), 10, "beta = 0.7\nbeta_matrix = [[0.5, 0.7], [1.0, 2.0]]");
    CHECK(error_text(text).find("either beta or beta_matrix") != std::string::npos);
}

TEST_CASE("invariants are left to validation")
{
    std::string text = minimal;
    text += "[pathloss]\nalpha_los = 1.5\nalpha_nlos = 3.5\n";
    const Scenario s = parse_scenario(text);
    CHECK_THROWS_AS(validate(s.network), ValidationError);
}

TEST_CASE("settings hash follows every result-relevant input")
{
    const Scenario a = parse_scenario(minimal);
    const Scenario b = parse_scenario("# a comment changes nothing\n" + minimal);
    CHECK(canonical_text(a) == canonical_text(b));
    std::string text = minimal;
    text.replace(text.find("beta = 0.7"), 10, "beta = 0.8");
    CHECK(fnv1a(canonical_text(parse_scenario(text))) != fnv1a(canonical_text(a)));
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("shipped scenarios parse and validate")
{
    int count = 0;
    for (const auto & entry : std::filesystem::directory_iterator(AERIAL_SCENARIOS))
    {
        if (entry.path().extension() != ".toml")
            continue;
        INFO(entry.path().string());
        const Scenario s = load_scenario(entry.path().string());
        CHECK_NOTHROW(validate(s.network));
        ++count;
    }
    CHECK(count >= 8);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.toml"), Error);
}
