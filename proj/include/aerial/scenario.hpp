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

#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aerial/montecarlo.hpp"
#include "aerial/performance.hpp"

// Scenario files: a subset of TOML (comments, [table], [[array-of-tables]],
// key = value with strings, numbers, booleans and possibly nested arrays).
// Dotted keys, inline tables and dates are not supported.

namespace aerial
{

namespace toml
{

struct Value;
using Array = std::vector<Value>;

struct Value
{
    std::variant<double, bool, std::string, Array> data;
    int line = 0;
    int column = 0;

    bool is_number() const { return std::holds_alternative<double>(data); }
    bool is_bool() const { return std::holds_alternative<bool>(data); }
    bool is_string() const { return std::holds_alternative<std::string>(data); }
    bool is_array() const { return std::holds_alternative<Array>(data); }

    /// Accessors throw ParseError at the value's position on a type mismatch.
    double number() const;
    long long integer() const;
    bool boolean() const;
    const std::string & string() const;
    const Array & array() const;
};

struct Table
{
    std::string name;  ///< empty for the root table
    int line = 0;
    std::vector<std::pair<std::string, Value>> entries;

    const Value * find(std::string_view key) const;
    /// Throws ParseError at the table header when the key is missing.
    const Value & at(std::string_view key) const;
    /// Throws ParseError at the first key not in `allowed`.
    void expect_keys(std::initializer_list<std::string_view> allowed) const;
};

struct Document
{
    Table root;
    std::map<std::string, Table> tables;
    std::map<std::string, std::vector<Table>> arrays;

    const Table * table(std::string_view name) const;
    /// Throws ParseError at the first table name not in `allowed`.
    void expect_tables(std::initializer_list<std::string_view> allowed) const;
};

Document parse(std::string_view text);

}  // namespace toml

inline constexpr int scenario_schema_version = 1;

/// Everything a scenario file fixes: the network, the association rule and
/// the numerical settings for analysis and simulation.
struct Scenario
{
    std::string name;
    NetworkConfig network;
    AssociationRule rule;
    EvaluationSettings settings;
    SimSpec simulation;
};

/// Syntax, schema and type errors raise ParseError; invariant violations are
/// left to validate().
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string & path);

std::string read_file(const std::string & path);

/// Canonical text of every input that affects results, in fixed order.
std::string canonical_text(const Scenario & scenario);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text);

}  // namespace aerial
