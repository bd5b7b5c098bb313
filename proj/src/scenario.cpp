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

#include "aerial/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace aerial
{

namespace toml
{

namespace
{

bool bare_key_char(char c)
{
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '-';
}

bool token_char(char c) { return bare_key_char(c) || c == '+' || c == '.'; }

class Parser
{
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    Document run()
    {
        Document doc;
        Table * current = &doc.root;
        while (true)
        {
            skip_blank();
            if (at_end())
                break;
            if (peek() == '#')
            {
                skip_comment();
                continue;
            }
            if (peek() == '\n')
            {
                advance();
                continue;
            }
            if (peek() == '[')
                current = header(doc);
            else
                entry(*current);
            end_of_line();
        }
        return doc;
    }

  private:
    [[noreturn]] void fail(const std::string & what) const { throw ParseError(what, line_, column_); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const
    {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    void advance()
    {
        if (text_[pos_] == '\n')
        {
            ++line_;
            column_ = 1;
        }
        else
            ++column_;
        ++pos_;
    }

    void skip_blank()
    {
        while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r'))
            advance();
    }
    void skip_comment()
    {
        while (!at_end() && peek() != '\n')
            advance();
    }
    // Whitespace, newlines and comments, as allowed inside arrays.
    void skip_layout()
    {
        while (!at_end())
        {
            skip_blank();
            if (peek() == '#')
                skip_comment();
            else if (peek() == '\n')
                advance();
            else
                break;
        }
    }

    void end_of_line()
    {
        skip_blank();
        if (peek() == '#')
            skip_comment();
        if (at_end())
            return;
        if (peek() != '\n')
            fail(std::string("unexpected character '") + peek() + "' after value");
        advance();
    }

    std::string key()
    {
        if (peek() == '"')
            return quoted();
        std::string out;
        while (!at_end() && bare_key_char(peek()))
        {
            out += peek();
            advance();
        }
        if (out.empty())
            fail("expected a key");
        return out;
    }

    Table * header(Document & doc)
    {
        const int line = line_;
        const int column = column_;
        advance();
        const bool array = peek() == '[';
        if (array)
            advance();
        skip_blank();
        std::string name = key();
        skip_blank();
        if (peek() == '.')
            fail("dotted table names are not supported");
        if (peek() != ']' || (array && peek(1) != ']'))
            fail(array ? "expected ']]'" : "expected ']'");
        advance();
        if (array)
            advance();

        if (array)
        {
            if (doc.tables.count(name))
                throw ParseError("'" + name + "' already defined as a table", line, column);
            auto & list = doc.arrays[name];
            list.push_back(Table{name, line, {}});
            return &list.back();
        }
        if (doc.tables.count(name) || doc.arrays.count(name))
            throw ParseError("table '" + name + "' defined twice", line, column);
        auto & t = doc.tables[name];
        t.name = name;
        t.line = line;
        return &t;
    }

    void entry(Table & table)
    {
        const int line = line_;
        const int column = column_;
        std::string k = key();
        skip_blank();
        if (peek() == '.')
            fail("dotted keys are not supported");
        if (peek() != '=')
            fail("expected '=' after key '" + k + "'");
        advance();
        skip_blank();
        if (table.find(k))
            throw ParseError("duplicate key '" + k + "'", line, column);
        table.entries.emplace_back(std::move(k), value());
    }

    std::string quoted()
    {
        const char quote = peek();
        const int line = line_;
        const int column = column_;
        advance();
        std::string out;
        while (true)
        {
            if (at_end() || peek() == '\n')
                throw ParseError("unterminated string", line, column);
            const char c = peek();
            if (c == quote)
            {
                advance();
                return out;
            }
            if (c == '\\' && quote == '"')
            {
                advance();
                switch (peek())
                {
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    default: fail("unsupported escape sequence");
                }
                advance();
                continue;
            }
            out += c;
            advance();
        }
    }

    Value value()
    {
        Value v;
        v.line = line_;
        v.column = column_;
        const char c = peek();
        if (c == '"' || c == '\'')
        {
            v.data = quoted();
            return v;
        }
        if (c == '[')
        {
            advance();
            Array items;
            while (true)
            {
                skip_layout();
                if (peek() == ']')
                {
                    advance();
                    break;
                }
                items.push_back(value());
                skip_layout();
                if (peek() == ',')
                {
                    advance();
                    continue;
                }
                if (peek() == ']')
                {
                    advance();
                    break;
                }
                fail("expected ',' or ']' in array");
            }
            v.data = std::move(items);
            return v;
        }

        std::string token;
        while (!at_end() && token_char(peek()))
        {
            token += peek();
            advance();
        }
        if (token.empty())
            fail("expected a value");
        if (token == "true" || token == "false")
        {
            v.data = token == "true";
            return v;
        }
        v.data = number(token, v.line, v.column);
        return v;
    }

    static double number(std::string token, int line, int column)
    {
        std::string digits;
        for (std::size_t i = 0; i < token.size(); ++i)
        {
            auto digit = [&](std::size_t k) { return token[k] >= '0' && token[k] <= '9'; };
            if (token[i] != '_')
                digits += token[i];
            else if (i == 0 || i + 1 == token.size() || !digit(i - 1) || !digit(i + 1))
                throw ParseError("misplaced '_' in number '" + token + "'", line, column);
        }
        bool negative = false;
        std::string_view body = digits;
        if (!body.empty() && (body[0] == '+' || body[0] == '-'))
        {
            negative = body[0] == '-';
            body.remove_prefix(1);
        }
        if (body == "inf")
            return negative ? -std::numeric_limits<double>::infinity()
                            : std::numeric_limits<double>::infinity();
        if (body == "nan")
            return std::numeric_limits<double>::quiet_NaN();
        double out = 0.0;
        const auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), out);
        if (body.empty() || ec != std::errc() || end != body.data() + body.size() ||
            !(body[0] >= '0' && body[0] <= '9'))
            throw ParseError("invalid value '" + token + "'", line, column);
        return negative ? -out : out;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

[[noreturn]] void type_error(const Value & v, const char * expected)
{
    throw ParseError(std::string("expected ") + expected, v.line, v.column);
}

}  // namespace

double Value::number() const
{
    if (!is_number())
        type_error(*this, "a number");
    return std::get<double>(data);
}

long long Value::integer() const
{
    const double x = number();
    if (!(std::abs(x) < 9e15) || x != std::floor(x))
        type_error(*this, "an integer");
    return static_cast<long long>(x);
}

bool Value::boolean() const
{
    if (!is_bool())
        type_error(*this, "true or false");
    return std::get<bool>(data);
}

const std::string & Value::string() const
{
    if (!is_string())
        type_error(*this, "a string");
    return std::get<std::string>(data);
}

const Array & Value::array() const
{
    if (!is_array())
        type_error(*this, "an array");
    return std::get<Array>(data);
}

const Value * Table::find(std::string_view key) const
{
    for (const auto & [k, v] : entries)
        if (k == key)
            return &v;
    return nullptr;
}

const Value & Table::at(std::string_view key) const
{
    if (const Value * v = find(key))
        return *v;
    const std::string where = name.empty() ? "at top level" : "in [" + name + "]";
    throw ParseError("missing key '" + std::string(key) + "' " + where, std::max(line, 1), 1);
}

void Table::expect_keys(std::initializer_list<std::string_view> allowed) const
{
    for (const auto & [k, v] : entries)
    {
        bool known = false;
        for (auto a : allowed)
            known = known || a == k;
        if (!known)
        {
            const std::string where = name.empty() ? "at top level" : "in [" + name + "]";
            // the key starts where its value's line begins; the value position is close enough
            throw ParseError("unknown key '" + k + "' " + where, v.line, 1);
        }
    }
}

const Table * Document::table(std::string_view name) const
{
    auto it = tables.find(std::string(name));
    return it == tables.end() ? nullptr : &it->second;
}

void Document::expect_tables(std::initializer_list<std::string_view> allowed) const
{
    auto check = [&](const std::string & name, int line) {
        for (auto a : allowed)
            if (a == name)
                return;
        throw ParseError("unknown table [" + name + "]", line, 1);
    };
    for (const auto & [name, t] : tables)
        check(name, t.line);
    for (const auto & [name, list] : arrays)
        check(name, list.front().line);
}

Document parse(std::string_view text) { return Parser(text).run(); }

}  // namespace toml

namespace
{

using toml::Table;
using toml::Value;

void read_number(const Table * t, std::string_view key, double & out)
{
    if (t)
        if (const Value * v = t->find(key))
            out = v->number();
}

void read_int(const Table * t, std::string_view key, int & out)
{
    if (t)
        if (const Value * v = t->find(key))
        {
            const long long x = v->integer();
            if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
                throw ParseError("integer out of range", v->line, v->column);
            out = static_cast<int>(x);
        }
}

template <class E>
E read_enum(const Value & v, std::initializer_list<std::pair<std::string_view, E>> options)
{
    std::string names;
    for (const auto & [name, e] : options)
    {
        if (v.string() == name)
            return e;
        names += names.empty() ? "" : ", ";
        names += name;
    }
    throw ParseError("'" + v.string() + "' is not one of: " + names, v.line, v.column);
}

LayerSpec read_layer(const Table & t, int index)
{
    t.expect_keys({"name", "altitude", "density_rx", "density_tx", "power", "bias"});
    LayerSpec layer;
    layer.name = t.find("name") ? t.at("name").string() : "layer" + std::to_string(index);
    layer.altitude = t.at("altitude").number();
    read_number(&t, "density_rx", layer.density_rx);
    read_number(&t, "density_tx", layer.density_tx);
    read_number(&t, "power", layer.power);
    read_number(&t, "bias", layer.bias);
    return layer;
}

AssociationRule read_rule(const Table * t)
{
    if (!t)
        throw ParseError("missing table [association]", 1, 1);
    t->expect_keys({"rule", "orientation", "criterion"});
    AssociationRule rule;
    if (const Value * code = t->find("rule"))
    {
        if (t->find("orientation") || t->find("criterion"))
            throw ParseError("give either rule or orientation/criterion", code->line, code->column);
        try
        {
            return AssociationRule::parse(code->string());
        }
        catch (const DomainError &)
        {
            throw ParseError("rule must be one of rn, rs, tn, ts", code->line, code->column);
        }
    }
    rule.orientation = read_enum<Orientation>(
        t->at("orientation"),
        {{"receiver", Orientation::receiver}, {"transmitter", Orientation::transmitter}});
    rule.criterion = read_enum<Criterion>(
        t->at("criterion"), {{"nearest", Criterion::nearest}, {"strongest", Criterion::strongest}});
    return rule;
}

Eigen::MatrixXd read_targets(const Table * t, int layers)
{
    if (!t)
        throw ParseError("missing table [targets]", 1, 1);
    t->expect_keys({"beta", "beta_matrix"});
    const Value * scalar = t->find("beta");
    const Value * matrix = t->find("beta_matrix");
    if (scalar && matrix)
        throw ParseError("give either beta or beta_matrix", matrix->line, matrix->column);
    if (scalar)
        return Eigen::MatrixXd::Constant(layers, layers, scalar->number());
    if (!matrix)
        throw ParseError("[targets] needs beta or beta_matrix", t->line, 1);
    const auto & rows = matrix->array();
    if (static_cast<int>(rows.size()) != layers)
        throw ParseError("beta_matrix needs one row per layer", matrix->line, matrix->column);
    Eigen::MatrixXd out(layers, layers);
    for (int i = 0; i < layers; ++i)
    {
        const auto & row = rows[static_cast<std::size_t>(i)].array();
        if (static_cast<int>(row.size()) != layers)
            throw ParseError("beta_matrix needs one column per layer", rows[i].line, rows[i].column);
        for (int j = 0; j < layers; ++j)
            out(i, j) = row[static_cast<std::size_t>(j)].number();
    }
    return out;
}

void read_numerics(const Table * t, EvaluationSettings & s)
{
    if (!t)
        return;
    t->expect_keys({"outer_rel_tol", "outer_abs_tol", "inner_rel_tol", "inner_abs_tol",
                    "max_subdivisions", "series_terms", "series_tol", "closed_form",
                    "derivative_step"});
    read_number(t, "outer_rel_tol", s.outer.rel_tol);
    read_number(t, "outer_abs_tol", s.outer.abs_tol);
    read_number(t, "inner_rel_tol", s.inner.rel_tol);
    read_number(t, "inner_abs_tol", s.inner.abs_tol);
    if (t->find("max_subdivisions"))
    {
        read_int(t, "max_subdivisions", s.outer.max_subdivisions);
        s.inner.max_subdivisions = s.outer.max_subdivisions;
    }
    read_int(t, "series_terms", s.series.max_terms);
    read_number(t, "series_tol", s.series.convergence_tol);
    if (const Value * v = t->find("closed_form"))
        s.use_closed_form = v->boolean();
    read_number(t, "derivative_step", s.derivative_step);
}

void read_simulation(const Table * t, SimSpec & s)
{
    if (!t)
        return;
    t->expect_keys({"trials", "seed", "window_radius", "typical_layer", "far_field_tail"});
    if (const Value * v = t->find("trials"))
        s.trials = v->integer();
    if (const Value * v = t->find("seed"))
    {
        const long long seed = v->integer();
        if (seed < 0)
            throw ParseError("seed must be non-negative", v->line, v->column);
        s.seed = static_cast<std::uint64_t>(seed);
    }
    read_number(t, "window_radius", s.window_radius);
    read_int(t, "typical_layer", s.typical_node_layer);
    if (const Value * v = t->find("far_field_tail"))
        s.far_field_tail = v->boolean();
}

}  // namespace

Scenario parse_scenario(std::string_view text)
{
    const toml::Document doc = toml::parse(text);
    doc.expect_tables({"environment", "pathloss", "fading", "layers", "association", "targets",
                       "numerics", "simulation"});
    doc.root.expect_keys({"schema_version", "name", "noise_power"});
    const Value & version = doc.root.at("schema_version");
    if (version.integer() != scenario_schema_version)
        throw ParseError("unsupported schema_version " + std::to_string(version.integer()),
                         version.line, version.column);

    Scenario out;
    out.name = doc.root.find("name") ? doc.root.at("name").string() : "";
    auto & net = out.network;
    read_number(&doc.root, "noise_power", net.noise_power);

    if (const Table * env = doc.table("environment"))
    {
        env->expect_keys({"mu", "nu", "xi", "iota", "kappa", "los_model"});
        read_number(env, "mu", net.environment.mu);
        read_number(env, "nu", net.environment.nu);
        read_number(env, "xi", net.environment.xi);
        read_number(env, "iota", net.environment.iota);
        read_number(env, "kappa", net.environment.kappa);
        if (const Value * m = env->find("los_model"))
            net.los_model = read_enum<LosModel>(*m, {{"approximate", LosModel::approximate},
                                                     {"exact", LosModel::exact},
                                                     {"always_los", LosModel::always_los}});
    }
    if (const Table * pl = doc.table("pathloss"))
    {
        pl->expect_keys({"alpha_los", "alpha_nlos"});
        read_number(pl, "alpha_los", net.pathloss.alpha_los);
        read_number(pl, "alpha_nlos", net.pathloss.alpha_nlos);
    }
    if (const Table * f = doc.table("fading"))
    {
        f->expect_keys({"m_los", "m_nlos"});
        read_int(f, "m_los", net.fading.m_los);
        read_int(f, "m_nlos", net.fading.m_nlos);
    }

    auto layers = doc.arrays.find("layers");
    if (layers != doc.arrays.end())
        for (const auto & t : layers->second)
            net.layers.push_back(read_layer(t, static_cast<int>(net.layers.size())));

    out.rule = read_rule(doc.table("association"));
    net.target_sinr = read_targets(doc.table("targets"), static_cast<int>(net.layers.size()));
    read_numerics(doc.table("numerics"), out.settings);
    read_simulation(doc.table("simulation"), out.simulation);
    return out;
}

std::string read_file(const std::string & path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Scenario load_scenario(const std::string & path) { return parse_scenario(read_file(path)); }

std::string canonical_text(const Scenario & s)
{
    std::ostringstream out;
    out.precision(17);
    const auto & n = s.network;
    const auto & e = n.environment;
    out << "env " << e.mu << ' ' << e.nu << ' ' << e.xi << ' ' << e.iota << ' ' << e.kappa << ' '
        << to_string(n.los_model) << '\n';
    out << "pathloss " << n.pathloss.alpha_los << ' ' << n.pathloss.alpha_nlos << '\n';
    out << "fading " << n.fading.m_los << ' ' << n.fading.m_nlos << '\n';
    out << "noise " << n.noise_power << '\n';
    for (const auto & l : n.layers)
        out << "layer " << l.altitude << ' ' << l.density_rx << ' ' << l.density_tx << ' '
            << l.power << ' ' << l.bias << '\n';
    out << "rule " << s.rule.code() << '\n';
    out << "targets";
    for (Eigen::Index i = 0; i < n.target_sinr.size(); ++i)
        out << ' ' << n.target_sinr.data()[i];
    out << '\n';
    const auto & st = s.settings;
    out << "numerics " << st.outer.rel_tol << ' ' << st.outer.abs_tol << ' ' << st.inner.rel_tol
        << ' ' << st.inner.abs_tol << ' ' << st.outer.max_subdivisions << ' '
        << st.inner.max_subdivisions << ' ' << st.series.max_terms << ' '
        << st.series.convergence_tol << ' ' << st.use_closed_form << ' ' << st.derivative_step
        << '\n';
    const auto & sim = s.simulation;
    out << "simulation " << sim.window_radius << ' ' << sim.trials << ' ' << sim.seed << ' '
        << sim.typical_node_layer << ' ' << sim.far_field_tail << '\n';
    return out.str();
}

std::uint64_t fnv1a(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace aerial
