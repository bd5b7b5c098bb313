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

#include <stdexcept>
#include <string>
#include <vector>

namespace aerial
{

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error
{
  public:
    using Error::Error;
};

/// Adaptive quadrature ran out of subdivisions before reaching tolerance.
class NonConvergent : public Error
{
  public:
    using Error::Error;
};

/// Truncated series failed its early-stop test within the term budget.
class SeriesNonConvergent : public Error
{
  public:
    using Error::Error;
};

/// Richardson estimates of a derivative disagree beyond tolerance.
class DerivativeUnstable : public Error
{
  public:
    using Error::Error;
};

/// An operation was called outside the regime it is derived for.
class PreconditionViolated : public Error
{
  public:
    using Error::Error;
};

/// Zero altitude separation where a bound needs a positive one.
class DegenerateGeometry : public Error
{
  public:
    using Error::Error;
};

/// Monte Carlo trial without any association target inside the window.
class NoCandidate : public Error
{
  public:
    using Error::Error;
};

/// Scenario or plan text could not be parsed.
class ParseError : public Error
{
  public:
    ParseError(const std::string & what, int line, int column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column)
    {
    }

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

  private:
    int line_;
    int column_;
};

/// Configuration violates one or more invariants; carries the full list.
class ValidationError : public Error
{
  public:
    explicit ValidationError(std::vector<std::string> problems)
        : Error(join(problems)), problems_(std::move(problems))
    {
    }

    const std::vector<std::string> & problems() const noexcept { return problems_; }

  private:
    static std::string join(const std::vector<std::string> & items)
    {
        std::string out;
        for (const auto & s : items)
        {
            if (!out.empty())
                out += "; ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> problems_;
};

}  // namespace aerial
