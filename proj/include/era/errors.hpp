// SPDX-License-Identifier: Apache-2.0
//
// era-channel: channel modelling for arrays of pattern-reconfigurable antenna elements
// Copyright (C) 2026 The era-channel authors
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

#ifndef era_errors_H
#define era_errors_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace era
{
    // Invalid user configuration or mismatched inputs (CLI exit code 2)
    class config_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Malformed input file, carries the 1-based line number of the offending row
    class parse_error : public config_error
    {
    public:
        parse_error(const std::string &source, std::size_t line, const std::string &what)
            : config_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
        std::size_t line() const { return line_; }

    private:
        std::size_t line_;
    };

    // Query outside the region where a tabulated pattern is defined
    class out_of_domain : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Exhaustive selection search refused because the candidate count exceeds its bound
    class search_space_error : public std::length_error
    {
    public:
        using std::length_error::length_error;
    };
}

#endif
