// SPDX-License-Identifier: Apache-2.0
//
// arisim: link-level simulator for aerial-RIS assisted CoMP-NOMA downlinks
// Copyright (C) 2026 The arisim authors
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

#ifndef ARISIM_ERROR_HPP
#define ARISIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace arisim {

// Argument outside the mathematical domain of an operation (negative distance, K < 0, ...).
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Invalid experiment configuration. `field` is the dotted path of the offending key.
class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string field, const std::string &message)
        : std::runtime_error(field + ": " + message), field_(std::move(field))
    {
    }

    const std::string &field() const noexcept { return field_; }

private:
    std::string field_;
};

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace arisim

#endif
