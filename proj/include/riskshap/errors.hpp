// Copyright 2026 The riskshap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace riskshap {

/// Error categories, numbered by the CLI exit-code contract:
/// 2 = malformed or insufficient input data, 3 = numerical breakdown,
/// 4 = invalid configuration or parameters.
enum class ErrorCategory : int { input = 2, numerical = 3, config = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }
    int exit_code() const noexcept { return static_cast<int>(category_); }

private:
    ErrorCategory category_;
};

struct InputError : Error {
    explicit InputError(const std::string& what) : Error(ErrorCategory::input, what) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& what) : Error(ErrorCategory::numerical, what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

// Configuration / parameter errors.
struct PlayerLimitExceeded final : ConfigError { using ConfigError::ConfigError; };
struct InvalidGame final : ConfigError { using ConfigError::ConfigError; };
struct InvalidConfig final : ConfigError { using ConfigError::ConfigError; };
struct InvalidInput final : ConfigError { using ConfigError::ConfigError; };

// Input-data errors.
struct ParseError final : InputError { using InputError::InputError; };
struct DimensionError final : InputError { using InputError::InputError; };
struct DegeneratePanel final : InputError { using InputError::InputError; };
struct InsufficientData final : InputError { using InputError::InputError; };

// Numerical errors.
struct DegenerateGrandValue final : NumericalError { using NumericalError::NumericalError; };
struct NumericalBreakdown final : NumericalError { using NumericalError::NumericalError; };
struct DivisionByZero final : NumericalError { using NumericalError::NumericalError; };

}  // namespace riskshap
