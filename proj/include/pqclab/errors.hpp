// Copyright 2026 The pqclab Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Error taxonomy shared by every pqclab module. The command-line layer maps
 * these types onto process exit codes (see experiments.hpp).
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pqclab {

/// Base class of all pqclab errors.
class Error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad index, bad range, ...).
class InvalidInputError : public Error {
    using Error::Error;
};

/// Text input could not be parsed; carries the 1-based offending line.
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string &what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] auto line() const -> std::size_t { return line_; }

  private:
    std::size_t line_;
};

/// The request exceeds a documented resource cap (qubit count, grid size).
class ResourceError : public Error {
    using Error::Error;
};

/// A hyperparameter selection equation has no solution in the valid domain;
/// carries the infeasible target value for diagnostics.
class NoValidHyperparameterError : public Error {
  public:
    NoValidHyperparameterError(const std::string &what, double target)
        : Error(what), target_(target) {}

    [[nodiscard]] auto target() const -> double { return target_; }

  private:
    double target_;
};

/// Randomly generated trial operators failed their (anti)commutation checks.
class InvalidTrialError : public Error {
    using Error::Error;
};

/// An experiment configuration is malformed; the message names the key.
class ConfigError : public Error {
    using Error::Error;
};

} // namespace pqclab
