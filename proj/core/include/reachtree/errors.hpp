/*
 Copyright 2026 The reachtree Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef REACHTREE_ERRORS_HPP
#define REACHTREE_ERRORS_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace reachtree {

// Base of everything the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad argument: dimension mismatch, unknown name, invalid matrix.
class InputError : public Error {
public:
    using Error::Error;
};

// Request outside what an operation supports (e.g. boundary sampling in 4D).
class CapabilityError : public Error {
public:
    using Error::Error;
};

// Malformed or inconsistent configuration. The CLI maps this to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Explicit time step violates the CFL bound of the grid solver.
class CflError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Non-finite state produced while integrating. Carries the offending
// tree level / node / step when known. The CLI maps this to exit code 3.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what,
                          std::optional<std::size_t> level = std::nullopt,
                          std::optional<std::size_t> node = std::nullopt)
        : Error(what), level_(level), node_(node) {}

    std::optional<std::size_t> level() const { return level_; }
    std::optional<std::size_t> node() const { return node_; }

private:
    std::optional<std::size_t> level_;
    std::optional<std::size_t> node_;
};

// Point cloud spans fewer than `dim` affine dimensions.
class DegenerateHullError : public Error {
public:
    using Error::Error;
};

// An internal invariant was violated (e.g. empty one-step reachable set).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

// A tree level outgrew the configured node cap.
class CapacityError : public Error {
public:
    using Error::Error;
};

}  // namespace reachtree

#endif  // REACHTREE_ERRORS_HPP
