/**
 * Copyright 2026 The multislit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace multislit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite or out-of-range physical input.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Enumeration of paths, path pairs, or slit subsets would exceed the configured budget.
class EnumerationLimitError : public Error {
public:
    EnumerationLimitError(std::size_t slits, std::size_t particles, const std::string& what)
        : Error(what + " (N=" + std::to_string(slits) + ", M=" + std::to_string(particles) + ")"),
          slits_(slits), particles_(particles) {}

    std::size_t slits() const noexcept { return slits_; }
    std::size_t particles() const noexcept { return particles_; }

private:
    std::size_t slits_;
    std::size_t particles_;
};

/// Normalization by a vanishing central peak.
class DegenerateNormalizationError : public Error {
public:
    using Error::Error;
};

/// Requested order lies outside the range the implementation supports.
class RangeError : public Error {
public:
    using Error::Error;
};

}  // namespace multislit
