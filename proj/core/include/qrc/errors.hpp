// Copyright 2026 The photonic-qrc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qrc {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Matrix or vector shapes do not agree.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A value violates a type invariant (e.g. a non-unitary transfer matrix).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// The photon configuration is outside what the model supports.
class UnsupportedConfiguration : public Error {
  public:
    using Error::Error;
};

/// Inconsistent or out-of-range configuration values.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Bad input data (NaN, out of [0, 1], ...).
class InputError : public Error {
  public:
    using Error::Error;
};

/// A task generator could not produce a finite sequence.
class GenerationError : public Error {
  public:
    using Error::Error;
};

} // namespace qrc
