// Copyright 2026 The qsynth Authors
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

namespace qsynth {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Non-finite angle or otherwise unusable numeric argument.
class InvalidParameter : public Error {
  public:
    using Error::Error;
};

/// Qubit index out of range, or control == target.
class InvalidWire : public Error {
  public:
    using Error::Error;
};

class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

/// Input matrix fails the unitarity check.
class NotUnitary : public Error {
  public:
    using Error::Error;
};

/// The initial optimization never reached the requested tolerance.
class FailedToConverge : public Error {
  public:
    using Error::Error;
};

/// Malformed file contents (UMAT or QASM). `kind` distinguishes the cause.
class FormatError : public Error {
  public:
    enum class Kind { Io, BadMagic, BadVersion, BadSize, Truncated, NotUnitary, Syntax, UnsupportedGate };

    FormatError(Kind kind, const std::string &what) : Error(what), kind_(kind) {}

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

  private:
    Kind kind_;
};

} // namespace qsynth
