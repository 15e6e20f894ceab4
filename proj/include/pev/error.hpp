// Copyright 2026 The PEv Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace pev {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Incompatible or invalid matrix/vector dimensions.
class ShapeError : public Error {
  public:
    using Error::Error;
};

/// Structural invariant of a state or operator violated.
class InvariantError : public Error {
  public:
    using Error::Error;
};

/// Tr(E rho E^dagger) vanished; the normalized update is undefined.
class NullBranchError : public Error {
  public:
    using Error::Error;
};

/// Measurement family is not an orthogonal resolution of unity, or every
/// outcome has zero probability.
class FamilyError : public Error {
  public:
    using Error::Error;
};

class GateError : public Error {
  public:
    using Error::Error;
};

class RangeError : public Error {
  public:
    using Error::Error;
};

/// An operator-valued block has no scalar value on the qubit subspace.
class ReductionError : public Error {
  public:
    using Error::Error;
};

class CoefficientError : public Error {
  public:
    using Error::Error;
};

/// Noise model cannot be evaluated (e.g. every branch is null).
class ModelError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(const std::string &what, int line)
        : Error(what + ", line " + std::to_string(line)), line_(line) {}

    [[nodiscard]] int line() const noexcept { return line_; }

  private:
    int line_;
};

} // namespace pev
