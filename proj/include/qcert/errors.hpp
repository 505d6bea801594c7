// Copyright 2026 The qcert Authors
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

namespace qcert {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's domain. The CLI maps
// these to exit code 2.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DomainError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A matrix that should be a state (or POVM element, or channel) is not
// Hermitian, not positive, or not normalized.
class InvalidState : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A runtime invariant failed after valid inputs were accepted. The CLI maps
// these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConsistencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// t.p <= 0: the measurement carries no usable weight.
class DegenerateMeasurement : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace qcert
