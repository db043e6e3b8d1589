// Copyright 2026 The polaron2d Authors
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

namespace polaron2d {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature exhausted its subdivision budget.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// The mass ratio violates alpha(M) < M/(M+1); no bound is available.
class SupercriticalMass : public Error {
 public:
  using Error::Error;
};

/// Geometric bracket expansion found no sign change.
class BracketFailure : public Error {
 public:
  using Error::Error;
};

/// A root or optimum did not meet its tolerances.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// An optimizer landed on the boundary of its search range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// The certified truncation bound of a semi-infinite integral is too large.
class TailBoundExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace polaron2d
