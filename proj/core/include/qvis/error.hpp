// Copyright 2026 The qvis Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QVIS_ERROR_HPP_
#define QVIS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace qvis {

// All library failures derive from Error. The CLI maps the concrete type to
// its exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter violates a documented precondition (W < 1, t < 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The requested evaluation method does not cover this configuration, e.g. a
// closed form asked for N != 3 or an analytic evaluation for R >= 3.
class UnsupportedMethod : public Error {
 public:
  using Error::Error;
};

// An alternating sum left [-1e-9, 1 + 1e-9] before clamping.
class NumericalInstability : public Error {
 public:
  using Error::Error;
};

}  // namespace qvis

#endif  // QVIS_ERROR_HPP_
