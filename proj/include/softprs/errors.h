// Copyright 2026 The softprs Authors
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

#ifndef SOFTPRS_ERRORS_H_
#define SOFTPRS_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace softprs {

// Base of every error raised by the library. The CLI maps each subclass to
// its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument: k = 0, odd n*d for a regular graph, gamma out of range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Malformed textual input. `position` is a 1-based line number for edge
// lists and a byte offset for JSON; 0 when unknown.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A sampler hit its level, sweep or trial cap.
class BudgetExhausted : public Error {
 public:
  enum class Reason {
    kLevels,      // ran out of gamma levels
    kSweeps,      // too many resampling sweeps at one level
    kTrials,      // naive rejection ran out of trials
    kInfeasible,  // k is below a proven lower bound on the chromatic number
  };

  BudgetExhausted(const std::string& what, Reason reason)
      : Error(what), reason_(reason) {}

  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

// Exhaustive search or rejection oracle exceeds its size guard.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A CFTP solve failed to coalesce within its epoch budget.
class SolverTimeout : public Error {
 public:
  using Error::Error;
};

}  // namespace softprs

#endif  // SOFTPRS_ERRORS_H_
