// Copyright 2026 The Concord Authors.
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace concord {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Invalid numeric input: nonpositive diagonal, negative threshold, bad config.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed file contents. Line and column are 1-based; 0 means "not known".
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0,
             std::size_t column = 0);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Backtracking ran out of halvings without meeting the acceptance test.
class StepUnderflowError : public Error {
 public:
  StepUnderflowError(int iteration, int backtracks, double last_step,
                     double objective);

  int iteration() const { return iteration_; }
  int backtracks() const { return backtracks_; }
  double last_step() const { return last_step_; }
  double objective() const { return objective_; }

 private:
  int iteration_;
  int backtracks_;
  double last_step_;
  double objective_;
};

}  // namespace concord
