/*
 * Copyright 2026 The stpa-rec Authors
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

#ifndef STPA_ERRORS_HPP_
#define STPA_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stpa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A square root or distance that has no rational value.
class NotRepresentable : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t pos)
      : Error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Ill-formed term or argument: bad time window, open term, unguarded spec,
// channel not covered by a state operator, and the like.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Recursion unfolding went over its budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace stpa

#endif  // STPA_ERRORS_HPP_
