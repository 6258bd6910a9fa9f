// Copyright 2026 The assignlab Authors
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

#ifndef ASSIGNLAB_ERRORS_HPP
#define ASSIGNLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace assignlab {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Division by a zero rational function, or evaluation at a pole.
class PoleError : public Error {
 public:
  explicit PoleError(const std::string& what) : Error(what) {}
};

// Malformed expression / pattern / case input.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

// An enumeration bound (window size, zero count, recursion depth) exceeded.
class BoundError : public Error {
 public:
  explicit BoundError(const std::string& what) : Error(what) {}
};

// A race would attach the same accumulated excess to two surviving entries
// whose later comparison would be correlated; the caller must pick another
// covering or switch recursion strategy.
class HazardError : public Error {
 public:
  explicit HazardError(const std::string& what) : Error(what) {}
};

// Recursion depth limit exceeded (termination is not guaranteed in general).
class DepthLimitError : public Error {
 public:
  explicit DepthLimitError(const std::string& what) : Error(what) {}
};

// The alternative recursion cannot be applied to this configuration.
class InapplicableError : public Error {
 public:
  explicit InapplicableError(const std::string& what) : Error(what) {}
};

}  // namespace assignlab

#endif  // ASSIGNLAB_ERRORS_HPP
