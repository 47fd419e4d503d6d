// Copyright 2026 The hdc-decomp Authors.
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

#ifndef HDC_ERROR_HPP
#define HDC_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hdc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the operation's domain (empty input, bad index, n < 2, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed sample values such as NaN features.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Invalid or unknown configuration keys and values. Maps to CLI exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Dataset or model file could not be read. Maps to CLI exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

/// CSV parse failure; carries the 1-based line number.
class ParseError : public DataError {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : DataError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Non-finite values during optimization. Maps to CLI exit code 3.
class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace hdc

#endif  // HDC_ERROR_HPP
