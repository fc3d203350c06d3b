// Copyright 2026 The csasr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSASR_ERROR_HPP_
#define CSASR_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace csasr {

// Base class for recoverable errors caused by bad input or bad arguments.
// The CLI maps anything derived from Error to exit code 2; everything else
// (std::logic_error and friends) is an internal failure, exit code 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed file contents. Messages carry "path:line:" context.
class ParseError : public Error {
 public:
  using Error::Error;
  ParseError(const std::string& path, int line, const std::string& msg)
      : Error(path + ":" + std::to_string(line) + ": " + msg) {}
};

// File could not be opened or read/written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Invalid command-line arguments or call contract violations.
class UsageError : public Error {
 public:
  using Error::Error;
};

// CTC label sequence that no frame path of the given length can collapse to.
class InfeasibleLabelError : public Error {
 public:
  using Error::Error;
};

}  // namespace csasr

#endif  // CSASR_ERROR_HPP_
