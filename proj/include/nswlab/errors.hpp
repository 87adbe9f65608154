// Copyright 2026 The nswlab Authors
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

namespace nswlab {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid caller input: bad parameters, malformed allocations, violated
// preconditions. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

// Malformed file contents. The message carries line or field context.
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

// A configured resource limit (search size, time, vertex bound) was hit.
// The CLI maps these to exit code 3.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace nswlab
