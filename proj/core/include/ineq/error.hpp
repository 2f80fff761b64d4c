// Copyright 2026 The ineqkit Authors
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

namespace ineq {

/// Base class for all ineqkit errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input data violates a precondition (bad values, inconsistent panel, ...).
/// Maps to process exit code 1.
class DataError : public Error {
  public:
    using Error::Error;
};

/// The request itself is invalid (unknown scope, bad parameter ranges, ...).
/// Maps to process exit code 2.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Filesystem / stream failure. Maps to process exit code 2.
class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace ineq
