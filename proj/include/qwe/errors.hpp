// Copyright 2026 The qwe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QWE_ERRORS_HPP
#define QWE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qwe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (wrong kind, bad range, malformed input).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// The request exceeds a configured size limit (qubit count, enumeration size, memory).
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Float mode cannot represent the result (overflow or unusable loss of significance).
class PrecisionError : public ResourceLimit {
 public:
  using ResourceLimit::ResourceLimit;
};

/// An iterative method did not converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// File input or output failed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A condition that should be impossible was reached.
class InternalError : public Error {
 public:
  using Error::Error;
};

[[noreturn]] void fail_contract(const std::string &message);
[[noreturn]] void fail_resource(const std::string &message);

}  // namespace qwe

#endif
