/*
 * Copyright 2026 The encsynth Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ENCSYNTH_COMMON_ERROR_H_
#define ENCSYNTH_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace encsynth {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An iterative method hit its iteration cap.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

// Input outside the mathematical domain of a function (e.g. log of <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace encsynth

#endif  // ENCSYNTH_COMMON_ERROR_H_
