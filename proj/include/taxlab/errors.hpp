// Copyright 2026 The taxlab Authors.
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

#ifndef TAXLAB_ERRORS_HPP_
#define TAXLAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace taxlab {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data: bad tables, unnormalized valuations, bad JSON.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A caller broke an operation's precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Requested size exceeds what brute force is allowed to enumerate.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Arithmetic overflow in the exact rational type.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// A mechanism misbehaved: illegal allocation, inconsistent menu, etc.
class MechanismError : public Error {
 public:
  using Error::Error;
};

// An oracle answered outside the promised class.
class OracleError : public Error {
 public:
  using Error::Error;
};

// A measured quantity exceeded a declared bound.
class BoundError : public Error {
 public:
  using Error::Error;
};

// A disjointness instance violates its promise.
class PromiseError : public Error {
 public:
  using Error::Error;
};

// Random sampling kept failing its explicit verification.
class SamplingError : public Error {
 public:
  using Error::Error;
};

// A reconstruction produced an answer that disagrees with ground truth.
class SoundnessError : public Error {
 public:
  using Error::Error;
};

// Invalid experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Unwritable output path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace taxlab

#endif  // TAXLAB_ERRORS_HPP_
