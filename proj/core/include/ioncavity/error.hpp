// Copyright 2026 The ioncavity Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace ioncavity {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand spaces or matrix shapes do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Invalid parameters or configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Integrator failures, invariant violations during evolution, optimizer
// non-convergence.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ioncavity
