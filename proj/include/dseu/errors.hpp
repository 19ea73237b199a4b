// Copyright 2026 The dseu Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace dseu {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
  public:
    using Error::Error;
};

class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// Raised when a vector handed in as a pure state is not normalized.
class InvalidState : public Error {
  public:
    using Error::Error;
};

class NotUnitary : public Error {
  public:
    using Error::Error;
};

class Overflow : public Error {
  public:
    using Error::Error;
};

/// Dense constructions refuse to allocate beyond their documented limits.
class SizeLimit : public Error {
  public:
    using Error::Error;
};

} // namespace dseu
