// Copyright 2026 The qdouble Authors
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

#ifndef QDOUBLE_ERRORS_H
#define QDOUBLE_ERRORS_H

#include <stdexcept>
#include <string>

namespace qdouble {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input data (bad multiplication table, bad ribbon, ...).
struct ValidationError : Error {
    using Error::Error;
};

/// A call was made outside the operation's stated preconditions.
struct PreconditionError : Error {
    using Error::Error;
};

/// Enumeration or storage would exceed configured limits.
struct CapacityError : Error {
    using Error::Error;
};

/// A numerical procedure did not reach its tolerance.
struct NumericalError : Error {
    using Error::Error;
};

/// Bad experiment configuration.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace qdouble

#endif
