// Copyright 2026 The bcdist Authors
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

#ifndef BCDIST_ERRORS_H
#define BCDIST_ERRORS_H

#include <stdexcept>
#include <string>

namespace bcd {

/// Operands disagree on the number of pairs, or a size is out of range.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold.
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Exact 128-bit rational arithmetic would have wrapped around.
struct ArithmeticOverflow : std::overflow_error {
    using std::overflow_error::overflow_error;
};

/// Malformed user input (state files, circuit JSON, cache files).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A cache file the operation needs does not exist.
struct MissingCache : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bcd

#endif
