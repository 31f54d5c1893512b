// Copyright 2026 The qwalk Authors
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

#ifndef QWALK_ERROR_HPP
#define QWALK_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qwalk {

/// Bad argument value: non-finite angle, ratio outside (0,1), alpha <= 0, ...
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Amplitude would leave the allocated lattice.
struct OutOfBounds : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Vector or matrix dimensions disagree.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InsufficientData : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// SVD non-convergence, non-finite gradients, failed factorizations.
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TrainingFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file. `line` is 1-based; 0 when not tied to a line.
struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {
    }
    std::size_t line;
};

}  // namespace qwalk

#endif
