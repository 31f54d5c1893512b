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

#ifndef QWALK_TEXT_FORMAT_HPP
#define QWALK_TEXT_FORMAT_HPP

#include <string>
#include <string_view>

namespace qwalk {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Appends format_double(value) to `out` without a temporary string.
void append_double(std::string &out, double value);

/// Parses a full token as binary64. Returns false on trailing garbage,
/// empty input, or out-of-range values.
bool parse_double(std::string_view token, double &out);

}  // namespace qwalk

#endif
