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

#include "qwalk/text_format.hpp"

#include <charconv>
#include <system_error>

namespace qwalk {

void append_double(std::string &out, double value) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, res.ptr);
}

std::string format_double(double value) {
    std::string s;
    append_double(s, value);
    return s;
}

bool parse_double(std::string_view token, double &out) {
    if (token.empty()) {
        return false;
    }
    const char *begin = token.data();
    const char *end = begin + token.size();
    // from_chars rejects a leading '+', which some writers emit.
    if (*begin == '+') {
        begin++;
    }
    auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc() && res.ptr == end;
}

}  // namespace qwalk
