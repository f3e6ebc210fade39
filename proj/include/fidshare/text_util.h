// Copyright 2026 The fidshare Authors
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
//

// Small std::string_view helpers. The system Abseil is configured with its
// own string_view type, so its split/strip utilities do not accept
// std::string_view directly.

#ifndef FIDSHARE_TEXT_UTIL_H_
#define FIDSHARE_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace fidshare {

inline constexpr std::string_view kAsciiWhitespace = " \t\r\n\v\f";

inline std::string_view StripWhitespace(std::string_view s) {
  const size_t b = s.find_first_not_of(kAsciiWhitespace);
  if (b == std::string_view::npos) return {};
  const size_t e = s.find_last_not_of(kAsciiWhitespace);
  return s.substr(b, e - b + 1);
}

// Splits on every `delim`; empty fields are kept.
inline std::vector<std::string_view> SplitOn(std::string_view s, char delim) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Splits on runs of any character in `delims`; empty fields are dropped.
inline std::vector<std::string_view> SplitOnAny(std::string_view s,
                                                std::string_view delims) {
  std::vector<std::string_view> out;
  size_t pos = s.find_first_not_of(delims);
  while (pos != std::string_view::npos) {
    const size_t end = s.find_first_of(delims, pos);
    out.push_back(s.substr(pos, end == std::string_view::npos ? end : end - pos));
    if (end == std::string_view::npos) break;
    pos = s.find_first_not_of(delims, end);
  }
  return out;
}

}  // namespace fidshare

#endif  // FIDSHARE_TEXT_UTIL_H_
