#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace nerode {

// Number of code points in a UTF-8 string.
inline std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

inline std::string pad_right(std::string s, std::size_t width) {
  const std::size_t len = utf8_length(s);
  if (len < width) s.append(width - len, ' ');
  return s;
}

}  // namespace nerode
