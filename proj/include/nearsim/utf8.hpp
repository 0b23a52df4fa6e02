#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace nearsim::utf8 {

inline constexpr std::string_view kReplacement = "\xEF\xBF\xBD";  // U+FFFD

struct DecodeResult {
  std::string text;
  // Number of maximal invalid subsequences that were replaced by U+FFFD.
  std::size_t replaced = 0;
};

// Validates `bytes` as UTF-8, substituting U+FFFD for every maximal invalid
// subpart (overlongs, surrogates, truncated sequences, stray continuations).
DecodeResult decode_lossy(std::string_view bytes);

inline bool is_continuation(unsigned char byte) { return (byte & 0xC0) == 0x80; }

// Number of code points, counting lead bytes only.
std::size_t length(std::string_view text);

}  // namespace nearsim::utf8
