#include "nearsim/utf8.hpp"

#include <algorithm>

namespace nearsim::utf8 {
namespace {

struct LeadInfo {
  std::size_t width;
  unsigned char second_lo;
  unsigned char second_hi;
};

// Well-formed byte sequences, Unicode Table 3-7.
LeadInfo classify(unsigned char lead) {
  if (lead <= 0x7F) return {1, 0, 0};
  if (lead >= 0xC2 && lead <= 0xDF) return {2, 0x80, 0xBF};
  if (lead == 0xE0) return {3, 0xA0, 0xBF};
  if ((lead >= 0xE1 && lead <= 0xEC) || lead == 0xEE || lead == 0xEF) return {3, 0x80, 0xBF};
  if (lead == 0xED) return {3, 0x80, 0x9F};
  if (lead == 0xF0) return {4, 0x90, 0xBF};
  if (lead >= 0xF1 && lead <= 0xF3) return {4, 0x80, 0xBF};
  if (lead == 0xF4) return {4, 0x80, 0x8F};
  return {0, 0, 0};
}

}  // namespace

DecodeResult decode_lossy(std::string_view bytes) {
  DecodeResult result;
  result.text.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    const auto lead = static_cast<unsigned char>(bytes[i]);
    const LeadInfo info = classify(lead);
    if (info.width == 1) {
      result.text.push_back(bytes[i++]);
      continue;
    }
    if (info.width == 0) {
      result.text += kReplacement;
      ++result.replaced;
      ++i;
      continue;
    }
    // Consume the longest valid prefix; a break anywhere yields one U+FFFD
    // and decoding resumes at the offending byte.
    std::size_t len = 1;
    while (len < info.width && i + len < bytes.size()) {
      const auto b = static_cast<unsigned char>(bytes[i + len]);
      const bool ok = len == 1 ? (b >= info.second_lo && b <= info.second_hi) : is_continuation(b);
      if (!ok) break;
      ++len;
    }
    if (len == info.width) {
      result.text.append(bytes.substr(i, len));
    } else {
      result.text += kReplacement;
      ++result.replaced;
    }
    i += len;
  }
  return result;
}

std::size_t length(std::string_view text) {
  return static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [](char c) {
    return !is_continuation(static_cast<unsigned char>(c));
  }));
}

}  // namespace nearsim::utf8
