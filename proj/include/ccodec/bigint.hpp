#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace ccodec {

// Counts grow like 2^Theta(n); everything that touches them is exact.
using BigCount = boost::multiprecision::cpp_int;

inline int floor_log2(const BigCount& x) {
  // precondition: x >= 1
  return static_cast<int>(boost::multiprecision::msb(x));
}

inline bool is_power_of_two(const BigCount& x) {
  return x > 0 && (x & (x - 1)) == 0;
}

inline BigCount two_pow(int k) {
  return BigCount(1) << k;
}

inline BigCount parse_decimal(std::string_view s) {
  if (s.empty()) throw FormatError("empty decimal number");
  for (char c : s) {
    if (c < '0' || c > '9') throw FormatError("bad decimal digit '" + std::string(1, c) + "'");
  }
  return BigCount(std::string(s));
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string to_hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf, 16);
}

inline std::uint64_t from_hex64(std::string_view s) {
  if (s.size() != 16) throw FormatError("fingerprint must be 16 hex digits");
  std::uint64_t v = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw FormatError("bad hex digit in fingerprint");
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  return v;
}

}  // namespace ccodec
