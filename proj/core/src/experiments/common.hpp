#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace ostat::detail {

// Stream-family tags; each experiment draws from derive_seed(seed, tag) so
// that different experiments on one seed never share random numbers.
inline constexpr std::uint64_t kTagAlbin = 0x616c62696eULL;
inline constexpr std::uint64_t kTagTailprob = 0x7461696cULL;
inline constexpr std::uint64_t kTagGumbel = 0x67756d62ULL;
inline constexpr std::uint64_t kTagMoments = 0x6d6f6d6eULL;
inline constexpr std::uint64_t kTagCompare = 0x636d7072ULL;

inline std::string flag(std::string_view key, double value) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return ";" + std::string(key) + "=" + buf;
}

inline std::string flag(std::string_view key, std::string_view value) {
  return ";" + std::string(key) + "=" + std::string(value);
}

}  // namespace ostat::detail
