#pragma once

#include <string>
#include <string_view>

namespace vfield {

// SHA-256 of raw bytes, 64 lowercase hex chars.
std::string sha256_hex(std::string_view bytes);

inline constexpr std::size_t kDigestHexLength = 64;

bool valid_digest(std::string_view digest);

}  // namespace vfield
