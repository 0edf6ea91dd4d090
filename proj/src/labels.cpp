#include "vfield/labels.hpp"

#include <cstdint>

namespace vfield {

bool utf8_valid(std::string_view s) {
    std::size_t i = 0;
    const std::size_t n = s.size();
    while (i < n) {
        const auto c0 = static_cast<std::uint8_t>(s[i]);
        if (c0 < 0x80) {
            ++i;
            continue;
        }
        std::size_t len;
        std::uint32_t cp;
        if ((c0 & 0xE0) == 0xC0) {
            len = 2;
            cp = c0 & 0x1Fu;
        } else if ((c0 & 0xF0) == 0xE0) {
            len = 3;
            cp = c0 & 0x0Fu;
        } else if ((c0 & 0xF8) == 0xF0) {
            len = 4;
            cp = c0 & 0x07u;
        } else {
            return false;
        }
        if (i + len > n) {
            return false;
        }
        for (std::size_t k = 1; k < len; ++k) {
            const auto ck = static_cast<std::uint8_t>(s[i + k]);
            if ((ck & 0xC0) != 0x80) {
                return false;
            }
            cp = (cp << 6) | (ck & 0x3Fu);
        }
        // Overlong encodings, surrogates and out-of-range scalars.
        if (len == 2 && cp < 0x80) return false;
        if (len == 3 && cp < 0x800) return false;
        if (len == 4 && cp < 0x10000) return false;
        if (cp >= 0xD800 && cp <= 0xDFFF) return false;
        if (cp > 0x10FFFF) return false;
        i += len;
    }
    return true;
}

bool valid_label(std::string_view s) {
    if (s.empty() || s == "." || s == "..") {
        return false;
    }
    for (char c : s) {
        if (c == '/' || c == '\0') {
            return false;
        }
    }
    return utf8_valid(s);
}

bool valid_ingest_name(std::string_view s) {
    if (!valid_label(s)) {
        return false;
    }
    return s.find('\\') == std::string_view::npos;
}

}  // namespace vfield
