#pragma once

#include <cstdlib>
#include <string>

namespace dct {

// Value of a character literal including the quotes, e.g. "'a'" or "'\\n'".
inline long long char_literal_value(const std::string& text) {
    if (text.size() < 3) return 0;
    std::string inner = text.substr(1, text.size() - 2);
    if (inner[0] != '\\') return static_cast<unsigned char>(inner[0]);
    if (inner.size() < 2) return 0;
    switch (inner[1]) {
        case 'n': return '\n';
        case 't': return '\t';
        case 'r': return '\r';
        case '0':
            return inner.size() == 2 ? 0 : std::strtoll(inner.substr(1).c_str(), nullptr, 8);
        case '\\': return '\\';
        case '\'': return '\'';
        case '"': return '"';
        case 'a': return '\a';
        case 'b': return '\b';
        case 'f': return '\f';
        case 'v': return '\v';
        case 'x': return std::strtoll(inner.substr(2).c_str(), nullptr, 16);
        default:
            if (inner[1] >= '0' && inner[1] <= '7')
                return std::strtoll(inner.substr(1).c_str(), nullptr, 8);
            return static_cast<unsigned char>(inner[1]);
    }
}

// Numeric value of an integer literal spelling; suffixes ignored, base from
// the prefix (0x..., 0...).
inline long long int_literal_value(std::string text) {
    while (!text.empty()) {
        char c = text.back();
        if (c == 'u' || c == 'U' || c == 'l' || c == 'L') text.pop_back();
        else break;
    }
    return static_cast<long long>(std::strtoull(text.c_str(), nullptr, 0));
}

}  // namespace dct
