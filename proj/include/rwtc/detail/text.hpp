#pragma once

#include <cctype>
#include <string>
#include <vector>

namespace rwtc::detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Splits on a delimiter, keeping empty parts ("a||b" -> {"a","","b"}).
inline std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t at = s.find(delim, start);
        if (at == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, at - start));
        start = at + 1;
    }
}

// Comma-separated list with trimmed items; empty items are dropped.
inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    for (const auto& part : split(s, ',')) {
        std::string item = trim(part);
        if (!item.empty()) out.push_back(std::move(item));
    }
    return out;
}

// True for an optional '-' followed by one or more digits.
inline bool is_decimal_int(const std::string& s) {
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace rwtc::detail
