#ifndef BBTEA_SRC_TEXT_HPP
#define BBTEA_SRC_TEXT_HPP

#include "bbtea/types.hpp"

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bbtea::detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

inline bool try_parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

template <typename Int>
bool try_parse_int(std::string_view s, Int& out) {
    s = trim(s);
    if (s.empty()) return false;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

inline double parse_double(std::string_view s, std::string_view what) {
    double v = 0.0;
    if (!try_parse_double(s, v)) {
        throw ValidationError(std::string(what) + ": expected a number, got '" +
                              std::string(s) + "'");
    }
    return v;
}

template <typename Int>
Int parse_int(std::string_view s, std::string_view what) {
    Int v{};
    if (!try_parse_int(s, v)) {
        throw ValidationError(std::string(what) + ": expected an integer, got '" +
                              std::string(s) + "'");
    }
    return v;
}

}  // namespace bbtea::detail

#endif  // BBTEA_SRC_TEXT_HPP
