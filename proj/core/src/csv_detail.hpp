#pragma once

// Internal CSV number helpers: shortest-round-trip formatting so every value
// written can be read back bit-exactly.

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace skyclear::detail {

inline void append_double(std::string& line, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    line.append(buf, res.ptr);
}

inline double parse_double(std::string_view field) {
    double v = 0.0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw std::runtime_error("malformed number in CSV: " + std::string(field));
    return v;
}

inline int parse_int(std::string_view field) {
    int v = 0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw std::runtime_error("malformed integer in CSV: " + std::string(field));
    return v;
}

}  // namespace skyclear::detail
