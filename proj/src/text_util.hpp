#pragma once

// Line-oriented helpers shared by the file-format readers.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lot {

inline std::string_view trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline std::string_view strip_comment(std::string_view s) {
    auto hash = s.find('#');
    return hash == std::string_view::npos ? s : s.substr(0, hash);
}

/// Lines with 1-based numbers; a trailing '\r' is dropped.
inline std::vector<std::pair<std::size_t, std::string_view>> numbered_lines(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> out;
    std::size_t n = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        out.emplace_back(++n, line);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    return out;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

/// First whitespace-delimited word and the (untrimmed) remainder.
inline std::pair<std::string_view, std::string_view> split_word(std::string_view s) {
    s = trim(s);
    auto sp = s.find_first_of(" \t");
    if (sp == std::string_view::npos) return {s, {}};
    return {s.substr(0, sp), s.substr(sp)};
}

inline bool is_keyword(std::string_view s) { return s == "forall" || s == "exists"; }

}  // namespace lot
