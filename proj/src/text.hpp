#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlgap/error.hpp"

namespace nlgap::detail {

struct Line {
    std::string_view text;
    std::size_t number;  // 1-based
};

/// Splits text into lines, skipping lines that are blank after trimming.
class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    std::optional<Line> next_nonempty() {
        while (pos_ < text_.size()) {
            const std::size_t end = std::min(text_.find('\n', pos_), text_.size());
            std::string_view raw = text_.substr(pos_, end - pos_);
            pos_ = end + 1;
            ++line_;
            raw = trim(raw);
            if (!raw.empty()) return Line{raw, line_};
        }
        return std::nullopt;
    }

    static std::string_view trim(std::string_view s) {
        const auto ws = " \t\r";
        const auto b = s.find_first_not_of(ws);
        if (b == std::string_view::npos) return {};
        const auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
};

/// Exactly `count` whitespace-separated unsigned integers.
inline std::vector<std::uint64_t> parse_uints(std::string_view s, std::size_t count,
                                               std::size_t line) {
    std::vector<std::uint64_t> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        if (i == s.size()) break;
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), value);
        const std::size_t used = static_cast<std::size_t>(ptr - (s.data() + i));
        if (ec != std::errc() || used == 0) {
            throw ParseError(line, "expected a nonnegative integer in '" + std::string(s) + "'");
        }
        i += used;
        if (i < s.size() && s[i] != ' ' && s[i] != '\t') {
            throw ParseError(line, "malformed token in '" + std::string(s) + "'");
        }
        out.push_back(value);
    }
    if (out.size() != count) {
        throw ParseError(line, "expected " + std::to_string(count) + " integers, got " +
                                   std::to_string(out.size()));
    }
    return out;
}

}  // namespace nlgap::detail
