#pragma once

// Line-oriented tokenizing shared by the device, design, plan and params
// readers. Private to the library.

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "prfp/errors.hpp"

namespace prfp::detail {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

// Splits text into lines, drops '#' comments and blank lines.
inline std::vector<Line> tokenize(std::string_view text)
{
    std::vector<Line> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r'))
                ++i;
            std::size_t j = i;
            while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r')
                ++j;
            if (j > i)
                line.tokens.emplace_back(raw.substr(i, j - i));
            i = j;
        }
        if (!line.tokens.empty())
            out.push_back(std::move(line));
        if (end == text.size())
            break;
        pos = end + 1;
    }
    return out;
}

inline long parse_long(const std::string &tok, int line, const char *what)
{
    long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line, std::string("expected integer for ") + what + ", got '" + tok + "'");
    return v;
}

inline int parse_int(const std::string &tok, int line, const char *what)
{
    long v = parse_long(tok, line, what);
    if (v < -1'000'000'000L || v > 1'000'000'000L)
        throw ParseError(line, std::string(what) + " out of range: " + tok);
    return static_cast<int>(v);
}

inline int parse_count(const std::string &tok, int line, const char *what)
{
    int v = parse_int(tok, line, what);
    if (v < 0)
        throw ParseError(line, std::string(what) + " must be non-negative, got " + tok);
    return v;
}

inline double parse_double(const std::string &tok, int line, const char *what)
{
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size())
            throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception &) {
        throw ParseError(line, std::string("expected number for ") + what + ", got '" + tok + "'");
    }
}

inline void expect_arity(const Line &l, std::size_t n, const char *usage)
{
    if (l.tokens.size() != n)
        throw ParseError(l.number, std::string("expected '") + usage + "'");
}

} // namespace prfp::detail
