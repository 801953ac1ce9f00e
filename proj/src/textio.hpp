#pragma once

#include "coopflow/netmodel.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace coopflow {

// 17 significant digits round-trip every double exactly.
inline std::string formatReal(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

/// Tokenizing reader for the line-oriented text formats. Blank lines and
/// lines starting with '#' are skipped.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::optional<std::vector<std::string>> tryNext() {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_;
            std::istringstream ss(line);
            std::vector<std::string> tokens;
            for (std::string tok; ss >> tok;) tokens.push_back(tok);
            if (tokens.empty() || tokens[0][0] == '#') continue;
            return tokens;
        }
        return std::nullopt;
    }

    std::vector<std::string> next(const std::string& expected) {
        auto tokens = tryNext();
        if (!tokens) throw ParseError(line_ + 1, "unexpected end of file, expected " + expected);
        return *tokens;
    }

    void expectHeader(const std::string& header) {
        auto tokens = next("header");
        std::string joined;
        for (std::size_t i = 0; i < tokens.size(); ++i) joined += (i ? " " : "") + tokens[i];
        if (joined != header) fail("bad header '" + joined + "', expected '" + header + "'");
    }

    int keyedInt(const std::string& key) { return toInt(keyed(key), key); }
    double keyedReal(const std::string& key) { return toReal(keyed(key), key); }

    int toInt(const std::string& s, const std::string& field) const {
        int value = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || ptr != s.data() + s.size())
            fail("field '" + field + "': '" + s + "' is not an integer");
        return value;
    }

    double toReal(const std::string& s, const std::string& field) const {
        try {
            std::size_t used = 0;
            double value = std::stod(s, &used);
            if (used == s.size()) return value;
        } catch (const std::exception&) {
        }
        fail("field '" + field + "': '" + s + "' is not a real number");
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

    int line() const { return line_; }

private:
    std::string keyed(const std::string& key) {
        auto tokens = next(key);
        if (tokens.size() != 2 || tokens[0] != key) fail("expected '" + key + " <value>'");
        return tokens[1];
    }

    std::istream& in_;
    int line_ = 0;
};

}  // namespace coopflow
