#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bws {

// Configuration / input errors map to CLI exit code 2,
// numeric failures to exit code 3.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Syntax error from the expression / condition parser.
// `offset` is the byte offset into the source text; `expected` lists the
// token classes that would have been accepted at that point.
struct ParseError : ConfigError {
    std::size_t offset;
    std::vector<std::string> expected;

    ParseError(const std::string& what, std::size_t offset_,
               std::vector<std::string> expected_ = {})
        : ConfigError(what), offset(offset_), expected(std::move(expected_)) {}
};

}  // namespace bws
