#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "kemja/logic/formula.hpp"

namespace kemja {

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), column(c) {}
};

// ~ binds tightest, then &, |, ^, -> (right assoc), <-> (left assoc).
Formula parse_formula(std::string_view text);

}  // namespace kemja
