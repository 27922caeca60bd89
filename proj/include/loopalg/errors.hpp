#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace loopalg {

// Caller violated a precondition (bad arity, mismatched truncation, ...).
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Division by a series whose constant term is not 1.
struct non_unit_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct parse_error : std::runtime_error {
    parse_error(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " at position " + std::to_string(position)),
          position(position) {}
    std::size_t position;
};

} // namespace loopalg
